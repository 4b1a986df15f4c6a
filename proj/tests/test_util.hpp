// Shared helpers for the test suites: deterministic random polynomials and
// small construction shorthands.
#ifndef BSATO_TEST_UTIL_HPP
#define BSATO_TEST_UTIL_HPP

#include <random>

#include <bsato/ideal.hpp>
#include <bsato/parse.hpp>

namespace testutil {

using namespace bsato;

inline Polynomial P(const UniversePtr& u, const std::string& s)
{
    return parse_polynomial(s, u);
}

// direct variable access, also for internal '@' names the grammar excludes
inline Polynomial V(const UniversePtr& u, const std::string& name)
{
    int i = u->index_of(name);
    if (i < 0) throw std::invalid_argument("test: unknown variable " + name);
    return Polynomial::variable(u, i);
}

inline std::vector<Polynomial> Ps(const UniversePtr& u, std::initializer_list<std::string> ss)
{
    std::vector<Polynomial> out;
    for (const auto& s : ss) out.push_back(P(u, s));
    return out;
}

inline IdealHandle ideal(const UniversePtr& u, std::initializer_list<std::string> ss)
{
    return IdealHandle(u, Ps(u, ss));
}

inline Monomial random_monomial(std::mt19937& rng, int nvars, int maxdeg)
{
    std::uniform_int_distribution<int> de(0, maxdeg);
    Monomial m(nvars);
    for (int i = 0; i < nvars; ++i) m.set(i, static_cast<Monomial::Exp>(de(rng)));
    return m;
}

inline Polynomial random_polynomial(std::mt19937& rng, const UniversePtr& u, int terms, int maxdeg,
                                    int coefbound = 9)
{
    std::uniform_int_distribution<int> dc(-coefbound, coefbound);
    std::vector<Term> ts;
    for (int k = 0; k < terms; ++k) {
        int c = dc(rng);
        if (c == 0) continue;
        ts.push_back({random_monomial(rng, static_cast<int>(u->size()), maxdeg), Rational(c)});
    }
    return Polynomial::from_terms(u, std::move(ts));
}

}  // namespace testutil

#endif
