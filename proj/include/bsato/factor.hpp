// Multivariate factorization over Q at desk scale. Linear factors are pulled
// out by restricting to rational lines and reconstructing the hyperplane from
// the gradient at a smooth rational point; what remains goes through a
// Kronecker substitution into one variable when the degree budget allows.
// Every factor is validated by exact trial division, so the output is always
// sound; `certified` records whether every reported factor is certified
// irreducible.
#ifndef BSATO_FACTOR_HPP
#define BSATO_FACTOR_HPP

#include "ideal.hpp"
#include "upoly.hpp"

namespace bsato {

// gcd of two polynomials, computed from <a> cap <b> = <lcm>; the result is
// integer-primitive with positive leading coefficient.
inline Polynomial mv_gcd(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero()) return b.is_zero() ? b : b.integer_cleared();
    if (b.is_zero()) return a.integer_cleared();
    if (a.is_constant() || b.is_constant())
        return Polynomial::constant(a.universe(), Rational(1));
    IdealHandle meet = intersect(IdealHandle(a.universe(), {a}), IdealHandle(b.universe(), {b}));
    const auto& basis = meet.canonical_basis();
    if (basis.size() != 1)
        throw std::logic_error("mv_gcd: intersection of principal ideals not principal");
    auto q = (a * b).divided_by(basis[0]);
    if (!q) throw std::logic_error("mv_gcd: lcm does not divide the product");
    return q->integer_cleared();
}

// Product of the distinct irreducible factors of g (char 0: g / gcd(g, dg)).
inline Polynomial squarefree_part(const Polynomial& g)
{
    if (g.is_zero() || g.is_constant()) return g;
    Polynomial c = g;
    for (int i : g.support()) c = mv_gcd(c, g.derivative(i));
    auto sf = g.divided_by(c);
    if (!sf) throw std::logic_error("squarefree_part: gcd does not divide");
    return sf->integer_cleared();
}

namespace fdetail {

// Restriction of S to the line z = p + t*q as a dense polynomial in t.
inline updetail::QPoly restrict_to_line(const Polynomial& S, const std::vector<Rational>& p,
                                        const std::vector<Rational>& q)
{
    using updetail::QPoly;
    const int n = static_cast<int>(S.universe()->size());
    std::vector<std::vector<QPoly>> powers(n);  // powers[i][k] = (p_i + q_i t)^k
    for (int i = 0; i < n; ++i) powers[i].push_back(QPoly{Rational(1)});
    QPoly acc;
    for (const Term& t : S.terms()) {
        QPoly prod{t.coef};
        for (int i = 0; i < n; ++i) {
            unsigned e = t.mon[i];
            if (e == 0) continue;
            auto& pw = powers[i];
            while (pw.size() <= e) {
                QPoly base{p[i], q[i]};
                updetail::trim(base);
                pw.push_back(updetail::q_mul(pw.back(), base));
            }
            prod = updetail::q_mul(prod, pw[e]);
        }
        if (acc.size() < prod.size()) acc.resize(prod.size(), Rational(0));
        for (std::size_t k = 0; k < prod.size(); ++k) acc[k] += prod[k];
    }
    updetail::trim(acc);
    return acc;
}

inline std::vector<Rational> rational_roots(const updetail::QPoly& R)
{
    std::vector<Rational> roots;
    if (updetail::deg(R) < 1) return roots;
    static const UniversePtr aux = VarUniverse::commutative({"t"});
    Polynomial rp = from_dense(aux, 0, R);
    for (const auto& [f, mult] : factor_univariate(rp).factors)
        if (f.total_degree() == 1) {
            // monic t + c -> root -c
            Rational c(0);
            for (const Term& t : f.terms())
                if (t.mon.is_one()) c = t.coef;
            roots.push_back(-c);
        }
    return roots;
}

// One linear factor of the squarefree S, or nullopt. Deterministic schedule
// of rational lines; a factor is returned only after exact trial division.
inline std::optional<Polynomial> find_linear_factor(const Polynomial& S)
{
    const std::uint32_t d = S.total_degree();
    if (d == 0) return std::nullopt;
    if (d == 1) return S.integer_cleared();
    const UniversePtr& u = S.universe();
    const int n = static_cast<int>(u->size());

    for (int attempt = 0; attempt < 24; ++attempt) {
        std::vector<Rational> p(n), q(n);
        for (int i = 0; i < n; ++i) {
            p[i] = Rational(((i + 3 * attempt) % 5) - 2);
            q[i] = Rational(1 + ((i + 1) * (attempt + 1)) % 7);
        }
        updetail::QPoly R = restrict_to_line(S, p, q);
        if (updetail::deg(R) != static_cast<int>(d)) continue;  // degenerate direction
        for (const Rational& r : rational_roots(R)) {
            std::map<int, Rational> at;
            for (int i = 0; i < n; ++i) at[i] = p[i] + q[i] * r;
            std::vector<Term> lin;
            Rational c0(0);
            bool nonzero = false;
            for (int i : S.support()) {
                Rational gi = S.derivative(i).substituted(at).constant_value();
                if (gi == 0) continue;
                nonzero = true;
                lin.push_back({Monomial::variable(n, i), gi});
                c0 -= gi * at[i];
            }
            if (!nonzero) continue;  // singular point of the hypersurface
            if (c0 != 0) lin.push_back({Monomial(n), c0});
            Polynomial ell = Polynomial::from_terms(u, std::move(lin)).integer_cleared();
            if (ell.divides(S)) return ell;
        }
    }
    return std::nullopt;
}

// Kronecker substitution factorization of a primitive squarefree S in >= 2
// variables. Sound and complete within the degree budget; nullopt when the
// substituted degree or modular factor count would be unreasonable.
inline std::optional<std::vector<Polynomial>> kronecker(const Polynomial& S)
{
    const UniversePtr& u = S.universe();
    std::vector<int> sup = S.support();
    const int k = static_cast<int>(sup.size());
    std::vector<long> radix(k), weight(k);
    long N = 1;
    for (int i = 0; i < k; ++i) {
        radix[i] = static_cast<long>(S.degree_in(sup[i])) + 1;
        weight[i] = N;
        N *= radix[i];
        if (N > 3000) return std::nullopt;
    }
    long degN = 0;
    for (int i = 0; i < k; ++i) degN += (radix[i] - 1) * weight[i];
    if (degN > 120) return std::nullopt;

    static const UniversePtr aux = VarUniverse::commutative({"t"});
    updetail::QPoly img(degN + 1, Rational(0));
    for (const Term& t : S.terms()) {
        long e = 0;
        for (int i = 0; i < k; ++i) e += static_cast<long>(t.mon[sup[i]]) * weight[i];
        img[e] += t.coef;
    }
    updetail::trim(img);

    auto uf = factor_univariate(from_dense(aux, 0, img));
    std::vector<Polynomial> avail;
    for (const auto& [f, mult] : uf.factors)
        for (int c = 0; c < mult; ++c) avail.push_back(f.integer_cleared());
    if (avail.size() > 16) return std::nullopt;

    auto decode = [&](const Polynomial& g) {
        std::vector<Term> ts;
        for (const Term& t : g.terms()) {
            long e = t.mon[0];
            Monomial m(static_cast<int>(u->size()));
            for (int i = 0; i < k; ++i) {
                m.set(sup[i], static_cast<Monomial::Exp>(e % radix[i]));
                e /= radix[i];
            }
            ts.push_back({m, t.coef});
        }
        return Polynomial::from_terms(u, std::move(ts));
    };

    auto next_combination = [](std::vector<int>& idx, int n) {
        int s = static_cast<int>(idx.size());
        int i = s - 1;
        while (i >= 0 && idx[i] == n - s + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        return true;
    };

    Polynomial fstar = S;
    std::vector<Polynomial> result;
    int s = 1;
    while (2 * s <= static_cast<int>(avail.size())) {
        bool found = false;
        const int m = static_cast<int>(avail.size());
        std::vector<int> idx(s);
        for (int i = 0; i < s; ++i) idx[i] = i;
        do {
            Polynomial ghat = avail[idx[0]];
            for (int i = 1; i < s; ++i) ghat = ghat * avail[idx[i]];
            Polynomial cand = decode(ghat).integer_cleared();
            auto quo = fstar.divided_by(cand);
            if (!quo) continue;
            result.push_back(cand);
            fstar = quo->integer_cleared();
            for (int i = s - 1; i >= 0; --i) avail.erase(avail.begin() + idx[i]);
            found = true;
            break;
        } while (next_combination(idx, m));
        if (found) s = 1;
        else ++s;
    }
    if (!fstar.is_constant()) result.push_back(fstar.integer_cleared());
    return result;
}

}  // namespace fdetail

struct MultivariateFactors {
    Rational constant;
    std::vector<std::pair<Polynomial, int>> factors;  // integer-primitive, positive lead
    bool certified = true;  // every factor certified irreducible

    Polynomial expanded(const UniversePtr& u) const
    {
        Polynomial r = Polynomial::constant(u, constant);
        for (const auto& [f, m] : factors) r = r * f.pow(m);
        return r;
    }
};

inline MultivariateFactors factor_multivariate(const Polynomial& G)
{
    if (G.is_zero()) throw std::invalid_argument("factor_multivariate: zero polynomial");
    MultivariateFactors out;
    out.constant = Rational(1);
    if (G.is_constant()) {
        out.constant = G.constant_value();
        return out;
    }

    std::vector<Polynomial> work{G.integer_cleared()};
    while (!work.empty()) {
        Polynomial piece = std::move(work.back());
        work.pop_back();
        if (piece.is_constant()) continue;

        std::vector<Polynomial> irred;
        if (piece.support().size() <= 1) {
            // multiplicities are recomputed by repeated division below
            for (const auto& [f, mult] : factor_univariate(piece).factors)
                irred.push_back(f.integer_cleared());
        } else {
            Polynomial S = squarefree_part(piece);
            while (!S.is_constant()) {
                auto ell = fdetail::find_linear_factor(S);
                if (!ell) break;
                irred.push_back(*ell);
                S = S.divided_by(*ell)->integer_cleared();
            }
            if (!S.is_constant()) {
                if (S.support().size() <= 1) {
                    for (const auto& [f, mult] : factor_univariate(S).factors)
                        irred.push_back(f.integer_cleared());
                } else if (auto kr = fdetail::kronecker(S)) {
                    for (Polynomial& f : *kr) irred.push_back(std::move(f));
                } else {
                    irred.push_back(S);
                    out.certified = false;
                }
            }
        }

        for (const Polynomial& f : irred) {
            int mult = 0;
            for (;;) {
                auto q = piece.divided_by(f);
                if (!q) break;
                piece = std::move(*q);
                ++mult;
            }
            if (mult > 0) {
                bool merged = false;
                for (auto& [g, m] : out.factors)
                    if (g == f) { m += mult; merged = true; break; }
                if (!merged) out.factors.emplace_back(f, mult);
            }
        }
        if (!piece.is_constant()) work.push_back(piece.integer_cleared());
    }

    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.total_degree() != b.first.total_degree())
            return a.first.total_degree() < b.first.total_degree();
        return a.first.str() < b.first.str();
    });
    Polynomial prod = Polynomial::constant(G.universe(), Rational(1));
    for (const auto& [f, m] : out.factors) prod = prod * f.pow(m);
    auto c = G.divided_by(prod);
    if (!c || !c->is_constant())
        throw std::logic_error("factor_multivariate: factor product does not reproduce input");
    out.constant = c->constant_value();
    return out;
}

}  // namespace bsato

#endif
