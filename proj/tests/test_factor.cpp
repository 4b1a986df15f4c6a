#include <catch2/catch_amalgamated.hpp>

#include <bsato/factor.hpp>

#include "test_util.hpp"

using namespace bsato;
using testutil::P;

namespace {

// Brute-force irreducibility oracle for degree <= 4 over Q: rational-root
// search (complete via the rational root theorem) plus quadratic divisor
// search with bounded coefficients.
bool brute_force_irreducible(const Polynomial& f)
{
    auto var = univariate_variable(f);
    REQUIRE(var.has_value());
    Polynomial g = f.integer_cleared();
    const int d = static_cast<int>(g.total_degree());
    REQUIRE(d <= 4);
    if (d == 1) return true;

    Integer lc(0), c0(0);
    for (const Term& t : g.terms()) {
        if (t.mon.degree() == static_cast<unsigned>(d)) lc = t.coef.get_num();
        if (t.mon.is_one()) c0 = t.coef.get_num();
    }
    if (c0 == 0) return false;  // root at 0

    auto divisors = [](Integer n) {
        std::vector<Integer> ds;
        if (n < 0) n = -n;
        for (Integer k(1); k * k <= n; ++k)
            if (n % k == 0) {
                ds.push_back(k);
                ds.push_back(n / k);
            }
        return ds;
    };
    for (const Integer& pn : divisors(c0))
        for (const Integer& qn : divisors(lc))
            for (int sign : {1, -1}) {
                Rational r = make_rational(sign * pn, qn);
                std::map<int, Rational> at{{*var, r}};
                if (g.substituted(at).is_zero()) return false;
            }
    if (d <= 3) return true;

    // degree 4: look for a quadratic divisor a*x^2 + b*x + c
    const UniversePtr& u = g.universe();
    Polynomial x = Polynomial::variable(u, *var);
    for (const Integer& a : divisors(lc))
        for (const Integer& c : divisors(c0))
            for (int sc : {1, -1})
                for (long b = -40; b <= 40; ++b) {
                    Polynomial q = Rational(a) * x * x + Rational(b) * x +
                                   Polynomial::constant(u, Rational(sc * c));
                    if (q.divides(g)) return false;
                }
    return true;
}

}  // namespace

TEST_CASE("squarefree decomposition examples")
{
    auto u = VarUniverse::commutative({"x"});
    auto us = VarUniverse::make({"s"}, {VarClass::S});

    auto sd1 = squarefree_decompose(P(u, "x^2"));
    REQUIRE(sd1.size() == 1);
    CHECK(sd1[0].first == P(u, "x"));
    CHECK(sd1[0].second == 2);

    auto sd2 = squarefree_decompose(P(u, "x^3-x"));
    REQUIRE(sd2.size() == 1);
    CHECK(sd2[0].first == P(u, "x^3-x"));
    CHECK(sd2[0].second == 1);

    auto sd3 = squarefree_decompose(P(us, "(s+1)^2*(2*s+1)"));
    REQUIRE(sd3.size() == 2);
    CHECK(sd3[0].first == P(us, "s+1/2"));
    CHECK(sd3[0].second == 1);
    CHECK(sd3[1].first == P(us, "s+1"));
    CHECK(sd3[1].second == 2);

    CHECK_THROWS_AS(squarefree_decompose(Polynomial::zero(u)), std::invalid_argument);
}

TEST_CASE("squarefree factors are pairwise coprime and reproduce the input")
{
    auto u = VarUniverse::commutative({"x"});
    std::mt19937 rng(1618);
    std::uniform_int_distribution<int> dc(-4, 4), dm(1, 3);
    for (int it = 0; it < 15; ++it) {
        Polynomial f = Polynomial::constant(u, Rational(1));
        for (int k = 0; k < 3; ++k) {
            Polynomial lin = Polynomial::variable(u, 0) + Polynomial::constant(u, Rational(dc(rng)));
            f = f * lin.pow(dm(rng));
        }
        auto sd = squarefree_decompose(f);
        Polynomial prod = Polynomial::constant(u, Rational(1));
        for (auto& [g, m] : sd) prod = prod * g.pow(m);
        // equal up to a rational constant
        auto ratio = f.divided_by(prod);
        REQUIRE(ratio.has_value());
        CHECK(ratio->is_constant());
        for (std::size_t i = 0; i < sd.size(); ++i)
            for (std::size_t j = i + 1; j < sd.size(); ++j)
                CHECK(mv_gcd(sd[i].first, sd[j].first).is_constant());
    }
}

TEST_CASE("factor_univariate examples")
{
    auto u = VarUniverse::commutative({"x"});
    auto us = VarUniverse::make({"s"}, {VarClass::S});

    auto f1 = factor_univariate(P(u, "x^2-1"));
    REQUIRE(f1.factors.size() == 2);
    CHECK(f1.constant == 1);
    CHECK(f1.factors[0].first == P(u, "x+1"));
    CHECK(f1.factors[1].first == P(u, "x-1"));

    auto f2 = factor_univariate(P(u, "x^2+1"));
    REQUIRE(f2.factors.size() == 1);
    CHECK(f2.factors[0].first == P(u, "x^2+1"));
    CHECK(f2.factors[0].second == 1);

    auto f3 = factor_univariate(P(us, "4*s^2+16*s+15"));
    REQUIRE(f3.factors.size() == 2);
    CHECK(f3.constant == 4);
    CHECK(f3.factors[0].first == P(us, "s+3/2"));
    CHECK(f3.factors[1].first == P(us, "s+5/2"));
    CHECK(f3.expanded(us) == P(us, "4*s^2+16*s+15"));
}

TEST_CASE("factor_univariate reproduces input exactly and factors are irreducible")
{
    auto u = VarUniverse::commutative({"x"});
    std::vector<std::string> samples{
        "x^4-1",
        "x^4+4",             // (x^2-2x+2)(x^2+2x+2)
        "2*x^3-3*x^2-11*x+6",
        "x^6-1",
        "x^5-x",
        "3*x^4+5*x^2+2",
        "x^4+x^3+x^2+x+1",   // cyclotomic, irreducible
        "x^2-2",
        "6*x^2-5*x+1",
        "(x^2+x+1)^2*(x-7)",
    };
    for (const auto& s : samples) {
        Polynomial f = P(u, s);
        auto fac = factor_univariate(f);
        CHECK(fac.expanded(u) == f);
        for (auto& [g, m] : fac.factors) {
            CHECK(g.lead_coef() == 1);
            if (g.total_degree() <= 4) CHECK(brute_force_irreducible(g));
        }
    }
}

TEST_CASE("factor_univariate randomized reconstruction")
{
    auto u = VarUniverse::commutative({"x"});
    std::mt19937 rng(24601);
    std::uniform_int_distribution<int> dc(-6, 6);
    for (int it = 0; it < 12; ++it) {
        Polynomial x = Polynomial::variable(u, 0);
        Polynomial f = Polynomial::constant(u, Rational(dc(rng) == 0 ? 1 : dc(rng)));
        for (int k = 0; k < 2 + (it % 2); ++k) {
            Polynomial factor = x * x + Rational(dc(rng)) * x + Polynomial::constant(u, Rational(dc(rng)));
            f = f * factor;
        }
        if (f.is_zero()) continue;
        auto fac = factor_univariate(f);
        CHECK(fac.expanded(u) == f);
    }
}

TEST_CASE("multivariate gcd and squarefree part")
{
    auto u = VarUniverse::commutative({"x", "y"});
    CHECK(mv_gcd(P(u, "x^2-y^2"), P(u, "x^2+2*x*y+y^2")) == P(u, "x+y"));
    CHECK(mv_gcd(P(u, "x"), P(u, "y")).is_constant());
    CHECK(mv_gcd(P(u, "6*x"), P(u, "4*x")) == P(u, "x"));
    CHECK(squarefree_part(P(u, "(x+y)^2*(x-y)")) == P(u, "(x+y)*(x-y)").integer_cleared());
    CHECK(squarefree_part(P(u, "x^2*y^3")) == P(u, "x*y"));
}

TEST_CASE("multivariate factorization: products of linear forms")
{
    auto us = VarUniverse::poly_with_s({}, 3);
    Polynomial g = P(us, "(s1+1)*(s2+1)*(s3+1)");
    auto fac = factor_multivariate(g);
    CHECK(fac.certified);
    REQUIRE(fac.factors.size() == 3);
    CHECK(fac.expanded(us) == g);
    for (auto& [f, m] : fac.factors) {
        CHECK(f.total_degree() == 1);
        CHECK(m == 1);
    }

    Polynomial h = P(us, "(s1+1)^2*(2*s2+1)");
    auto fh = factor_multivariate(h);
    CHECK(fh.certified);
    CHECK(fh.expanded(us) == h);
    REQUIRE(fh.factors.size() == 2);

    // the twelve-factor shape of the plane-curve pair example
    Polynomial big = P(us, "(s1+1)*(s2+1)"
                          "*(4*s1+6*s2+5)*(4*s1+6*s2+7)*(4*s1+6*s2+9)*(4*s1+6*s2+11)*(4*s1+6*s2+13)"
                          "*(6*s1+4*s2+5)*(6*s1+4*s2+7)*(6*s1+4*s2+9)*(6*s1+4*s2+11)*(6*s1+4*s2+13)");
    auto fb = factor_multivariate(big);
    CHECK(fb.certified);
    CHECK(fb.factors.size() == 12);
    CHECK(fb.expanded(us) == big);
}

TEST_CASE("multivariate factorization: nonlinear irreducibles")
{
    auto u = VarUniverse::commutative({"x", "y", "z"});

    auto f1 = factor_multivariate(P(u, "x^2+y^3"));
    CHECK(f1.certified);
    REQUIRE(f1.factors.size() == 1);
    CHECK(f1.factors[0].second == 1);

    auto f2 = factor_multivariate(P(u, "z*(x^4+y^4+2*z*x^2*y^2)"));
    CHECK(f2.certified);
    REQUIRE(f2.factors.size() == 2);
    CHECK(f2.expanded(u) == P(u, "z*(x^4+y^4+2*z*x^2*y^2)"));

    auto f3 = factor_multivariate(P(u, "(x^3+y^2)*(x^2+y^3)"));
    CHECK(f3.certified);
    REQUIRE(f3.factors.size() == 2);

    auto f4 = factor_multivariate(P(u, "(x+y)*(x^2+y^3)^2"));
    CHECK(f4.certified);
    CHECK(f4.expanded(u) == P(u, "(x+y)*(x^2+y^3)^2"));
}

TEST_CASE("multivariate factorization with rational constant")
{
    auto u = VarUniverse::commutative({"x", "y"});
    Polynomial g = P(u, "1/2*x*y+1/2*x");  // = 1/2 * x * (y+1)
    auto fac = factor_multivariate(g);
    CHECK(fac.expanded(u) == g);
    CHECK(fac.factors.size() == 2);
    CHECK(fac.constant == make_rational(1, 2));
}
