#include <catch2/catch_amalgamated.hpp>

#include <bsato/parse.hpp>
#include <bsato/polynomial.hpp>

#include "test_util.hpp"

using namespace bsato;
using testutil::P;

TEST_CASE("rational canonical form")
{
    CHECK(make_rational(2, 4) == make_rational(1, 2));
    CHECK(make_rational(-2, -4) == make_rational(1, 2));
    CHECK(make_rational(2, -4) == make_rational(-1, 2));
    CHECK(rational_to_string(make_rational(0, 7)) == "0");
    CHECK(rational_from_string("-7/2") == make_rational(-7, 2));
    CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
}

TEST_CASE("universe validation")
{
    CHECK_THROWS_AS(VarUniverse::commutative({"x", "x"}), std::invalid_argument);
    auto u = VarUniverse::weyl({"x", "y"}, 2);
    CHECK(u->size() == 2 + 2 + 2 + 2 + 2 + 2 + 2);
    CHECK(u->cls(0) == VarClass::X);
    CHECK(u->partner(0) == 2);  // x pairs with @dx
    CHECK(u->partner(2) == 0);
    CHECK(u->index_of("s1") >= 0);
    CHECK_FALSE(u->is_commutative());
    CHECK(VarUniverse::commutative({"x"})->is_commutative());
}

TEST_CASE("term order examples")
{
    auto u = VarUniverse::commutative({"x", "y"});
    Monomial x = Monomial::variable(2, 0), y2 = Monomial::variable(2, 1, 2);

    SECTION("lex ignores degree")
    {
        auto lex = TermOrder::lex(u);
        CHECK(lex.compare(x, y2) > 0);
    }
    SECTION("identical monomials compare equal")
    {
        auto drl = TermOrder::degrevlex(u);
        CHECK(drl.compare(x, x) == 0);
    }
    SECTION("elimination block dominates")
    {
        auto wu = VarUniverse::weyl({"x"}, 1);
        int xi = wu->index_of("x"), dxi = wu->index_of("@dx"), si = wu->index_of("s1");
        auto ord = TermOrder::block(*&wu, {{{dxi}, TermOrder::Kind::DegRevLex},
                                           {[&] {
                                                std::vector<int> rest;
                                                for (int i = 0; i < (int)wu->size(); ++i)
                                                    if (i != dxi) rest.push_back(i);
                                                return rest;
                                            }(),
                                            TermOrder::Kind::DegRevLex}});
        Monomial x5 = Monomial::variable((int)wu->size(), xi, 5);
        Monomial dx = Monomial::variable((int)wu->size(), dxi);
        CHECK(ord.compare(x5, dx) < 0);
        (void)si;
    }
    SECTION("degrevlex standard comparisons")
    {
        auto u3 = VarUniverse::commutative({"x", "y", "z"});
        auto drl = TermOrder::degrevlex(u3);
        // x^2*y*z < x*y^3 in degrevlex? deg 4 = 4; revlex: last diff var z: exps 1 vs 0,
        // larger z exponent means smaller monomial.
        Monomial a(3), b(3);
        a.set(0, 2); a.set(1, 1); a.set(2, 1);
        b.set(0, 1); b.set(1, 3);
        CHECK(drl.compare(a, b) < 0);
    }
}

TEST_CASE("compare is a strict total order on random monomials")
{
    auto u = VarUniverse::commutative({"x", "y", "z"});
    std::vector<TermOrder> orders{TermOrder::lex(u), TermOrder::degrevlex(u),
                                  TermOrder::elimination(u, {0})};
    std::mt19937 rng(12345);
    Monomial one(3);
    for (const auto& ord : orders) {
        for (int it = 0; it < 400; ++it) {
            Monomial a = testutil::random_monomial(rng, 3, 4);
            Monomial b = testutil::random_monomial(rng, 3, 4);
            Monomial c = testutil::random_monomial(rng, 3, 4);
            // antisymmetry
            CHECK(ord.compare(a, b) == -ord.compare(b, a));
            CHECK((ord.compare(a, b) == 0) == (a == b));
            // transitivity
            if (ord.compare(a, b) <= 0 && ord.compare(b, c) <= 0)
                CHECK(ord.compare(a, c) <= 0);
            // compatibility with multiplication
            CHECK(ord.compare(a * c, b * c) == ord.compare(a, b));
            // 1 is minimal
            if (!a.is_one()) CHECK(ord.compare(one, a) < 0);
        }
    }
}

TEST_CASE("polynomial arithmetic examples")
{
    auto u = VarUniverse::commutative({"x", "y"});
    CHECK(P(u, "(x+y)*(x-y)") == P(u, "x^2-y^2"));
    Polynomial p = P(u, "x^2+3*y");
    CHECK(p + Polynomial::zero(u) == p);
    CHECK(P(u, "(x^3+y^2)*(x^2+y^3)") == P(u, "x^5+x^3*y^3+x^2*y^2+y^5"));
}

TEST_CASE("ring axioms on randomized small polynomials")
{
    auto u = VarUniverse::commutative({"x", "y", "z"});
    std::mt19937 rng(777);
    for (int it = 0; it < 60; ++it) {
        Polynomial a = testutil::random_polynomial(rng, u, 4, 3);
        Polynomial b = testutil::random_polynomial(rng, u, 4, 3);
        Polynomial c = testutil::random_polynomial(rng, u, 4, 3);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Polynomial::zero(u));
    }
}

TEST_CASE("partial derivative examples")
{
    auto u = VarUniverse::commutative({"x", "y", "z"});
    CHECK(P(u, "x^3+y^2").derivative(u->index_of("x")) == P(u, "3*x^2"));
    CHECK(P(u, "x^4+y^4+2*z*x^2*y^2").derivative(u->index_of("y")) == P(u, "4*y^3+4*z*x^2*y"));
    CHECK(P(u, "42").derivative(u->index_of("x")).is_zero());
}

TEST_CASE("evaluate examples")
{
    auto u = VarUniverse::commutative({"x", "y"});
    std::map<int, Rational> at01{{0, Rational(0)}, {1, Rational(1)}};
    CHECK(P(u, "1-x-y").substituted(at01).is_zero());
    std::map<int, Rational> at10{{0, Rational(1)}, {1, Rational(0)}};
    CHECK(P(u, "x^2+y^3").substituted(at10) == P(u, "1"));
    std::map<int, Rational> origin{{0, Rational(0)}, {1, Rational(0)}};
    CHECK(P(u, "x^2+3*x*y+y^5").substituted(origin).is_zero());
}

TEST_CASE("evaluate is a ring homomorphism")
{
    auto u = VarUniverse::commutative({"x", "y", "z"});
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> dv(-3, 3);
    for (int it = 0; it < 40; ++it) {
        Polynomial a = testutil::random_polynomial(rng, u, 4, 3);
        Polynomial b = testutil::random_polynomial(rng, u, 4, 3);
        std::map<int, Rational> pt;
        for (int i = 0; i < 3; ++i) pt[i] = make_rational(dv(rng), 1 + (it % 2));
        CHECK((a * b).substituted(pt) == a.substituted(pt) * b.substituted(pt));
        CHECK((a + b).substituted(pt) == a.substituted(pt) + b.substituted(pt));
    }
}

TEST_CASE("substitute a polynomial for a variable")
{
    auto u = VarUniverse::commutative({"x", "y"});
    // x -> y+1 in x^2 - 1 gives y^2 + 2y
    CHECK(P(u, "x^2-1").substituted(0, P(u, "y+1")) == P(u, "y^2+2*y"));
}

TEST_CASE("exact division")
{
    auto u = VarUniverse::commutative({"x", "y"});
    auto q = P(u, "x^2-y^2").divided_by(P(u, "x-y"));
    REQUIRE(q.has_value());
    CHECK(*q == P(u, "x+y"));
    CHECK_FALSE(P(u, "x^2+y").divided_by(P(u, "x-y")).has_value());
    CHECK_THROWS_AS(P(u, "x").divided_by(Polynomial::zero(u)), std::invalid_argument);
}

TEST_CASE("integer clearing and printing")
{
    auto u = VarUniverse::commutative({"x", "y"});
    Polynomial p = P(u, "x+1/2");
    CHECK(p.integer_cleared() == P(u, "2*x+1"));
    CHECK(P(u, "-2*x-4*y").integer_cleared() == P(u, "x+2*y"));
    CHECK(P(u, "x^2-y^2").str() == "x^2 - y^2");
    CHECK(P(u, "-x+1/2").str() == "-x + 1/2");
    CHECK(Polynomial::zero(u).str() == "0");
}

TEST_CASE("parser round trip and errors")
{
    auto u = VarUniverse::commutative({"x", "y", "z"});
    std::mt19937 rng(99);
    for (int it = 0; it < 50; ++it) {
        Polynomial p = testutil::random_polynomial(rng, u, 5, 4);
        CHECK(parse_polynomial(p.str(), u) == p);
    }
    CHECK_THROWS_AS(parse_polynomial("x^2+", u), ParseError);
    CHECK_THROWS_AS(parse_polynomial("w+1", u), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x y", u), ParseError);  // juxtaposition
    CHECK_THROWS_AS(parse_polynomial("x^-2", u), ParseError);
    CHECK_THROWS_AS(parse_polynomial("2/0", u), ParseError);
    CHECK(parse_polynomial("3/4*x^2 - y", u) == P(u, "3/4*x^2-y"));

    try {
        parse_polynomial("x +\n qq", u);
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.col() == 2);
    }
}

TEST_CASE("universe mapping guards")
{
    auto u = VarUniverse::commutative({"x", "y"});
    auto r = u->restricted({0});
    std::vector<int> down{0, -1};
    CHECK(P(u, "x^2+1").mapped(r, down) == P(r, "x^2+1"));
    CHECK_THROWS_AS(P(u, "x+y").mapped(r, down), std::invalid_argument);
}
