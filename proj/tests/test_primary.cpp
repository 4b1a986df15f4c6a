#include <catch2/catch_amalgamated.hpp>

#include <bsato/primary.hpp>

#include "test_util.hpp"

using namespace bsato;
using testutil::P;
using testutil::ideal;

namespace {

IdealHandle comp_intersection(const std::vector<PrimaryComponent>& comps, const UniversePtr& u)
{
    std::vector<IdealHandle> ideals;
    for (const auto& c : comps) ideals.push_back(c.component);
    return intersect_all(ideals, u);
}

}  // namespace

TEST_CASE("monomial ideal splits into variable components")
{
    auto u = VarUniverse::commutative({"x", "y"});
    IdealHandle I = ideal(u, {"x*y"});
    auto comps = primary_decompose(I);
    REQUIRE(comps.size() == 2);
    CHECK(equal(comp_intersection(comps, u), I));
    bool sawX = false, sawY = false;
    for (const auto& c : comps) {
        if (equal(c.component, ideal(u, {"x"}))) sawX = true;
        if (equal(c.component, ideal(u, {"y"}))) sawY = true;
    }
    CHECK(sawX);
    CHECK(sawY);
    CHECK(verify_decomposition(I, comps).passed());
}

TEST_CASE("embedded component example is accepted by the intersection oracle")
{
    auto u = VarUniverse::commutative({"x", "y"});
    IdealHandle I = ideal(u, {"x^2", "x*y"});
    auto comps = primary_decompose(I);
    REQUIRE(comps.size() >= 2);  // at least the minimal prime <x> and an embedded piece
    CHECK(equal(comp_intersection(comps, u), I));
    auto rep = verify_decomposition(I, comps);
    CHECK(rep.passed());
}

TEST_CASE("primary input comes back as a single component")
{
    auto u = VarUniverse::commutative({"x", "y"});
    SECTION("prime")
    {
        IdealHandle I = ideal(u, {"x^2+y^3"});
        auto comps = primary_decompose(I);
        REQUIRE(comps.size() == 1);
        CHECK(equal(comps[0].component, I));
    }
    SECTION("primary with nilpotents")
    {
        IdealHandle I = ideal(u, {"x^2", "y^2"});
        auto comps = primary_decompose(I);
        REQUIRE(comps.size() == 1);
        CHECK(equal(comps[0].component, I));
        CHECK(verify_decomposition(I, comps).passed());
    }
}

TEST_CASE("conjugate points split along the minimal polynomial")
{
    auto u = VarUniverse::commutative({"x", "y"});
    // four points over C, conjugate in pairs; two rational components
    IdealHandle I = ideal(u, {"x^2+1", "y^2+1"});
    auto comps = primary_decompose(I);
    REQUIRE(comps.size() == 2);
    CHECK(equal(comp_intersection(comps, u), I));
    for (const auto& c : comps) CHECK(c.certified);
    CHECK(verify_decomposition(I, comps).passed());
}

TEST_CASE("mixed dimensions with s variables")
{
    auto u = VarUniverse::poly_with_s({"x", "y"}, 3);
    // the triple-line arrangement ideal: <s1+1, x> cap <s2+1, y> cap <s3+1, 1-x-y>
    IdealHandle U1 = ideal(u, {"s1+1", "x"});
    IdealHandle U2 = ideal(u, {"s2+1", "y"});
    IdealHandle U3 = ideal(u, {"s3+1", "1-x-y"});
    IdealHandle I = intersect(intersect(U1, U2), U3);

    auto comps = primary_decompose(I);
    REQUIRE(comps.size() == 3);
    CHECK(equal(comp_intersection(comps, u), I));
    CHECK(verify_decomposition(I, comps).passed());

    int matched = 0;
    for (const auto& c : comps) {
        auto xs = c.x_part.universe();
        auto ss = c.s_part.universe();
        REQUIRE(xs->size() == 2);
        REQUIRE(ss->size() == 3);
        if (equal(c.s_part, IdealHandle(ss, {parse_polynomial("s1+1", ss)}))) {
            CHECK(equal(c.x_part, IdealHandle(xs, {parse_polynomial("x", xs)})));
            ++matched;
        } else if (equal(c.s_part, IdealHandle(ss, {parse_polynomial("s2+1", ss)}))) {
            CHECK(equal(c.x_part, IdealHandle(xs, {parse_polynomial("y", xs)})));
            ++matched;
        } else if (equal(c.s_part, IdealHandle(ss, {parse_polynomial("s3+1", ss)}))) {
            CHECK(equal(c.x_part, IdealHandle(xs, {parse_polynomial("1-x-y", xs)})));
            ++matched;
        }
    }
    CHECK(matched == 3);
}

TEST_CASE("zero-dimensional rational points with s parts")
{
    auto u = VarUniverse::poly_with_s({"x", "y", "z"}, 2);
    IdealHandle I = ideal(u, {"x", "y", "z", "s1+2", "2*s2+3"});
    auto comps = primary_decompose(I);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].certified);
    auto ss = comps[0].s_part.universe();
    CHECK(equal(comps[0].s_part,
                IdealHandle(ss, {parse_polynomial("s1+2", ss), parse_polynomial("2*s2+3", ss)})));
}

TEST_CASE("verify_decomposition rejects a wrong proposal")
{
    auto u = VarUniverse::commutative({"x", "y"});
    IdealHandle I = ideal(u, {"x*y"});
    PrimaryComponent only;
    only.component = ideal(u, {"x"});
    only.x_part = only.component;
    only.s_part = IdealHandle::zero(u->restricted({}));
    auto rep = verify_decomposition(I, {only});
    CHECK_FALSE(rep.intersection_equal);
    CHECK_FALSE(rep.passed());

    PrimaryComponent cx, cy;
    cx.component = ideal(u, {"x"});
    cy.component = ideal(u, {"y"});
    auto rep2 = verify_decomposition(I, {cx, cy});
    CHECK(rep2.intersection_equal);
    CHECK(rep2.components_contain);
    CHECK(rep2.passed());
}

TEST_CASE("decomposition is deterministic")
{
    auto u = VarUniverse::poly_with_s({"x", "y"}, 2);
    IdealHandle I = ideal(u, {"(s1+1)*(s2+1)", "x*(s2+1)", "y*(s1+1)", "x*y"});
    auto c1 = primary_decompose(I);
    auto c2 = primary_decompose(I);
    REQUIRE(c1.size() == c2.size());
    for (std::size_t i = 0; i < c1.size(); ++i) {
        CHECK(equal(c1[i].component, c2[i].component));
        CHECK(equal(c1[i].x_part, c2[i].x_part));
        CHECK(equal(c1[i].s_part, c2[i].s_part));
    }
    CHECK(equal(comp_intersection(c1, u), I));
}

TEST_CASE("rejects unit and zero ideals")
{
    auto u = VarUniverse::commutative({"x"});
    CHECK_THROWS_AS(primary_decompose(IdealHandle::zero(u)), std::invalid_argument);
    CHECK_THROWS_AS(primary_decompose(IdealHandle::unit(u)), std::invalid_argument);
}

TEST_CASE("curve and lines mixture")
{
    auto u = VarUniverse::poly_with_s({"x", "y"}, 2);
    IdealHandle A = ideal(u, {"s1+1", "x^3+y^2"});
    IdealHandle B = ideal(u, {"x", "y", "4*s1+6*s2+5"});
    IdealHandle I = intersect(A, B);
    auto comps = primary_decompose(I);
    REQUIRE(comps.size() == 2);
    CHECK(equal(comp_intersection(comps, u), I));
    bool sawA = false, sawB = false;
    for (const auto& c : comps) {
        if (equal(c.component, A)) sawA = true;
        if (equal(c.component, B)) sawB = true;
    }
    CHECK(sawA);
    CHECK(sawB);
    CHECK(verify_decomposition(I, comps).passed());
}
