#include <catch2/catch_amalgamated.hpp>

#include "ufss/descriptor.hpp"

using namespace ufss;

namespace {

OrderIndex oi(std::vector<unsigned> t) { return OrderIndex::from_tuple(t); }
RatFunc rf_const(unsigned n, long long v) { return RatFunc::constant(n, Rational(v)); }
RatFunc rf_x(unsigned n, unsigned i, long long scale = 1) {
    return RatFunc(Poly::variable(n, i, Rational(scale)));
}
Point pt(std::initializer_list<long long> xs) {
    Point p;
    for (long long x : xs) p.emplace_back(Rational(x));
    return p;
}

}  // namespace

TEST_CASE("fiber of z^2 = b with positivity guard") {
    // m = 1, k = 0: z^2 - x0 = 0, ambient x0 > 0
    ParamPoly eq(1, 0);
    eq.set_coeff(oi({2}), rf_const(1, 1));
    eq.set_coeff(oi({0}), rf_x(1, 0, -1));
    DefSetDescriptor Z = simple_descriptor(1, 0, eq);
    Z.ambient.push_back({Poly::variable(1, 0), AmbientCond::Rel::GT});

    FiberResult f = fiber(Z, pt({4}), {});
    REQUIRE_FALSE(f.degenerate);
    REQUIRE(f.points.size() == 2);
    CHECK(f.points[0][0] == AlgebraicReal(-2));
    CHECK(f.points[1][0] == AlgebraicReal(2));

    // outside the ambient domain the fiber is empty
    CHECK(fiber(Z, pt({-1}), {}).points.empty());
}

TEST_CASE("fiber of the graph z = b*a") {
    ParamPoly eq(1, 1);
    eq.set_coeff(oi({0, 1}), rf_const(1, 1));
    eq.set_coeff(oi({1, 0}), rf_x(1, 0, -1));
    DefSetDescriptor Z = simple_descriptor(1, 1, eq);
    FiberResult f = fiber(Z, pt({2}), pt({3}));
    REQUIRE(f.points.size() == 1);
    CHECK(f.points[0][0] == AlgebraicReal(6));
}

TEST_CASE("fiber with no real roots is empty") {
    ParamPoly eq(1, 1);
    eq.set_coeff(oi({0, 2}), rf_const(1, 1));
    eq.set_coeff(oi({0, 0}), rf_const(1, 1));
    DefSetDescriptor Z = simple_descriptor(1, 1, eq);
    CHECK(fiber(Z, pt({0}), pt({0})).points.empty());
}

TEST_CASE("degenerate fibers are signalled or excluded") {
    // z * x0 = 0: at x0 = 0 the equation collapses
    ParamPoly eq(1, 0);
    eq.set_coeff(oi({1}), rf_x(1, 0));
    DefSetDescriptor Z = simple_descriptor(1, 0, eq);
    SECTION("signal") {
        FiberResult f = fiber(Z, pt({0}), {});
        CHECK(f.degenerate);
    }
    SECTION("excluded") {
        Z.exclude_degenerate = true;
        FiberResult f = fiber(Z, pt({0}), {});
        CHECK_FALSE(f.degenerate);
        CHECK(f.points.empty());
    }
    SECTION("nondegenerate point unaffected") {
        FiberResult f = fiber(Z, pt({5}), {});
        REQUIRE(f.points.size() == 1);
        CHECK(f.points[0][0] == AlgebraicReal(0));
    }
}

TEST_CASE("strict conditions filter roots by sign") {
    // z^2 = 4 with strict condition z > 0  (m = 0, k = 0, l = 1)
    ParamPoly eq(0, 0);
    eq.set_coeff(oi({2}), rf_const(0, 1));
    eq.set_coeff(oi({0}), rf_const(0, -4));
    DefSetDescriptor Z = simple_descriptor(0, 0, eq);
    Poly zpos(1);  // over m+k+l = 1 variable
    zpos.add_term({1}, Rational(1));
    Z.strict.push_back(zpos);
    FiberResult f = fiber(Z, {}, {});
    REQUIRE(f.points.size() == 1);
    CHECK(f.points[0][0] == AlgebraicReal(2));
}

TEST_CASE("filter equations intersect root sets") {
    // primary: z^2 = 2b^2 ; filter: z = b  -> only the shared root b... none
    // unless b = 0. Use z^2 = b^2 with filter z - b = 0 -> fiber {b}.
    ParamPoly prim(1, 0);
    prim.set_coeff(oi({2}), rf_const(1, 1));
    prim.set_coeff(oi({0}), RatFunc(-(Poly::variable(1, 0) * Poly::variable(1, 0))));
    ParamPoly filt(1, 0);
    filt.set_coeff(oi({1}), rf_const(1, 1));
    filt.set_coeff(oi({0}), rf_x(1, 0, -1));
    DefSetDescriptor Z = simple_descriptor(1, 0, prim);
    Z.equations.push_back(ZEquation{0, filt});
    FiberResult f = fiber(Z, pt({3}), {});
    REQUIRE(f.points.size() == 1);
    CHECK(f.points[0][0] == AlgebraicReal(3));
}

TEST_CASE("selectors pick one indexed root with smallest-repeat convention") {
    // z^2 = b: roots -sqrt(b), sqrt(b)
    ParamPoly eq(1, 0);
    eq.set_coeff(oi({2}), rf_const(1, 1));
    eq.set_coeff(oi({0}), rf_x(1, 0, -1));
    DefSetDescriptor Z = simple_descriptor(1, 0, eq);
    Z.selectors = {std::optional<unsigned>{1}};
    FiberResult f = fiber(Z, pt({9}), {});
    REQUIRE(f.points.size() == 1);
    CHECK(f.points[0][0] == AlgebraicReal(3));
    // out-of-range selector falls back to the smallest root
    Z.selectors = {std::optional<unsigned>{5}};
    f = fiber(Z, pt({9}), {});
    REQUIRE(f.points.size() == 1);
    CHECK(f.points[0][0] == AlgebraicReal(-3));
}

TEST_CASE("guards exclude points where a rational function vanishes") {
    ParamPoly eq(1, 0);
    eq.set_coeff(oi({1}), rf_const(1, 1));
    eq.set_coeff(oi({0}), rf_x(1, 0, -1));
    DefSetDescriptor Z = simple_descriptor(1, 0, eq);
    Z.guards.push_back(rf_x(1, 0));  // b != 0
    CHECK(fiber(Z, pt({0}), {}).points.empty());
    CHECK(fiber(Z, pt({2}), {}).points.size() == 1);
}

TEST_CASE("two fiber coordinates form the product of root sets") {
    // l = 2: z0 = b, z1^2 = b  (m=1, k=0)
    ParamPoly e0(1, 0), e1(1, 0);
    e0.set_coeff(oi({1}), rf_const(1, 1));
    e0.set_coeff(oi({0}), rf_x(1, 0, -1));
    e1.set_coeff(oi({2}), rf_const(1, 1));
    e1.set_coeff(oi({0}), rf_x(1, 0, -1));
    DefSetDescriptor Z;
    Z.m = 1;
    Z.k = 0;
    Z.l = 2;
    Z.equations.push_back(ZEquation{0, e0});
    Z.equations.push_back(ZEquation{1, e1});
    FiberResult f = fiber(Z, pt({4}), {});
    REQUIRE(f.points.size() == 2);
    CHECK(f.points[0][0] == AlgebraicReal(4));
    CHECK(f.points[0][1] == AlgebraicReal(-2));
    CHECK(f.points[1][1] == AlgebraicReal(2));
}
