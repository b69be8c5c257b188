#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ufss/algebraic_real.hpp"
#include "ufss/root_isolation.hpp"

using namespace ufss;

namespace {

QPoly qpoly(std::initializer_list<long long> cs) {
    std::vector<Rational> v;
    for (long long c : cs) v.emplace_back(c);
    return QPoly(std::move(v));
}

AlgebraicReal sqrt2() { return AlgebraicReal::from_poly_interval(qpoly({-2, 0, 1}), 1, 2); }
AlgebraicReal sqrt3() { return AlgebraicReal::from_poly_interval(qpoly({-3, 0, 1}), 1, 2); }

}  // namespace

TEST_CASE("construction normalizes rational roots") {
    // (z-1)(z-2): the root in (3/2, 3) is the rational 2
    QPoly p = qpoly({2, -3, 1});
    AlgebraicReal r = AlgebraicReal::from_poly_interval(p, rat(3, 2), 3);
    REQUIRE(r.is_rational());
    CHECK(r.rational_value() == 2);

    // linear
    AlgebraicReal s = AlgebraicReal::from_poly_interval(qpoly({-6, 2}), 0, 10);
    REQUIRE(s.is_rational());
    CHECK(s.rational_value() == 3);

    // root at zero inside the interval
    QPoly z = qpoly({0, 1}) * qpoly({-7, 0, 1});
    AlgebraicReal t = AlgebraicReal::from_poly_interval(z, -1, 1);
    REQUIRE(t.is_rational());
    CHECK(t.rational_value() == 0);
}

TEST_CASE("construction rejects bad intervals") {
    CHECK_THROWS(AlgebraicReal::from_poly_interval(QPoly(), 0, 1));
    // two roots inside
    CHECK_THROWS(AlgebraicReal::from_poly_interval(qpoly({-2, 0, 1}), -2, 2));
    // no root inside
    CHECK_THROWS(AlgebraicReal::from_poly_interval(qpoly({-2, 0, 1}), 3, 4));
}

TEST_CASE("evaluating the defining polynomial gives exactly zero") {
    AlgebraicReal r = sqrt2();
    REQUIRE_FALSE(r.is_rational());
    CHECK(r.sign_of_poly_at(qpoly({-2, 0, 1})) == 0);
    CHECK(r.is_root_of(qpoly({-2, 0, 1})));
    CHECK(r.sign_of_poly_at(qpoly({-3, 0, 1})) < 0);  // 2 - 3 < 0
    CHECK(r.sign_of_poly_at(qpoly({-1, 0, 1})) > 0);  // 2 - 1 > 0
}

TEST_CASE("comparisons against rationals and each other") {
    AlgebraicReal r2 = sqrt2(), r3 = sqrt3();
    CHECK(r2 < r3);
    CHECK(r2 > AlgebraicReal(1));
    CHECK(r2 < AlgebraicReal(rat(3, 2)));
    CHECK(r2 == sqrt2());
    CHECK((-r2) < r2);
    CHECK((-r2) == AlgebraicReal(0) - r2);
}

TEST_CASE("field arithmetic identities") {
    AlgebraicReal r2 = sqrt2(), r3 = sqrt3();
    SECTION("sqrt2 * sqrt2 = 2 exactly") {
        AlgebraicReal p = r2 * r2;
        REQUIRE(p.is_rational());
        CHECK(p.rational_value() == 2);
    }
    SECTION("sqrt2 + sqrt2 = sqrt8") {
        AlgebraicReal s = r2 + r2;
        AlgebraicReal s8 = AlgebraicReal::from_poly_interval(qpoly({-8, 0, 1}), 2, 3);
        CHECK(s == s8);
    }
    SECTION("(a + b) - b = a and a * (1/a) = 1 on mixed samples") {
        std::vector<AlgebraicReal> vals{r2, r3, AlgebraicReal(rat(7, 3)), -r2, r2 + r3,
                                        AlgebraicReal(-4)};
        for (const auto& a : vals) {
            for (const auto& b : vals) {
                CHECK((a + b) - b == a);
            }
            if (a.sign() != 0) CHECK(a * a.inverse() == AlgebraicReal(1));
        }
    }
    SECTION("sqrt2 * sqrt3 = sqrt6") {
        AlgebraicReal p = r2 * r3;
        AlgebraicReal s6 = AlgebraicReal::from_poly_interval(qpoly({-6, 0, 1}), 2, 3);
        CHECK(p == s6);
    }
    SECTION("division") {
        AlgebraicReal q = sqrt3() / sqrt3();
        REQUIRE(q.is_rational());
        CHECK(q.rational_value() == 1);
    }
}

TEST_CASE("apply_poly computes exact polynomial images") {
    AlgebraicReal r2 = sqrt2();
    AlgebraicReal sq = r2.apply_poly(qpoly({0, 0, 1}));
    REQUIRE(sq.is_rational());
    CHECK(sq.rational_value() == 2);

    AlgebraicReal cube = r2.apply_poly(qpoly({0, 0, 0, 1}));
    AlgebraicReal s8 = AlgebraicReal::from_poly_interval(qpoly({-8, 0, 1}), 2, 3);
    CHECK(cube == s8);

    AlgebraicReal affine = r2.apply_poly(qpoly({5, 2}));  // 2 sqrt2 + 5
    CHECK(affine > AlgebraicReal(7));
    CHECK(affine < AlgebraicReal(8));
    CHECK(affine - AlgebraicReal(5) == r2 + r2);
}

TEST_CASE("sorting mixed points is deterministic and exact") {
    std::vector<Point> pts{{sqrt3()}, {AlgebraicReal(1)}, {sqrt2()}, {AlgebraicReal(rat(3, 2))}, {sqrt2()}};
    sort_dedup_points(pts);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0][0] == AlgebraicReal(1));
    CHECK(pts[1][0] == sqrt2());
    CHECK(pts[2][0] == AlgebraicReal(rat(3, 2)));
    CHECK(pts[3][0] == sqrt3());
}
