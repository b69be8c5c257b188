#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ufss/root_isolation.hpp"

using namespace ufss;

namespace {

QPoly qpoly(std::initializer_list<long long> cs) {
    std::vector<Rational> v;
    for (long long c : cs) v.emplace_back(c);
    return QPoly(std::move(v));
}

}  // namespace

TEST_CASE("pinned isolation cases") {
    SECTION("linear root") {
        auto roots = isolate_roots(qpoly({-3, 1}));
        REQUIRE(roots.size() == 1);
        REQUIRE(roots[0].is_rational());
        CHECK(roots[0].rational_value() == 3);
    }
    SECTION("no real roots") {
        CHECK(isolate_roots(qpoly({1, 0, 1})).empty());
    }
    SECTION("z^2 - 2 gives both square roots with disjoint intervals") {
        auto roots = isolate_roots(qpoly({-2, 0, 1}));
        REQUIRE(roots.size() == 2);
        CHECK(roots[0] == -roots[1]);
        CHECK(roots[0].sign() < 0);
        CHECK(roots[1].sign() > 0);
        auto [l0, h0] = roots[0].interval();
        auto [l1, h1] = roots[1].interval();
        CHECK(h0 <= l1);
        CHECK(roots[1] * roots[1] == AlgebraicReal(2));
    }
    SECTION("zero polynomial is a domain error") {
        CHECK_THROWS_AS(isolate_roots(QPoly()), DomainError);
    }
}

TEST_CASE("isolation recovers constructed root sets") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long long> num(-8, 8);
    std::uniform_int_distribution<long long> den(1, 5);
    for (int iter = 0; iter < 40; ++iter) {
        // build p with known rational roots, possibly duplicated, plus a
        // rootless quadratic factor
        std::vector<Rational> roots;
        int nroots = 1 + iter % 4;
        for (int i = 0; i < nroots; ++i) roots.emplace_back(num(rng), den(rng));
        QPoly p = QPoly::constant(Rational(num(rng) * 2 + 1));
        for (const auto& r : roots) p = p * QPoly::linear_root(r);
        if (iter % 3 == 0) p = p * qpoly({1, 0, 1});
        if (iter % 5 == 0) p = p * QPoly::linear_root(roots[0]);  // multiplicity

        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

        auto got = isolate_roots(p);
        REQUIRE(got.size() == roots.size());
        for (std::size_t i = 0; i < roots.size(); ++i) {
            CHECK(got[i].is_rational());
            CHECK(got[i].rational_value() == roots[i]);
        }
    }
}

TEST_CASE("isolation output satisfies the defining properties") {
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<long long> coeff(-6, 6);
    for (int iter = 0; iter < 30; ++iter) {
        std::vector<Rational> c(4 + iter % 3);
        for (auto& x : c) x = coeff(rng);
        if (c.back() == 0) c.back() = 1;
        QPoly p(std::move(c));
        auto roots = isolate_roots(p);
        // evaluating p at each root is exactly zero; intervals are disjoint
        for (std::size_t i = 0; i < roots.size(); ++i) {
            CHECK(roots[i].sign_of_poly_at(p) == 0);
            if (i + 1 < roots.size()) CHECK(roots[i] < roots[i + 1]);
        }
        // count matches the variation difference over a wide interval
        SturmChain chain(p);
        Rational b = cauchy_root_bound(p) + 1;
        CHECK(static_cast<int>(roots.size()) == chain.count_roots(-b, b));
    }
}

TEST_CASE("isolation with algebraic coefficients") {
    AlgebraicReal r2 = AlgebraicReal::from_poly_interval(qpoly({-2, 0, 1}), 1, 2);
    SECTION("z - sqrt2") {
        auto roots = isolate_roots_algebraic({-r2, AlgebraicReal(1)});
        REQUIRE(roots.size() == 1);
        CHECK(roots[0] == r2);
    }
    SECTION("(z - sqrt2)(z - 1) = z^2 - (1 + sqrt2) z + sqrt2") {
        auto roots = isolate_roots_algebraic({r2, -(AlgebraicReal(1) + r2), AlgebraicReal(1)});
        REQUIRE(roots.size() == 2);
        CHECK(roots[0] == AlgebraicReal(1));
        CHECK(roots[1] == r2);
    }
    SECTION("repeated algebraic root collapses") {
        // (z - sqrt2)^2 = z^2 - 2 sqrt2 z + 2
        auto roots = isolate_roots_algebraic({AlgebraicReal(2), -(r2 + r2), AlgebraicReal(1)});
        REQUIRE(roots.size() == 1);
        CHECK(roots[0] == r2);
    }
    SECTION("rational coefficients fall back to the exact rational path") {
        auto roots = isolate_roots_algebraic({AlgebraicReal(-2), AlgebraicReal(0), AlgebraicReal(1)});
        REQUIRE(roots.size() == 2);
        CHECK(roots[1] == r2);
    }
}
