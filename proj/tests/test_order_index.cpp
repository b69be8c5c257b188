#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "ufss/order_index.hpp"
#include "ufss/poly.hpp"

using namespace ufss;

namespace {

// Independent oracle: enumerate every index of total degree <= max_deg and
// sort by the two-clause definition, written out directly.
std::vector<std::vector<unsigned>> enumerate_sorted(unsigned k, unsigned max_deg) {
    std::vector<std::vector<unsigned>> all;
    std::vector<unsigned> cur(k + 1, 0);
    // odometer enumeration
    for (;;) {
        unsigned total = 0;
        for (unsigned v : cur) total += v;
        if (total <= max_deg) all.push_back(cur);
        unsigned pos = 0;
        while (pos <= k) {
            if (cur[pos] < max_deg) {
                ++cur[pos];
                for (unsigned i = 0; i < pos; ++i) cur[i] = 0;
                break;
            }
            ++pos;
        }
        if (pos > k) break;
    }
    std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
        unsigned dx = 0, dy = 0;
        for (unsigned v : x) dx += v;
        for (unsigned v : y) dy += v;
        if (dx != dy) return dx < dy;
        return x < y;
    });
    return all;
}

OrderIndex idx(std::vector<unsigned> t) { return OrderIndex::from_tuple(t); }

}  // namespace

TEST_CASE("precedes on pinned pairs") {
    CHECK(precedes(idx({0, 0}), idx({0, 1})));
    CHECK(precedes(idx({0, 1}), idx({1, 0})));
    CHECK_FALSE(precedes(idx({2, 1}), idx({1, 2})));
    CHECK(precedes(idx({1, 2}), idx({2, 1})));
    CHECK_THROWS_AS(precedes(idx({0, 0}), idx({0, 0, 1})), DimensionError);
}

TEST_CASE("precedes is a strict total order (exhaustive, degree <= 6, k <= 3)") {
    for (unsigned k = 1; k <= 3; ++k) {
        auto all = enumerate_sorted(k, 6);
        std::vector<OrderIndex> xs;
        for (const auto& t : all) xs.push_back(idx(t));
        for (std::size_t i = 0; i < xs.size(); ++i) {
            CHECK_FALSE(precedes(xs[i], xs[i]));
            for (std::size_t j = i + 1; j < xs.size(); ++j) {
                // oracle order is ascending, so precedes must agree
                CHECK(precedes(xs[i], xs[j]));
                CHECK_FALSE(precedes(xs[j], xs[i]));
            }
        }
    }
}

TEST_CASE("sigma matches the enumeration oracle") {
    SECTION("pinned values, k = 1") {
        CHECK(sigma(0, 1) == idx({0, 0}));
        CHECK(sigma(1, 1) == idx({0, 1}));
        CHECK(sigma(2, 1) == idx({1, 0}));
        CHECK(sigma(3, 1) == idx({0, 2}));
        CHECK(sigma(4, 1) == idx({1, 1}));
        CHECK(sigma(5, 1) == idx({2, 0}));
    }
    SECTION("first entries equal the sorted enumeration") {
        for (unsigned k = 1; k <= 3; ++k) {
            auto all = enumerate_sorted(k, 10);
            std::size_t n = std::min<std::size_t>(all.size(), 200);
            for (std::size_t i = 0; i < n; ++i) CHECK(sigma(i, k) == idx(all[i]));
        }
    }
}

TEST_CASE("sigma and sigma_inv are inverse order isomorphisms on 1000 ranks") {
    for (unsigned k = 1; k <= 3; ++k) {
        OrderIndex prev;
        for (std::uint64_t n = 0; n < 1000; ++n) {
            OrderIndex a = sigma(n, k);
            CHECK(sigma_inv(a) == n);
            if (n > 0) CHECK(precedes(prev, a));
            prev = a;
        }
    }
}

TEST_CASE("monomial order of (y, z)-polynomials") {
    SECTION("constant") {
        Poly p = Poly::constant(2, Rational(1));
        auto o = monomial_order(p);
        REQUIRE(o);
        CHECK(*o == idx({0, 0}));
    }
    SECTION("y1^2 z + y1 z^2") {
        Poly p(2);
        p.add_term({2, 1}, Rational(1));
        p.add_term({1, 2}, Rational(1));
        auto o = monomial_order(p);
        REQUIRE(o);
        CHECK(*o == idx({2, 1}));
    }
    SECTION("3 y1 z + z^3: degree clause decides") {
        Poly p(2);
        p.add_term({1, 1}, Rational(3));
        p.add_term({0, 3}, Rational(1));
        auto o = monomial_order(p);
        REQUIRE(o);
        CHECK(*o == idx({0, 3}));
    }
    SECTION("zero polynomial has no order") {
        Poly p(2);
        CHECK_FALSE(monomial_order(p).has_value());
    }
    SECTION("maximum over random supports agrees with sort-based oracle") {
        auto all = enumerate_sorted(2, 4);
        // any sub-support: max by sorted position
        for (std::size_t stride = 1; stride <= 5; ++stride) {
            Poly p(3);
            std::size_t last = 0;
            for (std::size_t i = 0; i < all.size(); i += stride) {
                p.add_term(all[i], Rational(1));
                last = i;
            }
            auto o = monomial_order(p);
            REQUIRE(o);
            CHECK(*o == idx(all[last]));
        }
    }
}
