#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ufss/upoly.hpp"

using namespace ufss;

namespace {

QPoly qpoly(std::initializer_list<long long> cs) {
    std::vector<Rational> v;
    for (long long c : cs) v.emplace_back(c);
    return QPoly(std::move(v));
}

QPoly random_poly(std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<long long> coeff(-5, 5);
    std::uniform_int_distribution<long long> den(1, 4);
    int d = deg(rng);
    std::vector<Rational> c(d + 1);
    for (auto& x : c) x = Rational(coeff(rng), den(rng));
    if (c.back() == 0) c.back() = 1;
    return QPoly(std::move(c));
}

}  // namespace

TEST_CASE("divmod reconstructs the dividend") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        QPoly a = random_poly(rng, 6);
        QPoly d = random_poly(rng, 3);
        if (d.is_zero()) continue;
        auto [q, r] = a.divmod(d);
        CHECK(q * d + r == a);
        CHECK(r.degree() < d.degree());
    }
}

TEST_CASE("gcd of polynomials with a constructed common factor") {
    QPoly g = qpoly({-1, 1}) * qpoly({2, 1});  // (x-1)(x+2)
    QPoly a = g * qpoly({3, 0, 1});
    QPoly b = g * qpoly({-5, 1});
    QPoly got = upoly_gcd(a, b);
    auto [q, r] = got.divmod(g.monic());
    CHECK(r.is_zero());
    CHECK(q.degree() == 0);
}

TEST_CASE("squarefree part drops multiplicities") {
    QPoly p = qpoly({-1, 1}) * qpoly({-1, 1}) * qpoly({2, 1});  // (x-1)^2 (x+2)
    QPoly sf = squarefree_part(p);
    CHECK(sf == (qpoly({-1, 1}) * qpoly({2, 1})).monic());
}

TEST_CASE("Sturm chain counts roots of constructed polynomials") {
    // (x-1)(x-2)(x+3)
    QPoly p = qpoly({-1, 1}) * qpoly({-2, 1}) * qpoly({3, 1});
    SturmChain chain(p);
    CHECK(chain.count_roots(Rational(-4), Rational(4)) == 3);
    CHECK(chain.count_roots(Rational(0), Rational(4)) == 2);
    CHECK(chain.count_roots(Rational(-4), Rational(0)) == 1);
    CHECK(chain.count_roots(Rational(3), Rational(4)) == 0);

    // no real roots
    SturmChain none(qpoly({1, 0, 1}));
    CHECK(none.count_roots(Rational(-10), Rational(10)) == 0);
}

TEST_CASE("resultants on pinned inputs") {
    // shared root => 0
    QPoly a = qpoly({-1, 1}) * qpoly({-2, 1});
    QPoly b = qpoly({-2, 1}) * qpoly({-5, 1});
    CHECK(resultant_q(a, b) == 0);
    // disjoint quadratics: product of evaluations
    CHECK(resultant_q(qpoly({-2, 0, 1}), qpoly({-3, 0, 1})) == 1);
    CHECK(resultant_q(qpoly({-1, 1}), qpoly({-3, 1})) != 0);
}

TEST_CASE("integer primitive scaling") {
    QPoly p = qpoly({2, 4, 6}) * Rational(1, 3);
    QPoly ip = integer_primitive(p);
    CHECK(ip == qpoly({1, 2, 3}));
    QPoly q = qpoly({-2, -4}) * Rational(1, 2);
    CHECK(integer_primitive(q) == qpoly({1, 2}));
}

TEST_CASE("argument transforms") {
    QPoly p = qpoly({-2, 0, 1});  // x^2 - 2
    CHECK(p.shift(Rational(1)) == qpoly({-1, 2, 1}));
    CHECK(p.negate_arg() == p);
    CHECK(p.reverse() == qpoly({1, 0, -2}));
    CHECK(p.scale_arg(Rational(2)) == qpoly({-2, 0, 4}));
}
