#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ufss/param_poly.hpp"
#include "ufss/rat_func.hpp"

using namespace ufss;

namespace {

OrderIndex oi(std::vector<unsigned> t) { return OrderIndex::from_tuple(t); }

RatFunc rf_const(unsigned n, long long v) { return RatFunc::constant(n, Rational(v)); }
RatFunc rf_x(unsigned n, unsigned i, long long scale = 1) {
    return RatFunc(Poly::variable(n, i, Rational(scale)));
}

}  // namespace

TEST_CASE("poly bind, substitute and embed") {
    // p = x0^2 x1 + 3 x1
    Poly p(2);
    p.add_term({2, 1}, Rational(1));
    p.add_term({0, 1}, Rational(3));
    SECTION("bind x0 = 2") {
        Poly q = p.bind({Rational(2), std::nullopt});
        REQUIRE(q.num_vars() == 1);
        CHECK(q.eval_rational({Rational(5)}) == 35);  // (4+3)*5
    }
    SECTION("substitute x1 := x0 + 1") {
        Poly g(2);
        g.add_term({1, 0}, Rational(1));
        g.add_term({0, 0}, Rational(1));
        Poly q = p.substitute(1, g);
        // x0^2 (x0+1) + 3(x0+1)
        CHECK(q.eval_rational({Rational(2), Rational(99)}) == Rational(4 * 3 + 9));
    }
    SECTION("embed into larger space") {
        Poly q = p.embed(4, {3, 1});
        CHECK(q.eval_rational({Rational(9), Rational(5), Rational(9), Rational(2)}) ==
              p.eval_rational({Rational(2), Rational(5)}));
    }
    SECTION("algebraic evaluation with two irrational coords") {
        AlgebraicReal r2 = AlgebraicReal::from_poly_interval(QPoly(std::vector<Rational>{-2, 0, 1}), 1, 2);
        AlgebraicReal r3 = AlgebraicReal::from_poly_interval(QPoly(std::vector<Rational>{-3, 0, 1}), 1, 2);
        // x0 * x1 at (sqrt2, sqrt3) = sqrt6
        Poly m(2);
        m.add_term({1, 1}, Rational(1));
        AlgebraicReal v = m.eval_algebraic({r2, r3});
        AlgebraicReal s6 = AlgebraicReal::from_poly_interval(QPoly(std::vector<Rational>{-6, 0, 1}), 2, 3);
        CHECK(v == s6);
        CHECK(m.sign_at({r2, r3}) > 0);
    }
}

TEST_CASE("rational function arithmetic and evaluation") {
    // f = x / (x + 1)
    RatFunc f(Poly::variable(1, 0), Poly::variable(1, 0) + Poly::constant(1, Rational(1)));
    auto v = f.eval({AlgebraicReal(1)});
    REQUIRE(v);
    CHECK(*v == AlgebraicReal(rat(1, 2)));
    CHECK_FALSE(f.eval({AlgebraicReal(-1)}));  // pole
    RatFunc g = f + f;
    auto w = g.eval({AlgebraicReal(1)});
    REQUIRE(w);
    CHECK(*w == AlgebraicReal(1));
    CHECK_THROWS_AS(f / RatFunc::constant(1, Rational(0)), DomainError);
}

TEST_CASE("leading support") {
    SECTION("p = z") {
        ParamPoly p(1, 1);
        p.set_coeff(oi({0, 1}), rf_const(1, 1));
        auto ls = leading_support(p);
        REQUIRE(ls.support.size() == 1);
        CHECK(ls.leading == oi({0, 1}));
    }
    SECTION("p = x y1 + z^2") {
        ParamPoly p(1, 1);
        p.set_coeff(oi({1, 0}), rf_x(1, 0));
        p.set_coeff(oi({0, 2}), rf_const(1, 1));
        auto ls = leading_support(p);
        REQUIRE(ls.support.size() == 2);
        CHECK(ls.leading == oi({0, 2}));
    }
    SECTION("support is symbolic, not pointwise") {
        ParamPoly p(1, 1);
        p.set_coeff(oi({1, 0}), rf_x(1, 0));
        p.set_coeff(oi({0, 2}), rf_x(1, 0));
        auto ls = leading_support(p);
        CHECK(ls.support.size() == 2);
        CHECK(ls.leading == oi({0, 2}));
        // pointwise order at x = 0 is empty, elsewhere the full leading index
        CHECK_FALSE(p.order_at({AlgebraicReal(0)}).has_value());
        auto o = p.order_at({AlgebraicReal(3)});
        REQUIRE(o);
        CHECK(*o == oi({0, 2}));
    }
    SECTION("zero polynomial") {
        ParamPoly z(1, 1);
        CHECK_THROWS_AS(leading_support(z), DomainError);
    }
}

TEST_CASE("dividing by a coefficient makes the polynomial monic there") {
    // p = 2x z + x y : divide by the coefficient 2x of index (0,1)
    ParamPoly p(1, 1);
    p.set_coeff(oi({0, 1}), rf_x(1, 0, 2));
    p.set_coeff(oi({1, 0}), rf_x(1, 0));
    ParamPoly q = p.divide_by(p.coeff(oi({0, 1})));
    CHECK(q.coeff(oi({0, 1})) == rf_const(1, 1));
    CHECK(q.coeff(oi({1, 0})) == RatFunc(Poly::constant(1, rat(1, 2))));
    // round trip at a sample point x=3, y=5, z=7 where the guard x != 0 holds
    auto pv = p.eval({AlgebraicReal(3)}, {AlgebraicReal(5)}, AlgebraicReal(7));
    auto qv = q.eval({AlgebraicReal(3)}, {AlgebraicReal(5)}, AlgebraicReal(7));
    REQUIRE(pv);
    REQUIRE(qv);
    CHECK(*pv == *qv * AlgebraicReal(6));
    CHECK_THROWS_AS(p.divide_by(RatFunc::constant(1, Rational(0))), DomainError);
}

TEST_CASE("evaluation at algebraic fiber points") {
    // p = z^2 - 2 with constant coefficients
    ParamPoly p(1, 1);
    p.set_coeff(oi({0, 2}), rf_const(1, 1));
    p.set_coeff(oi({0, 0}), rf_const(1, -2));
    AlgebraicReal r2 = AlgebraicReal::from_poly_interval(QPoly(std::vector<Rational>{-2, 0, 1}), 1, 2);
    auto v = p.eval({AlgebraicReal(0)}, {AlgebraicReal(0)}, r2);
    REQUIRE(v);
    CHECK(v->sign() == 0);
}

TEST_CASE("subtracting polynomials with equal leading terms drops the order") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> cdist(-4, 4);
    std::uniform_int_distribution<unsigned> idx_pick(0, 5);
    for (int iter = 0; iter < 60; ++iter) {
        OrderIndex top = sigma(3 + idx_pick(rng), 1);
        ParamPoly a(1, 1), b(1, 1);
        a.set_coeff(top, rf_const(1, 1));
        b.set_coeff(top, rf_const(1, 1));
        for (int j = 0; j < 4; ++j) {
            OrderIndex lower = sigma(idx_pick(rng) % sigma_inv(top), 1);
            a.set_coeff(lower, rf_const(1, cdist(rng)));
            lower = sigma(idx_pick(rng) % sigma_inv(top), 1);
            b.set_coeff(lower, rf_const(1, cdist(rng)));
        }
        ParamPoly d = a - b;
        if (d.is_zero()) continue;
        auto od = d.leading_index();
        REQUIRE(od);
        CHECK(precedes(*od, top));
    }
}

TEST_CASE("parameter substitution removes a coordinate") {
    // p = z - x*y1*y2 over k = 2; substitute y1 := 3
    ParamPoly p(1, 2);
    p.set_coeff(oi({0, 0, 1}), rf_const(1, 1));
    p.set_coeff(oi({1, 1, 0}), rf_x(1, 0, -1));
    Poly three = Poly::constant(1, Rational(3));
    ParamPoly q = p.substitute_param(0, three);
    CHECK(q.param_vars() == 1);
    // q = z - 3 x y2: at x=2, y2=5 the z-coefficients are [-30, 1]
    auto zc = q.z_coeffs_at({AlgebraicReal(2)}, {AlgebraicReal(5)});
    REQUIRE(zc);
    REQUIRE(zc->size() == 2);
    CHECK((*zc)[0] == AlgebraicReal(-30));
    CHECK((*zc)[1] == AlgebraicReal(1));
}
