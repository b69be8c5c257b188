#include <catch2/catch_amalgamated.hpp>

#include "ufss/ufss.hpp"

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
ModelPtr model1(std::initializer_list<long long> xs) {
    std::vector<Point> pts;
    for (long long x : xs) pts.push_back(pt({x}));
    return make_base_model(1, pts);
}

}  // namespace

TEST_CASE("explicit index fibers list the model") {
    auto S = model1({1, 2});
    auto X = make_explicit_x(1, 1, S);
    auto f = x_fiber(*X, pt({7}));
    REQUIRE(f.size() == 2);
    CHECK(f[0][0] == AlgebraicReal(1));
    CHECK(f[1][0] == AlgebraicReal(2));
}

TEST_CASE("image index fibers deduplicate exact images") {
    auto S = model1({-1, 1});
    auto X = make_explicit_x(1, 0, S);
    // g -> g^2
    auto sq = make_image_x(X, {RatFunc(Poly::variable(1, 0) * Poly::variable(1, 0))});
    auto f = x_fiber(*sq, {});
    REQUIRE(f.size() == 1);
    CHECK(f[0][0] == AlgebraicReal(1));
}

TEST_CASE("alone-in-family filter drops colliding members") {
    // family z = b * a over lifted pairs: members collide exactly at a = 0
    ParamPoly eq(1, 1);
    eq.set_coeff(oi({0, 1}), rf_const(1, 1));
    eq.set_coeff(oi({1, 0}), rf_x(1, 0, -1));
    auto Z = std::make_shared<DefSetDescriptor>(simple_descriptor(1, 1, eq));
    auto S = model1({1, 2});
    auto pred = std::make_shared<Predicate>();
    pred->kind = Predicate::Kind::ALONE_IN_FAMILY;
    pred->z = Z;
    pred->co_members = S;
    auto X = make_filtered_x(make_explicit_x(1, 1, S), pred);
    CHECK(x_fiber(*X, pt({0})).empty());          // both fibers are {0}
    CHECK(x_fiber(*X, pt({3})).size() == 2);      // {3} vs {6}
}

TEST_CASE("product and pair predicates") {
    auto S = model1({1, 2});
    auto X = make_explicit_x(1, 1, S);
    auto XX = make_product_x(X, X);
    CHECK(x_fiber(*XX, pt({5})).size() == 4);

    auto distinct = std::make_shared<Predicate>();
    distinct->kind = Predicate::Kind::PAIR_DISTINCT;
    auto Xd = make_filtered_x(XX, distinct);
    CHECK(x_fiber(*Xd, pt({5})).size() == 2);

    // collision predicate against z = b*a
    ParamPoly eq(1, 1);
    eq.set_coeff(oi({0, 1}), rf_const(1, 1));
    eq.set_coeff(oi({1, 0}), rf_x(1, 0, -1));
    auto Z = std::make_shared<DefSetDescriptor>(simple_descriptor(1, 1, eq));
    auto collide = std::make_shared<Predicate>();
    collide->kind = Predicate::Kind::PAIR_COLLIDES;
    collide->z = Z;
    auto Xc = make_filtered_x(Xd, collide);
    CHECK(x_fiber(*Xc, pt({0})).size() == 2);  // both orderings of (1,2)
    CHECK(x_fiber(*Xc, pt({3})).empty());
}

TEST_CASE("parameter embedding pins a coordinate to a polynomial") {
    auto S = model1({4});
    auto X = make_explicit_x(1, 1, S);
    // insert a new first parameter equal to a1^2 (lift over the remaining block)
    Poly sq(1);
    sq.add_term({2}, Rational(1));
    auto Xe = make_param_embed_x(X, 0, sq);
    CHECK(x_fiber(*Xe, pt({9, 3})).size() == 1);
    CHECK(x_fiber(*Xe, pt({8, 3})).empty());
}

TEST_CASE("parameter append keeps points matching the appended values") {
    auto S = model1({1, 2});
    auto X = make_explicit_x(1, 1, S);
    // append d = b + a
    Poly f(2);
    f.add_term({1, 0}, Rational(1));
    f.add_term({0, 1}, Rational(1));
    auto Xa = make_param_append_x(X, {f});
    auto fib = x_fiber(*Xa, pt({10, 11}));
    REQUIRE(fib.size() == 1);
    CHECK(fib[0][0] == AlgebraicReal(1));
    CHECK(x_fiber(*Xa, pt({10, 12})).size() == 1);
    CHECK(x_fiber(*Xa, pt({10, 13})).empty());
}

TEST_CASE("choice instance converts to a graph family") {
    SECTION("h(g, a) = g + a with S = {0}") {
        ChoiceInstance inst;
        inst.n = 1;
        inst.k = 1;
        inst.l = 1;
        Poly h(2);
        h.add_term({1, 0}, Rational(1));
        h.add_term({0, 1}, Rational(1));
        inst.h.coords = {h};
        inst.S = model1({0});
        inst.domain.m = 1;
        inst.domain.k = 1;
        inst.domain.l = 0;
        UFSS u = choice_to_ufss(inst);
        auto un = total_fiber_union(u, pt({5}));
        REQUIRE(un.points.size() == 1);
        CHECK(un.points[0][0] == AlgebraicReal(5));
    }
    SECTION("h(g) = g^2 with S = {-1, 1} unions to {1}") {
        ChoiceInstance inst;
        inst.n = 1;
        inst.k = 1;
        inst.l = 1;
        Poly h(2);
        h.add_term({2, 0}, Rational(1));
        inst.h.coords = {h};
        inst.S = model1({-1, 1});
        inst.domain.m = 1;
        inst.domain.k = 1;
        inst.domain.l = 0;
        UFSS u = choice_to_ufss(inst);
        for (long long a : {-2, 0, 3}) {
            auto un = total_fiber_union(u, pt({a}));
            REQUIRE(un.points.size() == 1);
            CHECK(un.points[0][0] == AlgebraicReal(1));
        }
    }
    SECTION("empty model gives empty fibers") {
        ChoiceInstance inst;
        inst.n = 1;
        inst.k = 1;
        inst.l = 1;
        inst.h.coords = {Poly::variable(2, 0)};
        inst.S = make_base_model(1, {});
        inst.domain.m = 1;
        inst.domain.k = 1;
        inst.domain.l = 0;
        UFSS u = choice_to_ufss(inst);
        CHECK(total_fiber_union(u, pt({1})).points.empty());
    }
}

TEST_CASE("choice conversion splits injective families into selector graphs") {
    // z^2 = b over S = {1, 4}, k = 0; injective because the fibers
    // {-1, 1} and {-2, 2} are disjoint
    ParamPoly eq(1, 0);
    eq.set_coeff(oi({2}), rf_const(1, 1));
    eq.set_coeff(oi({0}), rf_x(1, 0, -1));
    UFSS u;
    u.m = 1;
    u.k = 0;
    u.l = 1;
    u.Z = simple_descriptor(1, 0, eq);
    u.S = model1({1, 4});
    u.X = make_explicit_x(1, 0, u.S);
    u.injective_flag = true;

    DecompositionResult dec;
    dec.add_piece(u, {provenance::X1_INJECTIVE});
    ChoiceDecomposition ch = ufss_to_choice(dec);
    REQUIRE(ch.pieces.size() == 2);
    auto v0 = ch.pieces[0].h.eval(pt({4}), {});
    auto v1 = ch.pieces[1].h.eval(pt({4}), {});
    REQUIRE(v0);
    REQUIRE(v1);
    CHECK((*v0)[0] == AlgebraicReal(-2));
    CHECK((*v1)[0] == AlgebraicReal(2));

    // selector values cover the fiber as a set, with the smallest repeated
    FiberSelection sel{u, fiber_size_bound(u.Z)};
    REQUIRE(sel.q == 2);
    for (long long b : {1, 4}) {
        FiberResult fr = fiber(u.Z, pt({b}), {});
        std::vector<Point> vals;
        for (unsigned j = 0; j < sel.q; ++j) {
            auto v = sel.select(j, pt({b}), {});
            REQUIRE(v);
            vals.push_back(*v);
        }
        sort_dedup_points(vals);
        REQUIRE(vals.size() == fr.points.size());
        for (std::size_t i = 0; i < vals.size(); ++i) CHECK(point_eq(vals[i], fr.points[i]));
    }

    // non-injective input is rejected
    UFSS bad = u;
    bad.injective_flag = false;
    DecompositionResult dec2;
    dec2.add_piece(bad, {});
    CHECK_THROWS_AS(ufss_to_choice(dec2), ContractViolation);
}

TEST_CASE("selection repeats the smallest element on short fibers") {
    // z^2 = b has 2 roots at b = 4 but only one at b = 0
    ParamPoly eq(1, 0);
    eq.set_coeff(oi({2}), rf_const(1, 1));
    eq.set_coeff(oi({0}), rf_x(1, 0, -1));
    UFSS u;
    u.m = 1;
    u.k = 0;
    u.l = 1;
    u.Z = simple_descriptor(1, 0, eq);
    u.S = model1({0, 4});
    u.X = make_explicit_x(1, 0, u.S);
    u.injective_flag = true;
    FiberSelection sel{u, 2};
    auto v0 = sel.select(0, pt({0}), {});
    auto v1 = sel.select(1, pt({0}), {});
    REQUIRE(v0);
    REQUIRE(v1);
    CHECK(point_eq(*v0, *v1));
    CHECK((*v0)[0] == AlgebraicReal(0));
}

TEST_CASE("small model derivation chains validate structurally") {
    auto S = model1({-1, 1});
    auto img = make_image_model(S, {RatFunc(Poly::variable(1, 0) * Poly::variable(1, 0))});
    CHECK(derivation_chain_valid(*img));
    auto prod = make_product_model(S, img);
    CHECK(derivation_chain_valid(*prod));
    auto sub = make_subset_model(S, {pt({1})});
    CHECK(derivation_chain_valid(*sub));
    CHECK_THROWS_AS(make_subset_model(S, {pt({5})}), ContractViolation);

    // tampered image model fails the walk
    SmallSetModel broken = *img;
    broken.points.push_back(pt({9}));
    std::string why;
    CHECK_FALSE(derivation_chain_valid(broken, &why));
    CHECK_FALSE(why.empty());
}
