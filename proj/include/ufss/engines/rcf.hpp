#pragma once

// The main decomposition over real closed field data. Families in solved
// form (one polynomial equation, no strict conditions, one fiber variable)
// are decomposed into finitely many injective pieces by a recursion that
// descends on (parameter count, leading support index):
//
//   1. case split on the pointwise leading index and division by its
//      coefficient (guards recorded),
//   2. lift to the coefficient space: the model is mapped through the
//      coefficient functions, turning the family into a generic one whose
//      base coordinates are the coefficients themselves,
//   3. split off the members whose fibers meet no other member's fiber
//      (already injective), cover the leftover private roots of colliding
//      members by per-pair sign-split pieces, and route the shared roots
//      through the pair family of the coefficient differences, whose leading
//      index strictly precedes the current one,
//   4. pairs whose difference polynomial vanishes identically in the fiber
//      variable are handled by solving one parameter coordinate and
//      recursing with one parameter fewer, or by explicit per-sample pieces
//      on the configured grid when no coordinate is solvable.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "ufss/root_isolation.hpp"
#include "ufss/ufss.hpp"
#include "ufss/verification/grid.hpp"

namespace ufss {

struct RcfOptions {
    std::optional<SampleGrid> fallback_grid;
};

// ---------------------------------------------------------------------------
// leading-coefficient case analysis

struct LeadingCase {
    OrderIndex index;
    ParamPoly divided;              // support truncated to <= index, coefficient 1 there
    std::vector<RatFunc> vanish;    // higher coefficients: required = 0
    std::vector<RatFunc> nonzero;   // case coefficient: required != 0 (empty if vacuous)
};

namespace detail_rcf {

// A rational function that provably never vanishes on real points
// (univariate numerator without real roots, or a nonzero constant).
inline bool never_vanishes(const RatFunc& f) {
    const Poly& num = f.numer();
    if (num.is_zero()) return false;
    if (num.is_constant()) return true;
    unsigned used = 0, var = 0;
    for (const auto& [e, c] : num.terms())
        for (unsigned i = 0; i < e.size(); ++i)
            if (e[i] != 0) {
                if (used == 0 || var == i) {
                    used = 1;
                    var = i;
                } else {
                    return false;  // multivariate: undecided
                }
            }
    if (used == 0) return true;
    std::vector<std::optional<Rational>> bind(num.num_vars());
    for (unsigned i = 0; i < num.num_vars(); ++i)
        if (i != var) bind[i] = Rational(0);
    QPoly u = num.bind(bind).as_univariate(0);
    if (u.degree() < 1) return !u.is_zero();
    return isolate_roots(u).empty();
}

}  // namespace detail_rcf

// One case per support index, highest first: all higher coefficients
// vanish, this one does not, and the polynomial is divided through by it. Cases whose vanishing conditions are unsatisfiable
// over the reals are dropped.
inline std::vector<LeadingCase> normalize_leading(const ParamPoly& p) {
    if (p.is_zero()) throw DomainError("leading-case analysis of the zero polynomial");
    auto support = p.support();
    std::vector<LeadingCase> out;
    for (auto it = support.rbegin(); it != support.rend(); ++it) {
        LeadingCase c;
        c.index = *it;
        bool impossible = false;
        for (auto jt = support.rbegin(); jt != it; ++jt) {
            const RatFunc f = p.coeff(*jt);
            if (detail_rcf::never_vanishes(f)) {
                impossible = true;
                break;
            }
            c.vanish.push_back(f);
        }
        if (impossible) continue;
        RatFunc lead = p.coeff(*it);
        if (!detail_rcf::never_vanishes(lead)) c.nonzero.push_back(lead);
        c.divided = p.truncate_above(*it).divide_by(lead);
        out.push_back(std::move(c));
    }
    return out;
}

// ---------------------------------------------------------------------------
// coefficient-space lift

struct LiftResult {
    DefSetDescriptor Z0;                 // generic family over the coefficient space
    ModelPtr S0;
    XPtr X0;
    std::vector<RatFunc> coeff_map;      // ordered by increasing support rank
    std::vector<OrderIndex> support;     // same order; last entry is the leading index
    ParamPoly generic;                   // sum of x_r y^i z^j over the support
};

// The generic polynomial of a support set over fresh base coordinates.
inline ParamPoly generic_of_support(const std::vector<OrderIndex>& support, unsigned k) {
    ParamPoly g(static_cast<unsigned>(support.size()), k);
    for (std::size_t r = 0; r < support.size(); ++r)
        g.set_coeff(support[r], RatFunc(Poly::variable(static_cast<unsigned>(support.size()),
                                                       static_cast<unsigned>(r))));
    return g;
}

inline LiftResult lift_to_coefficient_space(const ParamPoly& p, ModelPtr S, XPtr X) {
    auto ls = leading_support(p);
    LiftResult out;
    out.support = ls.support;  // map iteration order: increasing
    for (const auto& idx : out.support) out.coeff_map.push_back(p.coeff(idx));
    out.generic = generic_of_support(out.support, p.param_vars());
    out.Z0 = simple_descriptor(static_cast<unsigned>(out.support.size()), p.param_vars(), out.generic);
    out.Z0.exclude_degenerate = true;
    out.S0 = make_image_model(S, out.coeff_map);
    out.X0 = make_image_x(X, out.coeff_map);
    return out;
}

// ---------------------------------------------------------------------------
// collision split

struct SplitResult {
    UFSS injective_piece;              // members alone in their collision class
    std::vector<UFSS> residual_pieces; // private roots of colliding members
    // pair family of coefficient differences (empty when the model is small)
    bool has_pairs = false;
    UFSS u1_instance;                  // equation r over doubled base, to recurse on
    UFSS v1_inner;                     // shared-root family, restriction target
    ParamPoly r;                       // difference polynomial over doubled base
    ModelPtr S00;
    std::vector<std::pair<Point, Point>> pairs;  // ordered distinct model pairs kept
};

namespace detail_rcf {

// order of the concrete fiber polynomial at a model point: the largest
// support index whose coordinate is nonzero
inline std::optional<OrderIndex> concrete_order(const std::vector<OrderIndex>& support, const Point& d) {
    for (std::size_t r = support.size(); r-- > 0;)
        if (d[r].sign() != 0) return support[r];
    return std::nullopt;
}

// Sound non-collision test: the z-resultant of the pair's concrete fiber
// polynomial with the difference polynomial is a nonzero constant. Rational
// coordinates only; anything undecided keeps the pair.
inline bool pair_never_collides(const std::vector<OrderIndex>& support, unsigned k,
                                const Point& d1, const Point& d2) {
    for (const auto& c : d1)
        if (!c.is_rational()) return false;
    for (const auto& c : d2)
        if (!c.is_rational()) return false;
    // polynomials in (y_1..y_k, z)
    Poly q1(k + 1), diff(k + 1);
    for (std::size_t r = 0; r < support.size(); ++r) {
        auto e = support[r].as_tuple();
        q1.add_term(e, d1[r].rational_value());
        diff.add_term(e, d1[r].rational_value() - d2[r].rational_value());
    }
    if (diff.is_zero() || q1.is_zero()) return false;
    if (diff.degree_in(k) == 0 && q1.degree_in(k) == 0) return false;
    Poly res = (diff.degree_in(k) == 0)
                   ? diff  // z-free difference: collisions need diff(a) = 0
                   : detail::resultant_in_var(q1, diff, k);
    if (res.is_zero()) return false;
    if (res.is_constant()) return true;
    // univariate resultant without real roots also excludes collisions
    unsigned used_var = 0;
    int nvars_used = 0;
    for (const auto& [e, c] : res.terms())
        for (unsigned i = 0; i < e.size(); ++i)
            if (e[i] != 0 && (nvars_used == 0 || used_var == i)) {
                nvars_used = 1;
                used_var = i;
            } else if (e[i] != 0) {
                return false;
            }
    std::vector<std::optional<Rational>> bind(res.num_vars());
    for (unsigned i = 0; i < res.num_vars(); ++i)
        if (i != used_var) bind[i] = Rational(0);
    QPoly u = res.bind(bind).as_univariate(0);
    if (u.degree() < 1) return !u.is_zero();
    return isolate_roots(u).empty();
}

inline Poly full_poly_of_support(const std::vector<OrderIndex>& support, unsigned m, unsigned k,
                                 bool second_block_negated) {
    // sum over support of (x_r - x_{|I|+r}) y^i z^j as a polynomial over
    // (m base, k params, 1 fiber) variables, m = 2 |support|
    const unsigned half = static_cast<unsigned>(support.size());
    Poly out(m + k + 1);
    for (unsigned r = 0; r < half; ++r) {
        Poly::Exponents e(m + k + 1, 0);
        const auto& idx = support[r];
        for (unsigned i = 0; i < k; ++i) e[m + i] = idx.y_exp[i];
        e[m + k] = idx.z_deg;
        Poly::Exponents e1 = e;
        e1[r] = 1;
        out.add_term(e1, Rational(1));
        if (second_block_negated) {
            Poly::Exponents e2 = e;
            e2[half + r] = 1;
            out.add_term(e2, Rational(-1));
        }
    }
    return out;
}

}  // namespace detail_rcf

inline SplitResult split_injective_part(const LiftResult& lift) {
    SplitResult out;
    const unsigned half = static_cast<unsigned>(lift.support.size());
    const unsigned k = lift.Z0.k;
    auto z0 = std::make_shared<DefSetDescriptor>(lift.Z0);

    // members alone in their collision class over the lifted model
    auto alone = std::make_shared<Predicate>();
    alone->kind = Predicate::Kind::ALONE_IN_FAMILY;
    alone->z = z0;
    alone->co_members = lift.S0;
    out.injective_piece.m = half;
    out.injective_piece.k = k;
    out.injective_piece.l = 1;
    out.injective_piece.Z = lift.Z0;
    out.injective_piece.S = lift.S0;
    out.injective_piece.X = make_filtered_x(lift.X0, alone);
    out.injective_piece.injective_flag = true;

    if (lift.S0->points.size() < 2) return out;

    out.S00 = make_product_model(lift.S0, lift.S0);
    // difference polynomial over the doubled base
    std::vector<unsigned> shift(half);
    for (unsigned r = 0; r < half; ++r) shift[r] = half + r;
    ParamPoly q1 = lift.generic.embed_base(2 * half, ParamPoly::identity_map(half));
    ParamPoly q2 = lift.generic.embed_base(2 * half, shift);
    out.r = q1 - q2;

    // kept ordered pairs (collision not excluded)
    for (const auto& d1 : lift.S0->points)
        for (const auto& d2 : lift.S0->points) {
            if (point_eq(d1, d2)) continue;
            if (detail_rcf::pair_never_collides(lift.support, k, d1, d2)) continue;
            out.pairs.emplace_back(d1, d2);
        }
    if (out.pairs.empty()) return out;
    out.has_pairs = true;

    auto first_in_x0 = std::make_shared<Predicate>();
    first_in_x0->kind = Predicate::Kind::BLOCK_IN_X;
    first_in_x0->x0 = lift.X0;
    first_in_x0->block_offset = 0;
    first_in_x0->block_len = half;

    auto distinct = std::make_shared<Predicate>();
    distinct->kind = Predicate::Kind::PAIR_DISTINCT;

    auto collide = std::make_shared<Predicate>();
    collide->kind = Predicate::Kind::PAIR_COLLIDES;
    collide->z = z0;

    // residual pieces: per kept pair, the roots of the first member's fiber
    // polynomial on which the difference polynomial is nonzero, split by sign
    ParamPoly q1_only = q1;
    Poly rfull = detail_rcf::full_poly_of_support(lift.support, 2 * half, k, true);
    for (const auto& [d1, d2] : out.pairs) {
        Point pairpt = d1;
        pairpt.insert(pairpt.end(), d2.begin(), d2.end());
        ModelPtr pair_model = make_subset_model(out.S00, {pairpt});
        for (int sgn = 0; sgn < 2; ++sgn) {
            UFSS piece;
            piece.m = 2 * half;
            piece.k = k;
            piece.l = 1;
            piece.Z = simple_descriptor(2 * half, k, q1_only);
            piece.Z.exclude_degenerate = true;
            piece.Z.strict.push_back(sgn == 0 ? rfull : -rfull);
            piece.S = pair_model;
            auto andp = std::make_shared<Predicate>();
            andp->kind = Predicate::Kind::AND;
            andp->children = {first_in_x0, collide};
            piece.X = make_filtered_x(make_explicit_x(2 * half, k, pair_model), andp);
            piece.injective_flag = true;  // at most one index point per parameter
            out.residual_pieces.push_back(std::move(piece));
        }
    }

    // pair family to recurse on: all roots of the difference polynomial over
    // colliding, nondegenerate pairs
    auto rp = std::make_shared<ParamPoly>(out.r);
    auto r_nondeg = std::make_shared<Predicate>();
    r_nondeg->kind = Predicate::Kind::PAIR_R_NONDEGENERATE;
    r_nondeg->r = rp;

    auto pair_and = std::make_shared<Predicate>();
    pair_and->kind = Predicate::Kind::AND;
    pair_and->children = {distinct, first_in_x0, collide, r_nondeg};
    XPtr x_pairs = make_filtered_x(
        make_product_x(lift.X0, make_explicit_x(half, k, lift.S0)), pair_and);

    out.u1_instance.m = 2 * half;
    out.u1_instance.k = k;
    out.u1_instance.l = 1;
    out.u1_instance.Z = simple_descriptor(2 * half, k, out.r);
    out.u1_instance.Z.exclude_degenerate = true;
    out.u1_instance.S = out.S00;
    out.u1_instance.X = x_pairs;

    // restriction target: the shared roots (difference roots that are also
    // fiber-polynomial roots)
    out.v1_inner = out.u1_instance;
    out.v1_inner.Z.equations.push_back(ZEquation{0, q1});
    return out;
}

// ---------------------------------------------------------------------------
// restriction of an enveloping decomposition to an inner family

namespace detail_rcf {

inline std::vector<std::vector<unsigned>> selector_tuples(const DefSetDescriptor& Z) {
    std::vector<std::vector<unsigned>> tuples{{}};
    for (unsigned zc = 0; zc < Z.l; ++zc) {
        unsigned bound = 1;
        if (!(zc < Z.selectors.size() && Z.selectors[zc])) {
            for (const auto& eq : Z.equations) {
                if (eq.z_coord != zc) continue;
                unsigned dz = 0;
                for (const auto& [idx, f] : eq.p.coeffs())
                    if (idx.z_deg > dz) dz = idx.z_deg;
                bound = std::max(1u, dz);
                break;
            }
        }
        std::vector<std::vector<unsigned>> next;
        for (const auto& base : tuples)
            for (unsigned j = 0; j < bound; ++j) {
                auto t = base;
                t.push_back(j);
                next.push_back(std::move(t));
            }
        tuples = std::move(next);
    }
    return tuples;
}

}  // namespace detail_rcf

// Reduce every piece of the enveloping decomposition to single-root
// selections and keep exactly those whose selected value lies in the inner
// family's union. Requires the inner unions to be covered by the outer ones;
// spot-checked when a grid is supplied.
inline DecompositionResult restrict_sub(const UFSS& inner, const DecompositionResult& outer,
                                        const std::optional<SampleGrid>& check_grid = {}) {
    if (check_grid) {
        for (const auto& a : check_grid->points()) {
            UnionResult in = total_fiber_union(inner, a);
            UnionResult outu = decomposition_union(outer, a);
            if (in.degenerate) continue;
            for (const auto& p : in.points) {
                bool found = false;
                for (const auto& q : outu.points)
                    if (point_eq(p, q)) {
                        found = true;
                        break;
                    }
                if (!found)
                    throw ContractViolation("inner family not contained in the envelope at a sample");
            }
        }
    }
    auto inner_ptr = std::make_shared<UFSS>(inner);
    DecompositionResult out;
    out.trace = outer.trace;
    auto emit = [&](const UFSS& piece, const std::vector<std::string>& tags, bool fallback) {
        for (const auto& tuple : detail_rcf::selector_tuples(piece.Z)) {
            UFSS restricted = piece;
            restricted.Z.selectors.assign(piece.Z.l, std::nullopt);
            for (unsigned zc = 0; zc < piece.Z.l; ++zc) {
                if (zc < piece.Z.selectors.size() && piece.Z.selectors[zc])
                    restricted.Z.selectors[zc] = piece.Z.selectors[zc];
                else
                    restricted.Z.selectors[zc] = tuple[zc];
            }
            auto pred = std::make_shared<Predicate>();
            pred->kind = Predicate::Kind::SELECTOR_IN_UNION;
            pred->self_z = std::make_shared<DefSetDescriptor>(restricted.Z);
            pred->inner = inner_ptr;
            restricted.X = make_filtered_x(piece.X, pred);
            restricted.injective_flag = true;
            std::vector<std::string> t = tags;
            t.push_back(provenance::L35_RESTRICT);
            if (fallback)
                out.add_fallback(std::move(restricted), std::move(t));
            else
                out.add_piece(std::move(restricted), std::move(t));
        }
    };
    for (std::size_t i = 0; i < outer.pieces.size(); ++i)
        emit(outer.pieces[i], outer.provenance[i], false);
    for (std::size_t i = 0; i < outer.fallback_pieces.size(); ++i)
        emit(outer.fallback_pieces[i], outer.fallback_provenance[i], true);
    return out;
}

// ---------------------------------------------------------------------------
// base case: no parameters

// Group the index points by their selected root values and keep the
// lexicographically least representative of each class; one piece per
// selector index.
inline DecompositionResult dedupe_k0(const UFSS& u) {
    if (u.k != 0) throw NormalizationError("dedupe requires a parameter-free family");
    DecompositionResult out;
    out.trace.initial = Measure{0, std::nullopt};
    auto members = x_fiber(*u.X, {});
    std::vector<std::pair<Point, FiberResult>> fibers;
    std::size_t q = 0;
    for (const auto& b : members) {
        FiberResult f = fiber(u.Z, b, {});
        if (f.degenerate) throw ContractViolation("degenerate fiber in a parameter-free family");
        q = std::max(q, f.points.size());
        if (!f.points.empty()) fibers.emplace_back(b, std::move(f));
    }
    for (std::size_t j = 0; j < q; ++j) {
        // group members by the value of the j-th selector
        std::vector<std::pair<Point, Point>> value_rep;  // value -> representative
        for (const auto& [b, f] : fibers) {
            const Point& val = f.points[j < f.points.size() ? j : 0];
            bool found = false;
            for (auto& [v, rep] : value_rep) {
                if (point_eq(v, val)) {
                    if (point_less(b, rep)) rep = b;
                    found = true;
                    break;
                }
            }
            if (!found) value_rep.emplace_back(val, b);
        }
        std::vector<Point> reps;
        for (auto& [v, rep] : value_rep) reps.push_back(rep);
        sort_dedup_points(reps);
        if (reps.empty()) continue;
        UFSS piece = u;
        piece.Z.selectors.assign(u.Z.l, std::nullopt);
        piece.Z.selectors[0] = static_cast<unsigned>(j);
        piece.S = make_subset_model(u.S, reps);
        piece.X = make_explicit_x(u.m, 0, piece.S);
        piece.injective_flag = true;
        out.add_piece(std::move(piece), {provenance::L37_DEDUP});
    }
    return out;
}

// ---------------------------------------------------------------------------
// family transforms: graph push-forward and parameter append

// Augment the base block with the image of a polynomial map on it.
inline UFSS push_graph(const UFSS& u, const PolyMap& f) {
    if (f.arity() != u.m) throw DimensionError("graph map arity mismatch");
    const unsigned extra = static_cast<unsigned>(f.coords.size());
    const unsigned m2 = u.m + extra;
    UFSS out;
    out.m = m2;
    out.k = u.k;
    out.l = u.l;
    out.Z.m = m2;
    out.Z.k = u.k;
    out.Z.l = u.l;
    std::vector<unsigned> base_map(u.m);
    for (unsigned i = 0; i < u.m; ++i) base_map[i] = i;
    for (const auto& eq : u.Z.equations)
        out.Z.equations.push_back(ZEquation{eq.z_coord, eq.p.embed_base(m2, base_map)});
    std::vector<unsigned> full_map(u.m + u.k + u.l);
    for (unsigned i = 0; i < u.m; ++i) full_map[i] = i;
    for (unsigned i = 0; i < u.k + u.l; ++i) full_map[u.m + i] = m2 + i;
    for (const auto& s : u.Z.strict) out.Z.strict.push_back(s.embed(m2 + u.k + u.l, full_map));
    std::vector<unsigned> ba_map(u.m + u.k);
    for (unsigned i = 0; i < u.m; ++i) ba_map[i] = i;
    for (unsigned i = 0; i < u.k; ++i) ba_map[u.m + i] = m2 + i;
    for (const auto& c : u.Z.ambient)
        out.Z.ambient.push_back({c.p.embed(m2 + u.k, ba_map), c.rel});
    for (const auto& g : u.Z.guards) out.Z.guards.push_back(g.embed(m2 + u.k, ba_map));
    // new coordinates are pinned to the graph values
    for (unsigned j = 0; j < extra; ++j) {
        std::vector<unsigned> gmap(u.m);
        for (unsigned i = 0; i < u.m; ++i) gmap[i] = i;
        Poly pin = Poly::variable(m2 + u.k, u.m + j) - f.coords[j].embed(m2 + u.k, gmap);
        out.Z.ambient.push_back({pin, AmbientCond::Rel::EQ});
    }
    out.Z.selectors = u.Z.selectors;
    out.Z.exclude_degenerate = u.Z.exclude_degenerate;

    std::vector<RatFunc> aug;
    for (unsigned i = 0; i < u.m; ++i) aug.push_back(RatFunc(Poly::variable(u.m, i)));
    for (const auto& c : f.coords) aug.push_back(RatFunc(c));
    out.S = make_image_model(u.S, aug);
    out.X = make_image_x(u.X, aug);
    out.injective_flag = u.injective_flag;
    return out;
}

// Augment the parameter block with the image of a polynomial map on (b, a).
inline UFSS append_param(const UFSS& u, const PolyMap& f) {
    if (f.arity() != u.m + u.k) throw DimensionError("parameter map arity mismatch");
    UFSS out = u;
    out.k = u.k + static_cast<unsigned>(f.coords.size());
    out.Z.k = out.k;
    out.Z.equations.clear();
    for (const auto& eq : u.Z.equations) {
        ParamPoly p = eq.p;
        for (std::size_t j = 0; j < f.coords.size(); ++j) p = p.insert_param(u.k + static_cast<unsigned>(j));
        out.Z.equations.push_back(ZEquation{eq.z_coord, std::move(p)});
    }
    // re-embed conditions over (b, a) into (b, a, d) and pin d = f(b, a)
    const unsigned m = u.m, k = u.k, l = u.l, extra = static_cast<unsigned>(f.coords.size());
    std::vector<unsigned> ba_map(m + k);
    for (unsigned i = 0; i < m + k; ++i) ba_map[i] = i;
    out.Z.ambient.clear();
    for (const auto& c : u.Z.ambient) out.Z.ambient.push_back({c.p.embed(m + k + extra, ba_map), c.rel});
    out.Z.guards.clear();
    for (const auto& g : u.Z.guards) out.Z.guards.push_back(g.embed(m + k + extra, ba_map));
    for (unsigned j = 0; j < extra; ++j) {
        Poly pin = Poly::variable(m + k + extra, m + k + j) - f.coords[j].embed(m + k + extra, ba_map);
        out.Z.ambient.push_back({pin, AmbientCond::Rel::EQ});
    }
    std::vector<unsigned> full_map(m + k + l);
    for (unsigned i = 0; i < m + k; ++i) full_map[i] = i;
    for (unsigned i = 0; i < l; ++i) full_map[m + k + i] = m + k + extra + i;
    out.Z.strict.clear();
    for (const auto& s : u.Z.strict) out.Z.strict.push_back(s.embed(m + k + extra + l, full_map));
    out.X = make_param_append_x(u.X, f.coords);
    return out;
}

// ---------------------------------------------------------------------------
// the recursion

namespace detail_rcf {

struct Ctx {
    RcfOptions opts;
    RecursionTrace trace;
};

void rcf_core(const UFSS& u, Ctx& ctx, const std::optional<Measure>& parent,
              const std::string& rule, unsigned depth, DecompositionResult& out);

inline void check_solved_form(const UFSS& u) {
    if (u.l != 1)
        throw NormalizationError("family has more than one fiber coordinate; project first");
    if (!u.Z.strict.empty())
        throw NormalizationError("family has strict conditions; restrict after decomposing the envelope");
    unsigned primaries = 0;
    for (const auto& eq : u.Z.equations)
        if (eq.z_coord == 0) ++primaries;
    if (primaries != 1) throw NormalizationError("family needs exactly one defining equation");
}

// Pins every parameter coordinate to a sample value as ambient conditions.
inline std::vector<AmbientCond> pin_parameters(unsigned m, unsigned k, const Point& a) {
    std::vector<AmbientCond> out;
    for (unsigned i = 0; i < k; ++i) {
        Poly pin = Poly::variable(m + k, m + i) - Poly::constant(m + k, a[i].rational_value());
        out.push_back({pin, AmbientCond::Rel::EQ});
    }
    return out;
}

inline void handle_degenerate_pair(const LiftResult& lift, const SplitResult& split,
                                   const std::pair<Point, Point>& pr, Ctx& ctx,
                                   const Measure& here, unsigned depth, DecompositionResult& out) {
    const unsigned half = static_cast<unsigned>(lift.support.size());
    const unsigned k = lift.Z0.k;
    const auto& [d1, d2] = pr;
    bool rational = true;
    for (const auto& c : d1) rational = rational && c.is_rational();
    for (const auto& c : d2) rational = rational && c.is_rational();

    // coefficient-wise vanishing conditions of the difference polynomial in
    // the fiber variable, as polynomials in the parameters
    std::map<unsigned, Poly> rho;  // z-degree -> polynomial over k params
    if (rational) {
        for (std::size_t t = 0; t < lift.support.size(); ++t) {
            Rational delta = d1[t].rational_value() - d2[t].rational_value();
            if (delta == 0) continue;
            const auto& idx = lift.support[t];
            auto [it, fresh] = rho.emplace(idx.z_deg, Poly(k));
            Poly mono = Poly::constant(k, delta);
            for (unsigned i = 0; i < k; ++i) mono = mono * Poly::variable(k, i).pow(idx.y_exp[i]);
            it->second = it->second + mono;
        }
        for (auto it = rho.begin(); it != rho.end();) {
            if (it->second.is_zero())
                it = rho.erase(it);
            else
                ++it;
        }
        for (const auto& [zd, p] : rho)
            if (p.is_constant() && p.constant_value() != 0) return;  // empty locus
    }

    std::optional<std::pair<unsigned, Poly>> solvable;  // (coordinate, value over the rest)
    if (rational) {
        for (const auto& [zd, p] : rho) {
            for (unsigned t = 0; t < k && !solvable; ++t) {
                if (p.degree_in(t) != 1) continue;
                Poly coeff(k), rest(k);
                for (const auto& [e, c] : p.terms()) {
                    auto e2 = e;
                    if (e[t] == 1) {
                        e2[t] = 0;
                        coeff.add_term(e2, c);
                    } else {
                        rest.add_term(e2, c);
                    }
                }
                if (!coeff.is_constant()) continue;
                Rational uc = coeff.constant_value();
                Poly g = rest * (Rational(-1) / uc);
                // over the remaining k-1 parameters
                std::vector<unsigned> dm(k);
                for (unsigned i = 0; i < k; ++i) dm[i] = i < t ? i : (i == t ? 0 : i - 1);
                solvable = {t, g.embed(k - 1, dm)};
            }
            if (solvable) break;
        }
    }

    if (solvable) {
        auto [t, g] = *solvable;
        ParamPoly substituted = lift.generic.substitute_param(t, g);
        UFSS inst;
        inst.m = half;
        inst.k = k - 1;
        inst.l = 1;
        inst.Z = simple_descriptor(half, k - 1, substituted);
        inst.Z.exclude_degenerate = true;
        // remaining vanishing conditions restrict the reduced parameters
        for (const auto& [zd, p] : rho) {
            Poly sub = p.substitute(t, g.embed(k, [&] {
                std::vector<unsigned> im(k - 1);
                for (unsigned i = 0; i + 1 < k; ++i) im[i] = i < t ? i : i + 1;
                return im;
            }()));
            std::vector<unsigned> dm(k);
            for (unsigned i = 0; i < k; ++i) dm[i] = i < t ? i : (i == t ? 0 : i - 1);
            Poly reduced = sub.embed(k - 1, dm);
            if (reduced.is_zero()) continue;
            std::vector<unsigned> pm(k - 1);
            for (unsigned i = 0; i + 1 < k; ++i) pm[i] = half + i;
            inst.Z.ambient.push_back({reduced.embed(half + k - 1, pm), AmbientCond::Rel::EQ});
        }
        inst.S = make_subset_model(lift.S0, {d1});
        auto v2 = std::make_shared<Predicate>();
        v2->kind = Predicate::Kind::V2_CONTEXT;
        v2->x0 = lift.X0;
        v2->d1 = d1;
        v2->d2 = d2;
        v2->insert_pos = t;
        v2->lift = g;
        v2->r = std::make_shared<ParamPoly>(split.r);
        inst.X = make_filtered_x(make_explicit_x(half, k - 1, inst.S), v2);

        DecompositionResult sub;
        rcf_core(inst, ctx, here, "v2-subst", depth + 1, sub);
        // lift the pieces back: re-insert the solved parameter coordinate
        auto lift_piece = [&](const UFSS& piece, std::vector<std::string> tags, bool fb) {
            UFSS lifted = piece;
            lifted.k = piece.k + 1;
            lifted.Z.k = lifted.k;
            lifted.Z.equations.clear();
            for (const auto& eq : piece.Z.equations)
                lifted.Z.equations.push_back(ZEquation{eq.z_coord, eq.p.insert_param(t)});
            const unsigned m = piece.m;
            std::vector<unsigned> ba_map(m + piece.k);
            for (unsigned i = 0; i < m; ++i) ba_map[i] = i;
            for (unsigned i = 0; i < piece.k; ++i)
                ba_map[m + i] = m + (i < t ? i : i + 1);
            lifted.Z.ambient.clear();
            for (const auto& c : piece.Z.ambient)
                lifted.Z.ambient.push_back({c.p.embed(m + lifted.k, ba_map), c.rel});
            lifted.Z.guards.clear();
            for (const auto& gg : piece.Z.guards)
                lifted.Z.guards.push_back(gg.embed(m + lifted.k, ba_map));
            std::vector<unsigned> full_map(m + piece.k + 1);
            for (unsigned i = 0; i < m + piece.k; ++i) full_map[i] = ba_map[i];
            full_map[m + piece.k] = m + lifted.k;
            lifted.Z.strict.clear();
            for (const auto& s : piece.Z.strict)
                lifted.Z.strict.push_back(s.embed(m + lifted.k + 1, full_map));
            // pin the re-inserted coordinate to the solved value
            std::vector<unsigned> pm(k - 1);
            for (unsigned i = 0; i + 1 < k; ++i) pm[i] = m + (i < t ? i : i + 1);
            Poly pin = Poly::variable(m + lifted.k, m + t) - g.embed(m + lifted.k, pm);
            lifted.Z.ambient.push_back({pin, AmbientCond::Rel::EQ});
            lifted.X = make_param_embed_x(piece.X, t, g);
            tags.push_back(provenance::V2_SUBST);
            tags.push_back(provenance::L310_PARAM);
            if (fb)
                out.add_fallback(std::move(lifted), std::move(tags));
            else
                out.add_piece(std::move(lifted), std::move(tags));
        };
        for (std::size_t i = 0; i < sub.pieces.size(); ++i)
            lift_piece(sub.pieces[i], sub.provenance[i], false);
        for (std::size_t i = 0; i < sub.fallback_pieces.size(); ++i)
            lift_piece(sub.fallback_pieces[i], sub.fallback_provenance[i], true);
        return;
    }

    // no solvable coordinate: explicit per-sample pieces on the grid
    if (!ctx.opts.fallback_grid)
        throw ContractViolation(
            "degenerate collision pair without a solvable coordinate needs a fallback grid");
    ModelPtr pair_model = make_subset_model(lift.S0, {d1});
    for (const auto& a : ctx.opts.fallback_grid->points()) {
        if (a.size() != k) throw DimensionError("fallback grid arity mismatch");
        // the pair's difference polynomial must vanish identically at a
        Point pairpt = d1;
        pairpt.insert(pairpt.end(), d2.begin(), d2.end());
        auto zc = split.r.z_coeffs_at(pairpt, a);
        if (!zc) continue;
        bool all_zero = true;
        for (const auto& c : *zc) all_zero = all_zero && c.sign() == 0;
        if (!all_zero) continue;
        // both members must index the family here
        auto xf = x_fiber(*lift.X0, a);
        bool has1 = false;
        for (const auto& p : xf)
            if (point_eq(p, d1)) has1 = true;
        if (!has1) continue;
        FiberResult f = fiber(lift.Z0, d1, a);
        if (f.degenerate || f.points.empty()) continue;
        UFSS piece;
        piece.m = half;
        piece.k = k;
        piece.l = 1;
        piece.Z = lift.Z0;
        piece.Z.ambient = pin_parameters(half, k, a);
        piece.S = pair_model;
        piece.X = make_explicit_x(half, k, pair_model);
        piece.injective_flag = true;
        out.add_fallback(std::move(piece), {provenance::V2_FALLBACK});
        ctx.trace.steps.push_back(TraceStep{TraceStep::Kind::NOTE, "v2-fallback", depth, {}, {}, {}, {},
                                            "explicit piece at a grid sample"});
    }
}

inline void rcf_core(const UFSS& u, Ctx& ctx, const std::optional<Measure>& parent,
                     const std::string& rule, unsigned depth, DecompositionResult& out) {
    ctx.trace.max_depth = std::max(ctx.trace.max_depth, depth);
    check_solved_form(u);
    if (u.k == 0) {
        if (parent) {
            Measure here{0, std::nullopt};
            ctx.trace.steps.push_back(
                TraceStep{TraceStep::Kind::RECURSE, rule, depth, *parent, here, {}, {}, ""});
        }
        DecompositionResult base = dedupe_k0(u);
        for (std::size_t i = 0; i < base.pieces.size(); ++i)
            out.add_piece(base.pieces[i], base.provenance[i]);
        return;
    }
    const ParamPoly* p = nullptr;
    for (const auto& eq : u.Z.equations)
        if (eq.z_coord == 0 && !p) p = &eq.p;
    if (p->is_zero()) throw ContractViolation("identically degenerate family");

    for (const auto& lc : normalize_leading(*p)) {
        // keep only cases realized by some model point
        auto pred = std::make_shared<Predicate>();
        pred->kind = Predicate::Kind::IN_CASE_DOMAIN;
        pred->vanish = lc.vanish;
        pred->nonzero = lc.nonzero;
        std::vector<Point> realized;
        for (const auto& b : u.S->points)
            if (predicate_holds(*pred, b, {}, 0)) realized.push_back(b);
        if (realized.empty()) continue;

        Measure here{static_cast<int>(u.k), lc.index};
        if (parent)
            ctx.trace.steps.push_back(
                TraceStep{TraceStep::Kind::RECURSE, rule, depth, *parent, here, {}, {}, ""});

        ModelPtr S_case = make_subset_model(u.S, realized);
        XPtr X_case = make_filtered_x(u.X, pred);

        LiftResult lift = lift_to_coefficient_space(lc.divided, S_case, X_case);
        SplitResult split = split_injective_part(lift);

        out.add_piece(split.injective_piece, {provenance::X1_INJECTIVE});
        for (const auto& piece : split.residual_pieces)
            out.add_piece(piece, {provenance::X1_INJECTIVE});

        if (!split.has_pairs) continue;

        // strict order descent of every kept collision pair
        for (const auto& [d1, d2] : split.pairs) {
            auto qo = concrete_order(lift.support, d1);
            Point diff;
            for (std::size_t r = 0; r < d1.size(); ++r) diff.push_back(d1[r] - d2[r]);
            auto ro = concrete_order(lift.support, diff);
            if (qo && ro)
                ctx.trace.steps.push_back(TraceStep{TraceStep::Kind::COLLISION_PAIR, "monic-descent",
                                                    depth, {}, {}, *qo, *ro, ""});
        }

        DecompositionResult sub;
        rcf_core(split.u1_instance, ctx, here, "u1-descent", depth + 1, sub);
        DecompositionResult restricted = restrict_sub(split.v1_inner, sub);
        for (std::size_t i = 0; i < restricted.pieces.size(); ++i) {
            auto tags = restricted.provenance[i];
            tags.push_back(provenance::V1_DESCENT);
            out.add_piece(restricted.pieces[i], std::move(tags));
        }
        for (std::size_t i = 0; i < restricted.fallback_pieces.size(); ++i) {
            auto tags = restricted.fallback_provenance[i];
            tags.push_back(provenance::V1_DESCENT);
            out.add_fallback(restricted.fallback_pieces[i], std::move(tags));
        }

        for (const auto& pr : split.pairs) handle_degenerate_pair(lift, split, pr, ctx, here, depth, out);
    }
}

}  // namespace detail_rcf

// Decompose a family in solved form (single equation, no strict conditions,
// one fiber coordinate) into injective pieces.
inline DecompositionResult rcf_decompose(const UFSS& u, const RcfOptions& opts = {}) {
    detail_rcf::check_solved_form(u);
    detail_rcf::Ctx ctx;
    ctx.opts = opts;
    DecompositionResult out;
    const ParamPoly* p = nullptr;
    for (const auto& eq : u.Z.equations)
        if (eq.z_coord == 0 && !p) p = &eq.p;
    ctx.trace.initial = Measure{static_cast<int>(u.k), p->leading_index()};
    detail_rcf::rcf_core(u, ctx, std::nullopt, "", 0, out);
    out.trace = ctx.trace;
    return out;
}

}  // namespace ufss
