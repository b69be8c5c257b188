#pragma once

// The central family triple (Z, S, X): a solution-set descriptor, a small-set
// model and an index descriptor, together with the conversions between such
// families and choice-style decompositions (graph pieces with indexed-root
// selector maps).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ufss/descriptor.hpp"
#include "ufss/order_index.hpp"
#include "ufss/small_set.hpp"
#include "ufss/x_descriptor.hpp"

namespace ufss {

struct UFSS {
    unsigned m = 0, k = 0, l = 1;
    DefSetDescriptor Z;
    ModelPtr S;
    XPtr X;
    bool injective_flag = false;
};

// ---------------------------------------------------------------------------
// index-fiber evaluation

inline std::vector<Point> x_fiber(const XDescriptor& X, const Point& a) {
    if (a.size() != X.k) throw DimensionError("index fiber arity mismatch");
    switch (X.kind) {
        case XDescriptor::Kind::EXPLICIT: {
            for (const auto& c : X.param_conds)
                if (!ambient_holds(c, a)) return {};
            return X.model->points;
        }
        case XDescriptor::Kind::IMAGE: {
            auto par = x_fiber(*X.parent, a);
            std::vector<Point> out;
            for (const auto& p : par) {
                bool ok = true;
                Point im;
                for (const auto& f : X.map) {
                    auto v = f.eval(p);
                    if (!v) {
                        ok = false;
                        break;
                    }
                    im.push_back(*v);
                }
                if (ok) out.push_back(std::move(im));
            }
            sort_dedup_points(out);
            return out;
        }
        case XDescriptor::Kind::PRODUCT: {
            auto lf = x_fiber(*X.left, a);
            auto rf = x_fiber(*X.right, a);
            std::vector<Point> out;
            for (const auto& p : lf)
                for (const auto& q : rf) {
                    Point r = p;
                    r.insert(r.end(), q.begin(), q.end());
                    out.push_back(std::move(r));
                }
            sort_dedup_points(out);
            return out;
        }
        case XDescriptor::Kind::FILTERED: {
            auto par = x_fiber(*X.parent, a);
            std::vector<Point> out;
            for (const auto& p : par)
                if (predicate_holds(*X.pred, p, a, X.k)) out.push_back(p);
            return out;
        }
        case XDescriptor::Kind::PARAM_EMBED: {
            Point rest;
            for (unsigned i = 0; i < X.k; ++i)
                if (i != X.insert_pos) rest.push_back(a[i]);
            AlgebraicReal expected = X.lift.eval_algebraic(rest);
            if (AlgebraicReal::compare(a[X.insert_pos], expected) != 0) return {};
            return x_fiber(*X.parent, rest);
        }
        case XDescriptor::Kind::PARAM_APPEND: {
            unsigned k0 = X.parent->k;
            Point a0(a.begin(), a.begin() + k0);
            Point d(a.begin() + k0, a.end());
            auto par = x_fiber(*X.parent, a0);
            std::vector<Point> out;
            for (const auto& p : par) {
                Point pa = p;
                pa.insert(pa.end(), a0.begin(), a0.end());
                bool ok = true;
                for (std::size_t i = 0; i < X.append_maps.size(); ++i) {
                    AlgebraicReal v = X.append_maps[i].eval_algebraic(pa);
                    if (AlgebraicReal::compare(v, d[i]) != 0) {
                        ok = false;
                        break;
                    }
                }
                if (ok) out.push_back(p);
            }
            return out;
        }
    }
    return {};
}

// Union of all fibers of u over its index fiber at a.
struct UnionResult {
    bool degenerate = false;
    std::vector<Point> points;
};

inline UnionResult total_fiber_union(const UFSS& u, const Point& a) {
    UnionResult res;
    for (const auto& b : x_fiber(*u.X, a)) {
        FiberResult f = fiber(u.Z, b, a);
        if (f.degenerate) {
            res.degenerate = true;
            return res;
        }
        for (auto& p : f.points) res.points.push_back(std::move(p));
    }
    sort_dedup_points(res.points);
    return res;
}

inline bool fibers_intersect(const FiberResult& a, const FiberResult& b) {
    for (const auto& p : a.points)
        for (const auto& q : b.points)
            if (point_eq(p, q)) return true;
    return false;
}

inline bool predicate_holds(const Predicate& pred, const Point& b, const Point& a, unsigned k) {
    switch (pred.kind) {
        case Predicate::Kind::AND: {
            for (const auto& c : pred.children)
                if (!predicate_holds(*c, b, a, k)) return false;
            return true;
        }
        case Predicate::Kind::ALONE_IN_FAMILY: {
            FiberResult own = fiber(*pred.z, b, a);
            if (own.degenerate) return false;
            for (const auto& other : pred.co_members->points) {
                if (point_eq(other, b)) continue;
                FiberResult of = fiber(*pred.z, other, a);
                if (of.degenerate) continue;
                if (fibers_intersect(own, of)) return false;
            }
            return true;
        }
        case Predicate::Kind::PAIR_DISTINCT: {
            std::size_t h = b.size() / 2;
            return !point_eq(Point(b.begin(), b.begin() + h), Point(b.begin() + h, b.end()));
        }
        case Predicate::Kind::PAIR_COLLIDES: {
            std::size_t h = b.size() / 2;
            Point d1(b.begin(), b.begin() + h), d2(b.begin() + h, b.end());
            FiberResult f1 = fiber(*pred.z, d1, a);
            FiberResult f2 = fiber(*pred.z, d2, a);
            if (f1.degenerate || f2.degenerate) return false;
            return fibers_intersect(f1, f2);
        }
        case Predicate::Kind::PAIR_R_NONDEGENERATE:
        case Predicate::Kind::PAIR_R_DEGENERATE: {
            auto zc = pred.r->z_coeffs_at(b, a);
            if (!zc) return false;
            bool all_zero = true;
            for (const auto& c : *zc) all_zero = all_zero && c.sign() == 0;
            return pred.kind == Predicate::Kind::PAIR_R_DEGENERATE ? all_zero : !all_zero;
        }
        case Predicate::Kind::SELECTOR_IN_UNION: {
            FiberResult own = fiber(*pred.self_z, b, a);
            if (own.degenerate || own.points.empty()) return false;
            UnionResult inner = total_fiber_union(*pred.inner, a);
            if (inner.degenerate) return false;
            for (const auto& p : own.points) {
                bool found = false;
                for (const auto& q : inner.points)
                    if (point_eq(p, q)) {
                        found = true;
                        break;
                    }
                if (!found) return false;
            }
            return true;
        }
        case Predicate::Kind::IN_CASE_DOMAIN: {
            for (const auto& f : pred.vanish) {
                auto s = f.sign_at(b);
                if (!s || *s != 0) return false;
            }
            for (const auto& f : pred.nonzero) {
                auto s = f.sign_at(b);
                if (!s || *s == 0) return false;
            }
            return true;
        }
        case Predicate::Kind::FIBER_NONEMPTY: {
            FiberResult f = fiber(*pred.z, b, a);
            return !f.degenerate && !f.points.empty();
        }
        case Predicate::Kind::LEXMIN_CLASS: {
            Point ba = b;
            ba.insert(ba.end(), a.begin(), a.end());
            if (!pred.cell->contains(ba)) return false;
            Point hv = pred.h.eval(ba);
            Point best;
            bool have = false;
            std::size_t class_size = 0;
            for (const auto& y : pred.members->points) {
                Point ya = y;
                ya.insert(ya.end(), a.begin(), a.end());
                if (!pred.cell->contains(ya)) continue;
                if (!point_eq(pred.h.eval(ya), hv)) continue;
                ++class_size;
                if (!have || point_less(y, best)) {
                    best = y;
                    have = true;
                }
            }
            if (class_size > 4096)
                throw ContractViolation("value class exceeds the size cap");
            return have && point_eq(best, b);
        }
        case Predicate::Kind::V2_CONTEXT: {
            Point full;
            for (unsigned i = 0, j = 0; i < k + 1; ++i) {
                if (i == pred.insert_pos)
                    full.push_back(pred.lift.eval_algebraic(a));
                else
                    full.push_back(a[j++]);
            }
            Point pair = pred.d1;
            pair.insert(pair.end(), pred.d2.begin(), pred.d2.end());
            auto zc = pred.r->z_coeffs_at(pair, full);
            if (!zc) return false;
            for (const auto& c : *zc)
                if (c.sign() != 0) return false;
            auto xf = x_fiber(*pred.x0, full);
            for (const auto& p : xf)
                if (point_eq(p, pred.d1)) return true;
            return false;
        }
        case Predicate::Kind::BLOCK_IN_X: {
            Point blk(b.begin() + pred.block_offset, b.begin() + pred.block_offset + pred.block_len);
            auto xf = x_fiber(*pred.x0, a);
            for (const auto& p : xf)
                if (point_eq(p, blk)) return true;
            return false;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// choice-style instances and decompositions

struct ChoiceInstance {
    unsigned n = 0, k = 0, l = 1;
    PolyMap h;  // over n + k variables
    ModelPtr S;
    DefSetDescriptor domain;  // over (g, a); l = 0 fiber part unused
};

// A selector map picks the j-th element of an ordered fiber; a polynomial
// map is a graph. Both act on (b, a).
struct MapDescriptor {
    enum class Kind { POLY, ROOT_SELECTOR };
    Kind kind = Kind::POLY;
    PolyMap poly;                 // POLY
    DefSetDescriptor z;           // ROOT_SELECTOR: fiber source
    unsigned root_index = 0;      // ROOT_SELECTOR
    std::optional<Point> eval(const Point& b, const Point& a) const {
        if (kind == Kind::POLY) {
            Point ba = b;
            ba.insert(ba.end(), a.begin(), a.end());
            return poly.eval(ba);
        }
        FiberResult f = fiber(z, b, a);
        if (f.degenerate || f.points.empty()) return std::nullopt;
        return f.points[root_index < f.points.size() ? root_index : 0];
    }
};

struct ChoicePiece {
    MapDescriptor h;
    XPtr X;
    ModelPtr Y;
};

struct ChoiceDecomposition {
    std::vector<ChoicePiece> pieces;
};

// Indexed-root selection over an injective family: q selectors whose values
// enumerate each fiber, repeating the smallest element on short fibers.
struct FiberSelection {
    UFSS base;
    unsigned q = 0;

    std::optional<Point> select(unsigned j, const Point& b, const Point& a) const {
        FiberResult f = fiber(base.Z, b, a);
        if (f.degenerate || f.points.empty()) return std::nullopt;
        return f.points[j < f.points.size() ? j : 0];
    }
};

// ---------------------------------------------------------------------------
// decomposition results and recursion traces

namespace provenance {
inline constexpr const char* LINEAR = "LINEAR";
inline constexpr const char* LEXMIN = "LEXMIN";
inline constexpr const char* L36_PRODUCT = "L36-PRODUCT";
inline constexpr const char* L35_RESTRICT = "L35-RESTRICT";
inline constexpr const char* L37_DEDUP = "L37-DEDUP";
inline constexpr const char* L39_GRAPH = "L39-GRAPH";
inline constexpr const char* L310_PARAM = "L310-PARAM";
inline constexpr const char* V1_DESCENT = "V1-DESCENT";
inline constexpr const char* V2_SUBST = "V2-SUBST";
inline constexpr const char* V2_FALLBACK = "V2-FALLBACK";
inline constexpr const char* X1_INJECTIVE = "X1-INJECTIVE";
}  // namespace provenance

struct Measure {
    int k = 0;
    std::optional<OrderIndex> alpha;
};

inline bool measure_strictly_decreases(const Measure& parent, const Measure& child) {
    if (child.k < parent.k) return true;
    if (child.k > parent.k) return false;
    if (!parent.alpha || !child.alpha) return false;
    if (parent.alpha->k() != child.alpha->k()) return false;
    return precedes(*child.alpha, *parent.alpha);
}

struct TraceStep {
    enum class Kind { RECURSE, COLLISION_PAIR, NOTE };
    Kind kind = Kind::NOTE;
    std::string rule;
    unsigned depth = 0;
    Measure before, after;           // RECURSE
    OrderIndex q_order, r_order;     // COLLISION_PAIR
    std::string note;
};

struct RecursionTrace {
    Measure initial;
    std::vector<TraceStep> steps;
    unsigned max_depth = 0;
};

struct DecompositionResult {
    std::vector<UFSS> pieces;
    std::vector<std::vector<std::string>> provenance;
    std::vector<UFSS> fallback_pieces;
    std::vector<std::vector<std::string>> fallback_provenance;
    RecursionTrace trace;

    void add_piece(UFSS u, std::vector<std::string> tags) {
        pieces.push_back(std::move(u));
        provenance.push_back(std::move(tags));
    }
    void add_fallback(UFSS u, std::vector<std::string> tags) {
        fallback_pieces.push_back(std::move(u));
        fallback_provenance.push_back(std::move(tags));
    }
    std::size_t total_pieces() const { return pieces.size() + fallback_pieces.size(); }
};

// Union over all pieces (including fallback pieces) at a parameter.
inline UnionResult decomposition_union(const DecompositionResult& dec, const Point& a) {
    UnionResult res;
    auto absorb = [&](const UFSS& u) {
        if (res.degenerate) return;
        UnionResult r = total_fiber_union(u, a);
        if (r.degenerate) {
            res.degenerate = true;
            return;
        }
        for (auto& p : r.points) res.points.push_back(std::move(p));
    };
    for (const auto& u : dec.pieces) absorb(u);
    for (const auto& u : dec.fallback_pieces) absorb(u);
    sort_dedup_points(res.points);
    return res;
}

// ---------------------------------------------------------------------------
// conversions between choice instances and families

// Graph-augmented family of a choice instance: W = {(g, a, h(g,a))} over the
// instance domain, X = domain restricted to S.
inline UFSS choice_to_ufss(const ChoiceInstance& inst) {
    UFSS u;
    u.m = inst.n;
    u.k = inst.k;
    u.l = inst.l;
    u.Z.m = inst.n;
    u.Z.k = inst.k;
    u.Z.l = inst.l;
    u.Z.ambient = inst.domain.ambient;
    u.Z.guards = inst.domain.guards;
    // z_i - h_i(b, a) = 0, expressed with coefficients over the base block
    for (unsigned i = 0; i < inst.l; ++i) {
        ParamPoly eq(inst.n, inst.k);
        OrderIndex zi;
        zi.y_exp.assign(inst.k, 0);
        zi.z_deg = 1;
        eq.set_coeff(zi, RatFunc::constant(inst.n, Rational(1)));
        // expand -h_i into (base, param) monomials
        for (const auto& [e, c] : inst.h.coords[i].terms()) {
            OrderIndex idx;
            idx.y_exp.assign(e.begin() + inst.n, e.end());
            idx.z_deg = 0;
            Poly mono(inst.n);
            Poly::Exponents be(e.begin(), e.begin() + inst.n);
            mono.add_term(be, -c);
            eq.set_coeff(idx, eq.coeff(idx) + RatFunc(mono));
        }
        u.Z.equations.push_back(ZEquation{i, std::move(eq)});
    }
    u.S = inst.S;
    // X = domain ∩ (S x M^k): explicit model filtered by domain membership
    auto member = std::make_shared<Predicate>();
    member->kind = Predicate::Kind::FIBER_NONEMPTY;
    auto zdom = std::make_shared<DefSetDescriptor>(u.Z);
    member->z = zdom;
    u.X = make_filtered_x(make_explicit_x(inst.n, inst.k, inst.S), member);
    return u;
}

// Bound on fiber size along each coordinate: the z-degree of the primary
// equation (1 when a selector is already applied).
inline unsigned fiber_size_bound(const DefSetDescriptor& Z) {
    unsigned bound = 1;
    for (unsigned zc = 0; zc < Z.l; ++zc) {
        if (zc < Z.selectors.size() && Z.selectors[zc]) continue;
        for (const auto& eq : Z.equations) {
            if (eq.z_coord != zc) continue;
            unsigned dz = 0;
            for (const auto& [idx, f] : eq.p.coeffs())
                if (idx.z_deg > dz) dz = idx.z_deg;
            bound *= std::max(1u, dz);
            break;
        }
    }
    return bound;
}

// Split an injective family into q indexed-root graph pieces (the
// choice-side presentation). Requires the injective flag.
inline ChoiceDecomposition ufss_to_choice(const DecompositionResult& dec) {
    ChoiceDecomposition out;
    auto emit = [&](const UFSS& u) {
        if (!u.injective_flag)
            throw ContractViolation("choice conversion requires injective pieces");
        unsigned q = fiber_size_bound(u.Z);
        for (unsigned j = 0; j < q; ++j) {
            ChoicePiece piece;
            piece.h.kind = MapDescriptor::Kind::ROOT_SELECTOR;
            piece.h.z = u.Z;
            piece.h.root_index = j;
            piece.X = u.X;
            piece.Y = u.S;
            out.pieces.push_back(std::move(piece));
        }
    };
    for (const auto& u : dec.pieces) emit(u);
    for (const auto& u : dec.fallback_pieces) emit(u);
    return out;
}

}  // namespace ufss
