#pragma once

// Sampling-based exact verification. Every check compares algebraic values
// exactly; failures always carry a printable witness.

#include <string>
#include <vector>

#include "ufss/cells.hpp"
#include "ufss/engines/linear.hpp"
#include "ufss/ufss.hpp"
#include "ufss/verification/grid.hpp"

namespace ufss {

struct VerificationReport {
    struct Check {
        std::string name;
        bool pass = true;
        std::string witness;
    };
    std::vector<Check> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void ok(const std::string& name) { checks.push_back({name, true, ""}); }
    void fail(const std::string& name, const std::string& witness) {
        checks.push_back({name, false, witness});
    }
};

namespace detail_verify {

inline std::string point_str(const Point& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
    return s + ")";
}

inline bool contains_point(const std::vector<Point>& set, const Point& p) {
    for (const auto& q : set)
        if (point_eq(q, p)) return true;
    return false;
}

}  // namespace detail_verify

// ---------------------------------------------------------------------------
// family-level checks

// Exact equality of the original family's union with the decomposition's
// union at every grid point.
inline VerificationReport verify_union(const UFSS& original, const DecompositionResult& dec,
                                       const SampleGrid& grid) {
    VerificationReport rep;
    for (const auto& a : grid.points()) {
        UnionResult orig = total_fiber_union(original, a);
        if (orig.degenerate) {
            rep.fail("union@" + detail_verify::point_str(a), "degenerate fiber in the input family");
            return rep;
        }
        UnionResult got = decomposition_union(dec, a);
        if (got.degenerate) {
            rep.fail("union@" + detail_verify::point_str(a), "degenerate fiber in a piece");
            return rep;
        }
        for (const auto& p : orig.points)
            if (!detail_verify::contains_point(got.points, p)) {
                rep.fail("union@" + detail_verify::point_str(a),
                         "missing value " + detail_verify::point_str(p));
                return rep;
            }
        for (const auto& p : got.points)
            if (!detail_verify::contains_point(orig.points, p)) {
                rep.fail("union@" + detail_verify::point_str(a),
                         "extraneous value " + detail_verify::point_str(p));
                return rep;
            }
    }
    rep.ok("union on " + std::to_string(grid.points().size()) + " samples");
    return rep;
}

// Disjointness of fibers over distinct index points, per piece and sample.
inline VerificationReport verify_injectivity(const DecompositionResult& dec, const SampleGrid& grid) {
    VerificationReport rep;
    auto check_piece = [&](const UFSS& u, std::size_t idx) {
        for (const auto& a : grid.points()) {
            auto xf = x_fiber(*u.X, a);
            std::vector<FiberResult> fibers;
            for (const auto& b : xf) fibers.push_back(fiber(u.Z, b, a));
            for (std::size_t i = 0; i < xf.size(); ++i)
                for (std::size_t j = i + 1; j < xf.size(); ++j)
                    for (const auto& p : fibers[i].points)
                        if (detail_verify::contains_point(fibers[j].points, p)) {
                            rep.fail("injectivity piece " + std::to_string(idx),
                                     "at a=" + detail_verify::point_str(a) + " indices " +
                                         detail_verify::point_str(xf[i]) + " and " +
                                         detail_verify::point_str(xf[j]) + " share " +
                                         detail_verify::point_str(p));
                            return false;
                        }
        }
        return true;
    };
    bool all = true;
    for (std::size_t i = 0; i < dec.pieces.size() && all; ++i) all = check_piece(dec.pieces[i], i);
    for (std::size_t i = 0; i < dec.fallback_pieces.size() && all; ++i)
        all = check_piece(dec.fallback_pieces[i], dec.pieces.size() + i);
    if (all) rep.ok("injectivity of " + std::to_string(dec.total_pieces()) + " pieces");
    return rep;
}

// Index fibers lie inside the attached model and all derivation chains are
// well formed.
inline VerificationReport verify_small_containment(const DecompositionResult& dec,
                                                   const SampleGrid& grid) {
    VerificationReport rep;
    auto check_piece = [&](const UFSS& u, std::size_t idx) {
        std::string why;
        if (!derivation_chain_valid(*u.S, &why)) {
            rep.fail("derivation piece " + std::to_string(idx), why);
            return false;
        }
        for (const auto& a : grid.points()) {
            if (a.size() != u.k) continue;
            for (const auto& b : x_fiber(*u.X, a))
                if (!u.S->contains(b)) {
                    rep.fail("containment piece " + std::to_string(idx),
                             "index point " + detail_verify::point_str(b) + " at a=" +
                                 detail_verify::point_str(a) + " is outside the model");
                    return false;
                }
        }
        return true;
    };
    bool all = true;
    for (std::size_t i = 0; i < dec.pieces.size() && all; ++i) all = check_piece(dec.pieces[i], i);
    for (std::size_t i = 0; i < dec.fallback_pieces.size() && all; ++i)
        all = check_piece(dec.fallback_pieces[i], dec.pieces.size() + i);
    if (all) rep.ok("containment of " + std::to_string(dec.total_pieces()) + " pieces");
    return rep;
}

// ---------------------------------------------------------------------------
// reference oracle

// Pointwise reference decomposition: per sample, every root of the family
// union is assigned to its lexicographically least owner among the index
// points. No uniformity in the parameter; pure enumeration.
struct BruteForceAssignment {
    struct Sample {
        Point a;
        bool degenerate = false;
        std::vector<std::pair<Point, Point>> root_owner;  // sorted by root
    };
    std::vector<Sample> samples;

    std::vector<Point> cover(std::size_t i) const {
        std::vector<Point> out;
        for (const auto& [root, owner] : samples[i].root_owner) out.push_back(root);
        return out;
    }
};

inline BruteForceAssignment brute_force_decompose(const UFSS& u, const SampleGrid& grid) {
    BruteForceAssignment out;
    for (const auto& a : grid.points()) {
        BruteForceAssignment::Sample s;
        s.a = a;
        auto xf = x_fiber(*u.X, a);
        for (const auto& b : xf) {
            FiberResult f = fiber(u.Z, b, a);
            if (f.degenerate) {
                s.degenerate = true;
                break;
            }
            for (const auto& c : f.points) {
                bool seen = false;
                for (auto& [root, owner] : s.root_owner)
                    if (point_eq(root, c)) {
                        if (point_less(b, owner)) owner = b;
                        seen = true;
                        break;
                    }
                if (!seen) s.root_owner.emplace_back(c, b);
            }
        }
        std::sort(s.root_owner.begin(), s.root_owner.end(),
                  [](const auto& x, const auto& y) { return point_less(x.first, y.first); });
        out.samples.push_back(std::move(s));
    }
    return out;
}

// Exact agreement of the symbolic decomposition's cover with the reference
// assignment at every sample.
inline VerificationReport verify_oracle_equivalence(const UFSS& u, const DecompositionResult& dec,
                                                    const SampleGrid& grid) {
    VerificationReport rep;
    BruteForceAssignment bf = brute_force_decompose(u, grid);
    auto pts = grid.points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (bf.samples[i].degenerate) {
            rep.fail("oracle@" + detail_verify::point_str(pts[i]), "degenerate reference fiber");
            return rep;
        }
        auto expect = bf.cover(i);
        UnionResult got = decomposition_union(dec, pts[i]);
        if (got.degenerate || expect.size() != got.points.size()) {
            rep.fail("oracle@" + detail_verify::point_str(pts[i]),
                     "cover sizes " + std::to_string(expect.size()) + " vs " +
                         std::to_string(got.points.size()));
            return rep;
        }
        for (std::size_t j = 0; j < expect.size(); ++j)
            if (!point_eq(expect[j], got.points[j])) {
                rep.fail("oracle@" + detail_verify::point_str(pts[i]),
                         "mismatch at " + detail_verify::point_str(expect[j]));
                return rep;
            }
    }
    rep.ok("oracle equivalence on " + std::to_string(pts.size()) + " samples");
    return rep;
}

// ---------------------------------------------------------------------------
// recursion traces

inline VerificationReport verify_termination_trace(const RecursionTrace& trace) {
    VerificationReport rep;
    for (const auto& step : trace.steps) {
        if (step.kind == TraceStep::Kind::RECURSE) {
            if (!measure_strictly_decreases(step.before, step.after)) {
                rep.fail("descent step " + step.rule,
                         "measure did not decrease: k " + std::to_string(step.before.k) + "->" +
                             std::to_string(step.after.k));
                return rep;
            }
        } else if (step.kind == TraceStep::Kind::COLLISION_PAIR) {
            if (step.q_order.k() != step.r_order.k() || !precedes(step.r_order, step.q_order)) {
                rep.fail("collision pair order",
                         to_string(step.r_order) + " does not precede " + to_string(step.q_order));
                return rep;
            }
        }
    }
    std::uint64_t bound = static_cast<std::uint64_t>(trace.initial.k) + 1;
    if (trace.initial.alpha) bound += sigma_inv(*trace.initial.alpha);
    if (trace.max_depth > bound) {
        rep.fail("depth bound", std::to_string(trace.max_depth) + " exceeds " + std::to_string(bound));
        return rep;
    }
    rep.ok("termination trace (" + std::to_string(trace.steps.size()) + " steps, depth " +
           std::to_string(trace.max_depth) + ")");
    return rep;
}

// ---------------------------------------------------------------------------
// choice-style checks

// Definition-level checks of a choice decomposition against an exactly
// evaluable target: image cover, per-piece injectivity and containment.
template <typename TargetFn, typename MemberFn>
VerificationReport verify_choice(TargetFn target_values, MemberFn member, ModelPtr S,
                                 const ChoiceDecomposition& dec, const SampleGrid& grid) {
    VerificationReport rep;
    for (const auto& a : grid.points()) {
        std::vector<Point> expect;
        for (const auto& g : S->points)
            if (member(g, a)) expect.push_back(target_values(g, a));
        sort_dedup_points(expect);

        std::vector<Point> got;
        for (const auto& piece : dec.pieces) {
            auto xf = x_fiber(*piece.X, a);
            std::vector<Point> values;
            for (const auto& t : xf) {
                auto v = piece.h.eval(t, a);
                if (!v) continue;
                if (!piece.Y->contains(t)) {
                    rep.fail("choice containment", "index " + detail_verify::point_str(t) +
                                                       " at a=" + detail_verify::point_str(a) +
                                                       " outside its small set");
                    return rep;
                }
                values.push_back(*v);
            }
            // injectivity of the piece map on its index fiber
            std::vector<Point> dedup = values;
            sort_dedup_points(dedup);
            if (dedup.size() != values.size()) {
                rep.fail("choice injectivity",
                         "piece map collides at a=" + detail_verify::point_str(a));
                return rep;
            }
            for (auto& v : values) got.push_back(std::move(v));
        }
        sort_dedup_points(got);
        if (expect.size() != got.size()) {
            rep.fail("choice cover@" + detail_verify::point_str(a),
                     "sizes " + std::to_string(expect.size()) + " vs " + std::to_string(got.size()));
            return rep;
        }
        for (std::size_t i = 0; i < expect.size(); ++i)
            if (!point_eq(expect[i], got[i])) {
                rep.fail("choice cover@" + detail_verify::point_str(a),
                         "mismatch at " + detail_verify::point_str(expect[i]));
                return rep;
            }
    }
    rep.ok("choice checks on " + std::to_string(grid.points().size()) + " samples");
    return rep;
}

inline VerificationReport verify_choice_linear(const AffineMapDescriptor& h, ModelPtr S,
                                               const ChoiceDecomposition& dec,
                                               const SampleGrid& grid) {
    return verify_choice(
        [&](const Point& g, const Point& a) { return h.eval(g, a); },
        [&](const Point& g, const Point& a) { return !fiber(h.domain, g, a).points.empty(); }, S,
        dec, grid);
}

inline VerificationReport verify_choice_cells(const std::vector<RegularCellDescriptor>& cells,
                                              const PolyMap& h, ModelPtr S,
                                              const ChoiceDecomposition& dec,
                                              const SampleGrid& grid) {
    auto member = [&](const Point& g, const Point& a) {
        Point ga = g;
        ga.insert(ga.end(), a.begin(), a.end());
        for (const auto& c : cells)
            if (c.contains(ga)) return true;
        return false;
    };
    auto target = [&](const Point& g, const Point& a) {
        Point ga = g;
        ga.insert(ga.end(), a.begin(), a.end());
        return h.eval(ga);
    };
    return verify_choice(target, member, S, dec, grid);
}

}  // namespace ufss
