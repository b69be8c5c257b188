#pragma once

// Semialgebraic set descriptors in solved form: per fiber coordinate one
// primary polynomial equation (plus optional filter equations), strict
// inequalities over the whole point, ambient sign/equality conditions and
// non-vanishing guards over the (base, parameter) block. A descriptor may
// additionally select a single indexed root per coordinate, and may exclude
// parameters at which a primary equation collapses to zero.

#include <optional>
#include <vector>

#include "ufss/errors.hpp"
#include "ufss/param_poly.hpp"
#include "ufss/poly.hpp"
#include "ufss/root_isolation.hpp"

namespace ufss {

struct AmbientCond {
    enum class Rel { EQ, NE, GT, LT };
    Poly p;  // over m + k variables
    Rel rel = Rel::EQ;
};

inline bool ambient_holds(const AmbientCond& c, const Point& ba) {
    int s = c.p.sign_at(ba);
    switch (c.rel) {
        case AmbientCond::Rel::EQ: return s == 0;
        case AmbientCond::Rel::NE: return s != 0;
        case AmbientCond::Rel::GT: return s > 0;
        case AmbientCond::Rel::LT: return s < 0;
    }
    return false;
}

struct ZEquation {
    unsigned z_coord = 0;
    ParamPoly p;  // base m, params k, single z
};

struct DefSetDescriptor {
    unsigned m = 0, k = 0, l = 1;
    std::vector<ZEquation> equations;  // first per coordinate is primary
    std::vector<Poly> strict;          // over m+k+l, each required > 0
    std::vector<AmbientCond> ambient;  // over m+k
    std::vector<RatFunc> guards;       // over m+k, each required != 0
    std::vector<std::optional<unsigned>> selectors;  // per coordinate, optional
    bool exclude_degenerate = false;
};

struct FiberResult {
    bool degenerate = false;
    std::vector<Point> points;  // sorted lexicographically
};

namespace detail {
inline Point concat(const Point& a, const Point& b) {
    Point r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}
}  // namespace detail

// The exact fiber {c : all equations hold, strict conditions hold} over a
// fixed (b, a). Degenerate means some primary equation vanished identically
// in its coordinate while the point is inside the ambient domain.
inline FiberResult fiber(const DefSetDescriptor& Z, const Point& b, const Point& a) {
    if (b.size() != Z.m || a.size() != Z.k) throw DimensionError("fiber arity mismatch");
    FiberResult res;
    Point ba = detail::concat(b, a);
    for (const auto& g : Z.guards) {
        auto s = g.sign_at(ba);
        if (!s || *s == 0) return res;
    }
    for (const auto& c : Z.ambient)
        if (!ambient_holds(c, ba)) return res;

    std::vector<std::vector<AlgebraicReal>> coord_roots(Z.l);
    for (unsigned zc = 0; zc < Z.l; ++zc) {
        const ZEquation* primary = nullptr;
        std::vector<const ZEquation*> filters;
        for (const auto& eq : Z.equations) {
            if (eq.z_coord != zc) continue;
            if (!primary)
                primary = &eq;
            else
                filters.push_back(&eq);
        }
        if (!primary) {
            res.degenerate = true;
            return res;
        }
        auto zc_coeffs = primary->p.z_coeffs_at(b, a);
        if (!zc_coeffs) return res;  // coefficient undefined: outside domain
        bool all_zero = true;
        for (const auto& c : *zc_coeffs) all_zero = all_zero && c.sign() == 0;
        if (all_zero) {
            if (Z.exclude_degenerate) return res;  // excluded from the family
            res.degenerate = true;
            return res;
        }
        auto roots = isolate_roots_algebraic(*zc_coeffs);
        std::vector<AlgebraicReal> kept;
        for (const auto& r : roots) {
            bool ok = true;
            for (const auto* f : filters) {
                auto v = f->p.eval(b, a, r);
                if (!v || v->sign() != 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) kept.push_back(r);
        }
        if (zc < Z.selectors.size() && Z.selectors[zc]) {
            unsigned j = *Z.selectors[zc];
            if (kept.empty())
                kept.clear();
            else
                kept = {kept[j < kept.size() ? j : 0]};
        }
        coord_roots[zc] = std::move(kept);
    }

    // cartesian product of per-coordinate roots
    std::vector<Point> cands{Point{}};
    for (unsigned zc = 0; zc < Z.l; ++zc) {
        std::vector<Point> next;
        for (const auto& base : cands)
            for (const auto& r : coord_roots[zc]) {
                Point t = base;
                t.push_back(r);
                next.push_back(std::move(t));
            }
        cands = std::move(next);
        if (cands.empty()) break;
    }

    for (auto& c : cands) {
        bool ok = true;
        Point bac = detail::concat(ba, c);
        for (const auto& s : Z.strict) {
            if (s.sign_at(bac) <= 0) {
                ok = false;
                break;
            }
        }
        if (ok) res.points.push_back(std::move(c));
    }
    sort_dedup_points(res.points);
    return res;
}

// Convenience for l = 1 descriptors built from a single equation.
inline DefSetDescriptor simple_descriptor(unsigned m, unsigned k, ParamPoly p) {
    DefSetDescriptor d;
    d.m = m;
    d.k = k;
    d.l = 1;
    d.equations.push_back(ZEquation{0, std::move(p)});
    return d;
}

}  // namespace ufss
