#pragma once

// Cells over a coordinate block: each coordinate is either an open interval
// with polynomial bounds in the preceding coordinates or the graph of such a
// polynomial. A cell is open iff it has no graph coordinates; strongly
// regular cells additionally have pairwise distinct coordinates at every
// point. Cells arrive as input data together with regularity tags for the
// map restricted to them.

#include <optional>
#include <vector>

#include "ufss/algebraic_real.hpp"
#include "ufss/errors.hpp"
#include "ufss/poly.hpp"

namespace ufss {

struct PolyMap {
    std::vector<Poly> coords;
    unsigned arity() const { return coords.empty() ? 0 : coords[0].num_vars(); }
    Point eval(const Point& x) const {
        Point out;
        out.reserve(coords.size());
        for (const auto& c : coords) out.push_back(c.eval_algebraic(x));
        return out;
    }
};

struct CellCoord {
    enum class Kind { INTERVAL, GRAPH };
    Kind kind = Kind::INTERVAL;
    // polynomials over the preceding coordinates (embedded in the full
    // ambient arity for convenience; they must not use this or any later
    // coordinate)
    std::optional<Poly> lo, hi;  // INTERVAL: lo < x_i < hi where present
    Poly graph;                  // GRAPH: x_i = graph(...)
};

enum class HRegularity { CONSTANT, STRICT_INC, STRICT_DEC };

struct RegularCellDescriptor {
    unsigned dim = 0;
    std::vector<CellCoord> coords;
    bool regular = true;
    bool strongly_regular = false;
    std::vector<HRegularity> h_regularity;  // per coordinate, for open cells

    bool is_open() const {
        for (const auto& c : coords)
            if (c.kind == CellCoord::Kind::GRAPH) return false;
        return true;
    }

    bool contains(const Point& x) const {
        if (x.size() != dim) throw DimensionError("cell membership arity mismatch");
        for (unsigned i = 0; i < dim; ++i) {
            const auto& c = coords[i];
            if (c.kind == CellCoord::Kind::GRAPH) {
                AlgebraicReal v = c.graph.eval_algebraic(x);
                if (AlgebraicReal::compare(x[i], v) != 0) return false;
            } else {
                if (c.lo) {
                    AlgebraicReal v = c.lo->eval_algebraic(x);
                    if (AlgebraicReal::compare(v, x[i]) >= 0) return false;
                }
                if (c.hi) {
                    AlgebraicReal v = c.hi->eval_algebraic(x);
                    if (AlgebraicReal::compare(x[i], v) >= 0) return false;
                }
            }
        }
        return true;
    }
};

}  // namespace ufss
