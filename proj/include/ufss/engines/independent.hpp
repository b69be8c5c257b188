#pragma once

// Decomposition over a model of independent points: on open strongly regular
// cells the index set keeps, per parameter, the lexicographically least
// member of each value class, which is injective and covers the image. Cells
// with graph coordinates are reduced by projecting the graph coordinate out,
// recursing, and lifting the result back through the graph polynomial.

#include <memory>
#include <vector>

#include "ufss/cells.hpp"
#include "ufss/ufss.hpp"

namespace ufss {

namespace detail_indep {

inline std::vector<unsigned> drop_var_map(unsigned dim, unsigned t) {
    std::vector<unsigned> m(dim);
    for (unsigned i = 0; i < dim; ++i) m[i] = i < t ? i : (i == t ? 0 : i - 1);
    return m;
}

// substitute x_t by its graph polynomial and renumber to dim-1 variables
inline Poly reduce_poly(const Poly& p, unsigned t, const Poly& graph, unsigned dim) {
    Poly s = p.substitute(t, graph);
    return s.embed(dim - 1, drop_var_map(dim, t));
}

inline RegularCellDescriptor reduce_cell(const RegularCellDescriptor& cell, unsigned t) {
    RegularCellDescriptor out;
    out.dim = cell.dim - 1;
    out.regular = cell.regular;
    out.strongly_regular = cell.strongly_regular;
    const Poly& g = cell.coords[t].graph;
    for (unsigned i = 0; i < cell.dim; ++i) {
        if (i == t) continue;
        CellCoord c = cell.coords[i];
        if (c.kind == CellCoord::Kind::GRAPH) {
            c.graph = reduce_poly(c.graph, t, g, cell.dim);
        } else {
            if (c.lo) c.lo = reduce_poly(*c.lo, t, g, cell.dim);
            if (c.hi) c.hi = reduce_poly(*c.hi, t, g, cell.dim);
        }
        out.coords.push_back(std::move(c));
    }
    for (unsigned i = 0; i < cell.h_regularity.size(); ++i)
        if (i != t) out.h_regularity.push_back(cell.h_regularity[i]);
    return out;
}

}  // namespace detail_indep

inline ChoiceDecomposition decompose_independent(const std::vector<RegularCellDescriptor>& cells,
                                                 const PolyMap& h, ModelPtr S, unsigned n,
                                                 unsigned k) {
    ChoiceDecomposition out;
    if (S->m != n) throw DimensionError("model arity does not match the cell space");
    for (const auto& cell : cells) {
        if (cell.dim != n + k) throw DimensionError("cell dimension mismatch");
        if (cell.is_open()) {
            if (!cell.regular || !cell.strongly_regular)
                throw ContractViolation("open cell must be strongly regular");
            if (cell.h_regularity.size() != cell.dim)
                throw ContractViolation("open cell requires regularity tags for the map");
            auto pred = std::make_shared<Predicate>();
            pred->kind = Predicate::Kind::LEXMIN_CLASS;
            pred->cell = std::make_shared<RegularCellDescriptor>(cell);
            pred->h = h;
            pred->members = S;
            ChoicePiece piece;
            piece.h.kind = MapDescriptor::Kind::POLY;
            piece.h.poly = h;
            piece.X = make_filtered_x(make_explicit_x(n, k, S), pred);
            piece.Y = S;
            out.pieces.push_back(std::move(piece));
            continue;
        }

        // last graph coordinate
        unsigned t = 0;
        for (unsigned i = 0; i < cell.dim; ++i)
            if (cell.coords[i].kind == CellCoord::Kind::GRAPH) t = i;
        const Poly& g = cell.coords[t].graph;

        RegularCellDescriptor reduced = detail_indep::reduce_cell(cell, t);
        PolyMap h2;
        for (const auto& c : h.coords)
            h2.coords.push_back(detail_indep::reduce_poly(c, t, g, cell.dim));

        if (t < n) {
            // drop a base coordinate; the model is projected the same way
            std::vector<RatFunc> proj;
            for (unsigned i = 0; i < n; ++i)
                if (i != t) proj.push_back(RatFunc(Poly::variable(n, i)));
            ModelPtr S2 = make_image_model(S, proj);
            ChoiceDecomposition sub = decompose_independent({reduced}, h2, S2, n - 1, k);
            // lift: re-insert the graph value into the base block
            std::vector<RatFunc> insert;
            for (unsigned i = 0; i < n; ++i) {
                if (i == t) {
                    // graph uses only coordinates before t, all in the base block
                    for (const auto& [e, c] : g.terms())
                        for (unsigned j = t; j < cell.dim; ++j)
                            if (e[j] != 0)
                                throw ContractViolation("graph bound uses a later coordinate");
                    std::vector<unsigned> gm(cell.dim, 0);
                    for (unsigned j = 0; j < t; ++j) gm[j] = j;
                    insert.push_back(RatFunc(g.embed(n - 1, gm)));
                } else {
                    insert.push_back(RatFunc(Poly::variable(n - 1, i < t ? i : i - 1)));
                }
            }
            for (auto& piece : sub.pieces) {
                ChoicePiece lifted;
                lifted.h.kind = MapDescriptor::Kind::POLY;
                lifted.h.poly = h;  // values agree on the cell
                lifted.X = make_image_x(piece.X, insert);
                lifted.Y = make_image_model(piece.Y, insert);
                out.pieces.push_back(std::move(lifted));
            }
        } else {
            // drop a parameter coordinate; the lift pins it to the graph value
            for (const auto& [e, c] : g.terms())
                for (unsigned j = 0; j < cell.dim; ++j)
                    if (e[j] != 0 && (j < n || j >= t))
                        throw ContractViolation(
                            "parameter graph bound may only use earlier parameters");
            ChoiceDecomposition sub = decompose_independent({reduced}, h2, S, n, k - 1);
            std::vector<unsigned> pm(cell.dim, 0);
            for (unsigned j = n; j < t; ++j) pm[j] = j - n;
            Poly glift = g.embed(k - 1, pm);
            for (auto& piece : sub.pieces) {
                ChoicePiece lifted;
                lifted.h.kind = MapDescriptor::Kind::POLY;
                lifted.h.poly = h;
                lifted.X = make_param_embed_x(piece.X, t - n, glift);
                lifted.Y = piece.Y;
                out.pieces.push_back(std::move(lifted));
            }
        }
    }
    return out;
}

}  // namespace ufss
