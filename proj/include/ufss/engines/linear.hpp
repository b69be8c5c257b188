#pragma once

// Decomposition for affine maps over ordered vector spaces. An affine map
// h(g, a) = (r_j . g + s_j . a + b_j)_j restricted to a domain splits as a
// g-only linear part plus an a-translation; collapsing the g-part onto its
// image yields a single injectively parametrized piece.

#include <vector>

#include "ufss/ufss.hpp"

namespace ufss {

struct AffineMapDescriptor {
    unsigned n = 0, k = 0, l = 1;
    std::vector<std::vector<Rational>> r;  // l rows over the g-block
    std::vector<std::vector<Rational>> s;  // l rows over the a-block
    std::vector<Rational> b;               // l offsets
    DefSetDescriptor domain;               // over (g, a); no fiber part

    void check() const {
        if (r.size() != l || s.size() != l || b.size() != l)
            throw DimensionError("affine map row count mismatch");
        for (const auto& row : r)
            if (row.size() != n) throw DimensionError("affine map g-row arity mismatch");
        for (const auto& row : s)
            if (row.size() != k) throw DimensionError("affine map a-row arity mismatch");
        if (domain.m != n || domain.k != k) throw DimensionError("affine map domain arity mismatch");
    }

    Point eval(const Point& g, const Point& a) const {
        Point out;
        for (unsigned j = 0; j < l; ++j) {
            AlgebraicReal acc{b[j]};
            for (unsigned i = 0; i < n; ++i) acc = acc + g[i] * AlgebraicReal(r[j][i]);
            for (unsigned i = 0; i < k; ++i) acc = acc + a[i] * AlgebraicReal(s[j][i]);
            out.push_back(acc);
        }
        return out;
    }
};

// Single-piece decomposition: Y is the image of the model under the linear
// g-part, X keeps the image values realized by model points inside the
// domain fiber, and the piece map translates by the a-part.
inline ChoiceDecomposition decompose_linear(const AffineMapDescriptor& h, ModelPtr S) {
    h.check();
    if (S->m != h.n) throw DimensionError("model arity does not match the map");

    std::vector<RatFunc> lin;
    for (unsigned j = 0; j < h.l; ++j) {
        Poly row(h.n);
        for (unsigned i = 0; i < h.n; ++i)
            if (h.r[j][i] != 0) row = row + Poly::variable(h.n, i, h.r[j][i]);
        if (row.is_zero()) row = Poly(h.n);
        lin.push_back(RatFunc(row));
    }
    ModelPtr Y = make_image_model(S, lin);

    // members of S inside the domain fiber, then their linear images
    auto member = std::make_shared<Predicate>();
    member->kind = Predicate::Kind::FIBER_NONEMPTY;
    member->z = std::make_shared<DefSetDescriptor>(h.domain);
    XPtr inside = make_filtered_x(make_explicit_x(h.n, h.k, S), member);
    XPtr X = make_image_x(inside, lin);

    // piece map: (t, a) -> (t_j + s_j . a + b_j)_j
    ChoicePiece piece;
    piece.h.kind = MapDescriptor::Kind::POLY;
    for (unsigned j = 0; j < h.l; ++j) {
        Poly coord(h.l + h.k);
        coord = coord + Poly::variable(h.l + h.k, j);
        for (unsigned i = 0; i < h.k; ++i)
            if (h.s[j][i] != 0) coord = coord + Poly::variable(h.l + h.k, h.l + i, h.s[j][i]);
        coord = coord + Poly::constant(h.l + h.k, h.b[j]);
        piece.h.poly.coords.push_back(std::move(coord));
    }
    piece.X = X;
    piece.Y = Y;

    ChoiceDecomposition out;
    out.pieces.push_back(std::move(piece));
    return out;
}

}  // namespace ufss
