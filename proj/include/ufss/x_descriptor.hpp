#pragma once

// Index-set descriptors. A descriptor denotes, for every parameter a, the
// finite fiber X_a of base points drawn from an attached small-set model.
// All filters are bounded predicates over explicit point lists, so fiber
// evaluation always terminates.

#include <memory>
#include <vector>

#include "ufss/cells.hpp"
#include "ufss/descriptor.hpp"
#include "ufss/small_set.hpp"

namespace ufss {

struct UFSS;
struct XDescriptor;
struct Predicate;
using XPtr = std::shared_ptr<const XDescriptor>;
using PredPtr = std::shared_ptr<const Predicate>;

struct XDescriptor {
    enum class Kind { EXPLICIT, IMAGE, PRODUCT, FILTERED, PARAM_EMBED, PARAM_APPEND };
    Kind kind = Kind::EXPLICIT;
    unsigned m = 0, k = 0;

    // EXPLICIT: fiber = the model's points whenever the parameter conditions
    // hold (conditions over the k parameter variables only).
    ModelPtr model;
    std::vector<AmbientCond> param_conds;

    // IMAGE / FILTERED / PARAM_EMBED / PARAM_APPEND
    XPtr parent;

    // IMAGE: exact image of the parent fiber under the map.
    std::vector<RatFunc> map;

    // PRODUCT: concatenation of two fibers at the same parameter.
    XPtr left, right;

    // FILTERED
    PredPtr pred;

    // PARAM_EMBED: parent has k-1 parameters; the fiber at a is the parent
    // fiber at a-with-position-removed, provided a[insert_pos] equals the
    // lift polynomial at the remaining coordinates.
    unsigned insert_pos = 0;
    Poly lift;  // over k-1 variables

    // PARAM_APPEND: parent has k0 = k - append_maps.size() parameters; the
    // fiber at (a0, d) keeps parent points b with append_maps_i(b, a0) = d_i.
    std::vector<Poly> append_maps;  // over parent m + k0
};

// Bounded, decidable predicates over (b, a).
struct Predicate {
    enum class Kind {
        ALONE_IN_FAMILY,      // no other model point's fiber meets b's fiber at a
        PAIR_DISTINCT,        // b = (d1, d2): the halves differ
        PAIR_COLLIDES,        // halves' fibers intersect at a
        PAIR_R_NONDEGENERATE, // difference polynomial not identically zero at a
        PAIR_R_DEGENERATE,    // difference polynomial identically zero at a
        SELECTOR_IN_UNION,    // own selected root lies in the inner family's union at a
        IN_CASE_DOMAIN,       // leading-case guards hold at b
        FIBER_NONEMPTY,       // auxiliary family has a root at (b, a)
        V2_CONTEXT,           // degenerate-pair branch after parameter substitution
        LEXMIN_CLASS,         // b is the lex-least of its value class on a cell
        BLOCK_IN_X,           // a block of b lies in another index fiber at a
        AND
    };
    Kind kind = Kind::AND;

    std::shared_ptr<const DefSetDescriptor> z;  // ALONE_IN_FAMILY, PAIR_COLLIDES, FIBER_NONEMPTY
    ModelPtr co_members;                        // ALONE_IN_FAMILY
    std::shared_ptr<const ParamPoly> r;         // PAIR_R_*: base = both halves
    std::shared_ptr<const DefSetDescriptor> self_z;  // SELECTOR_IN_UNION
    std::shared_ptr<const UFSS> inner;               // SELECTOR_IN_UNION
    std::vector<RatFunc> vanish;    // IN_CASE_DOMAIN: required = 0 at b
    std::vector<RatFunc> nonzero;   // IN_CASE_DOMAIN: required != 0 at b
    // V2_CONTEXT: reconstruct the dropped parameter coordinate and require
    // membership of the first half in x0 plus identical fiber polynomials.
    // BLOCK_IN_X: x0 plus the block selector below.
    std::shared_ptr<const XDescriptor> x0;
    Point d1, d2;
    unsigned insert_pos = 0;
    Poly lift;  // over k-1 variables
    unsigned block_offset = 0, block_len = 0;  // BLOCK_IN_X
    // LEXMIN_CLASS
    std::shared_ptr<const RegularCellDescriptor> cell;
    PolyMap h;
    ModelPtr members;
    std::vector<PredPtr> children;  // AND
};

std::vector<Point> x_fiber(const XDescriptor& X, const Point& a);
bool predicate_holds(const Predicate& pred, const Point& b, const Point& a, unsigned k);

inline XPtr make_explicit_x(unsigned m, unsigned k, ModelPtr model,
                            std::vector<AmbientCond> conds = {}) {
    auto x = std::make_shared<XDescriptor>();
    x->kind = XDescriptor::Kind::EXPLICIT;
    x->m = m;
    x->k = k;
    x->model = std::move(model);
    x->param_conds = std::move(conds);
    return x;
}

inline XPtr make_image_x(XPtr parent, std::vector<RatFunc> map) {
    auto x = std::make_shared<XDescriptor>();
    x->kind = XDescriptor::Kind::IMAGE;
    x->m = static_cast<unsigned>(map.size());
    x->k = parent->k;
    x->parent = std::move(parent);
    x->map = std::move(map);
    return x;
}

inline XPtr make_product_x(XPtr left, XPtr right) {
    auto x = std::make_shared<XDescriptor>();
    x->kind = XDescriptor::Kind::PRODUCT;
    x->m = left->m + right->m;
    x->k = left->k;
    x->left = std::move(left);
    x->right = std::move(right);
    return x;
}

inline XPtr make_filtered_x(XPtr parent, PredPtr pred) {
    auto x = std::make_shared<XDescriptor>();
    x->kind = XDescriptor::Kind::FILTERED;
    x->m = parent->m;
    x->k = parent->k;
    x->parent = std::move(parent);
    x->pred = std::move(pred);
    return x;
}

inline XPtr make_param_embed_x(XPtr parent, unsigned insert_pos, Poly lift) {
    auto x = std::make_shared<XDescriptor>();
    x->kind = XDescriptor::Kind::PARAM_EMBED;
    x->m = parent->m;
    x->k = parent->k + 1;
    x->insert_pos = insert_pos;
    x->lift = std::move(lift);
    x->parent = std::move(parent);
    return x;
}

inline XPtr make_param_append_x(XPtr parent, std::vector<Poly> maps) {
    auto x = std::make_shared<XDescriptor>();
    x->kind = XDescriptor::Kind::PARAM_APPEND;
    x->m = parent->m;
    x->k = parent->k + static_cast<unsigned>(maps.size());
    x->append_maps = std::move(maps);
    x->parent = std::move(parent);
    return x;
}

}  // namespace ufss
