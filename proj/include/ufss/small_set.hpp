#pragma once

// Small sets are modeled by finite explicit point lists together with a
// derivation tag recording how each set was produced from base data. Only
// images, products and subsets ever arise, and the chains always terminate
// at a base set.

#include <memory>
#include <vector>

#include "ufss/algebraic_real.hpp"
#include "ufss/errors.hpp"
#include "ufss/rat_func.hpp"

namespace ufss {

struct SmallSetModel;
using ModelPtr = std::shared_ptr<const SmallSetModel>;

struct SmallSetModel {
    enum class DerivKind { BASE, IMAGE, PRODUCT, SUBSET };
    struct Derivation {
        DerivKind kind = DerivKind::BASE;
        std::vector<ModelPtr> parents;
        std::vector<RatFunc> map;  // for IMAGE: coordinates of the map
    };

    unsigned m = 0;
    std::vector<Point> points;  // sorted lexicographically, distinct
    Derivation derivation;

    bool contains(const Point& p) const {
        for (const auto& q : points)
            if (point_eq(p, q)) return true;
        return false;
    }
};

inline ModelPtr make_base_model(unsigned m, std::vector<Point> points) {
    for (const auto& p : points)
        if (p.size() != m) throw DimensionError("model point arity mismatch");
    sort_dedup_points(points);
    auto s = std::make_shared<SmallSetModel>();
    s->m = m;
    s->points = std::move(points);
    return s;
}

inline Point apply_map(const std::vector<RatFunc>& map, const Point& p) {
    Point out;
    out.reserve(map.size());
    for (const auto& f : map) {
        auto v = f.eval(p);
        if (!v) throw GuardViolation("coefficient map undefined at point " + [&] {
            std::string s = "(";
            for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
            return s + ")";
        }());
        out.push_back(*v);
    }
    return out;
}

inline ModelPtr make_image_model(ModelPtr parent, std::vector<RatFunc> map) {
    auto s = std::make_shared<SmallSetModel>();
    s->m = static_cast<unsigned>(map.size());
    for (const auto& p : parent->points) s->points.push_back(apply_map(map, p));
    sort_dedup_points(s->points);
    s->derivation.kind = SmallSetModel::DerivKind::IMAGE;
    s->derivation.parents = {std::move(parent)};
    s->derivation.map = std::move(map);
    return s;
}

inline ModelPtr make_product_model(ModelPtr a, ModelPtr b) {
    auto s = std::make_shared<SmallSetModel>();
    s->m = a->m + b->m;
    for (const auto& p : a->points)
        for (const auto& q : b->points) {
            Point r = p;
            r.insert(r.end(), q.begin(), q.end());
            s->points.push_back(std::move(r));
        }
    sort_dedup_points(s->points);
    s->derivation.kind = SmallSetModel::DerivKind::PRODUCT;
    s->derivation.parents = {std::move(a), std::move(b)};
    return s;
}

inline ModelPtr make_subset_model(ModelPtr parent, std::vector<Point> points) {
    for (const auto& p : points)
        if (!parent->contains(p)) throw ContractViolation("subset model point not in parent");
    sort_dedup_points(points);
    auto s = std::make_shared<SmallSetModel>();
    s->m = parent->m;
    s->points = std::move(points);
    s->derivation.kind = SmallSetModel::DerivKind::SUBSET;
    s->derivation.parents = {std::move(parent)};
    return s;
}

// Structural check: the derivation chain reaches BASE through the three
// permitted constructors and each derived point list matches its parents.
inline bool derivation_chain_valid(const SmallSetModel& s, std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    switch (s.derivation.kind) {
        case SmallSetModel::DerivKind::BASE:
            return true;
        case SmallSetModel::DerivKind::IMAGE: {
            if (s.derivation.parents.size() != 1) return fail("image set without parent");
            const auto& par = *s.derivation.parents[0];
            std::vector<Point> expect;
            for (const auto& p : par.points) expect.push_back(apply_map(s.derivation.map, p));
            sort_dedup_points(expect);
            if (expect.size() != s.points.size()) return fail("image set points differ from parent image");
            for (std::size_t i = 0; i < expect.size(); ++i)
                if (!point_eq(expect[i], s.points[i])) return fail("image set points differ from parent image");
            return derivation_chain_valid(par, why);
        }
        case SmallSetModel::DerivKind::PRODUCT: {
            if (s.derivation.parents.size() != 2) return fail("product set without two parents");
            return derivation_chain_valid(*s.derivation.parents[0], why) &&
                   derivation_chain_valid(*s.derivation.parents[1], why);
        }
        case SmallSetModel::DerivKind::SUBSET: {
            if (s.derivation.parents.size() != 1) return fail("subset without parent");
            const auto& par = *s.derivation.parents[0];
            for (const auto& p : s.points)
                if (!par.contains(p)) return fail("subset point outside parent");
            return derivation_chain_valid(par, why);
        }
    }
    return fail("unknown derivation kind");
}

}  // namespace ufss
