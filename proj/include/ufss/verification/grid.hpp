#pragma once

// Rational parameter grids for sampling-based verification. Deterministic
// for a fixed (axes, seed): the seed only shifts each axis by a rational
// offset below the step.

#include <random>
#include <vector>

#include "ufss/algebraic_real.hpp"
#include "ufss/errors.hpp"

namespace ufss {

struct GridAxis {
    Rational lo, hi, step;
};

struct SampleGrid {
    std::vector<GridAxis> axes;
    std::uint64_t seed = 0;
    bool jitter = false;
    std::vector<Point> explicit_points;

    std::vector<Point> points() const {
        std::vector<Point> out = explicit_points;
        if (axes.empty()) {
            if (out.empty()) out.push_back({});
            return out;
        }
        std::mt19937_64 rng(seed);
        std::vector<std::vector<Rational>> per_axis;
        for (const auto& ax : axes) {
            if (ax.step <= 0) throw DomainError("grid step must be positive");
            Rational offset(0);
            if (jitter) {
                std::uniform_int_distribution<int> num(0, 15);
                offset = ax.step * Rational(num(rng), 16);
            }
            std::vector<Rational> vals;
            for (Rational v = ax.lo + offset; v <= ax.hi; v += ax.step) vals.push_back(v);
            if (vals.empty()) vals.push_back(ax.lo);
            per_axis.push_back(std::move(vals));
        }
        std::vector<Point> combos{{}};
        for (const auto& vals : per_axis) {
            std::vector<Point> next;
            for (const auto& base : combos)
                for (const auto& v : vals) {
                    Point p = base;
                    p.emplace_back(v);
                    next.push_back(std::move(p));
                }
            combos = std::move(next);
        }
        out.insert(out.end(), combos.begin(), combos.end());
        return out;
    }

    static SampleGrid uniform(unsigned k, Rational lo, Rational hi, Rational step, std::uint64_t seed = 0) {
        SampleGrid g;
        g.seed = seed;
        for (unsigned i = 0; i < k; ++i) g.axes.push_back({lo, hi, step});
        return g;
    }
};

}  // namespace ufss
