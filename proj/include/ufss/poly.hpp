#pragma once

// Sparse multivariate polynomials over the rationals. Terms are kept in a
// map from exponent vector to nonzero coefficient, so iteration order and
// serialization are deterministic.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ufss/algebraic_real.hpp"
#include "ufss/order_index.hpp"
#include "ufss/rational.hpp"
#include "ufss/upoly.hpp"

namespace ufss {

class Poly {
public:
    using Exponents = std::vector<unsigned>;
    using TermMap = std::map<Exponents, Rational>;

    Poly() : nvars_(0) {}
    explicit Poly(unsigned num_vars) : nvars_(num_vars) {}

    static Poly constant(unsigned num_vars, const Rational& c) {
        Poly p(num_vars);
        p.add_term(Exponents(num_vars, 0), c);
        return p;
    }
    static Poly variable(unsigned num_vars, unsigned i, const Rational& c = Rational(1)) {
        if (i >= num_vars) throw DimensionError("variable index out of range");
        Poly p(num_vars);
        Exponents e(num_vars, 0);
        e[i] = 1;
        p.add_term(e, c);
        return p;
    }

    unsigned num_vars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents(nvars_, 0));
    }
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        auto it = terms_.find(Exponents(nvars_, 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }
    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) {
            unsigned t = 0;
            for (unsigned x : e) t += x;
            if (t > d) d = t;
        }
        return d;
    }
    unsigned degree_in(unsigned var) const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_)
            if (e[var] > d) d = e[var];
        return d;
    }

    void add_term(const Exponents& e, const Rational& c) {
        if (e.size() != nvars_) throw DimensionError("exponent arity mismatch");
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.check_same(b);
        Poly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        a.check_same(b);
        Poly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    Poly operator-() const {
        Poly r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_same(b);
        Poly r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e = ea;
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend Poly operator*(const Poly& a, const Rational& s) {
        Poly r(a.nvars_);
        if (s == 0) return r;
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, c * s);
        return r;
    }
    Poly pow(unsigned n) const {
        Poly r = constant(nvars_, Rational(1));
        for (unsigned i = 0; i < n; ++i) r = r * *this;
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    Rational eval_rational(const std::vector<Rational>& x) const {
        if (x.size() != nvars_) throw DimensionError("evaluation arity mismatch");
        Rational acc(0);
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (unsigned j = 0; j < e[i]; ++j) t *= x[i];
            acc += t;
        }
        return acc;
    }

    // Bind a subset of the variables; the result is a polynomial in the
    // remaining ones (order preserved). bound[i] empty means "keep".
    Poly bind(const std::vector<std::optional<Rational>>& bound) const {
        if (bound.size() != nvars_) throw DimensionError("bind arity mismatch");
        std::vector<unsigned> keep;
        for (unsigned i = 0; i < nvars_; ++i)
            if (!bound[i]) keep.push_back(i);
        Poly r(static_cast<unsigned>(keep.size()));
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            Exponents re(keep.size(), 0);
            for (unsigned i = 0, ki = 0; i < nvars_; ++i) {
                if (bound[i]) {
                    for (unsigned j = 0; j < e[i]; ++j) t *= *bound[i];
                } else {
                    re[ki++] = e[i];
                }
            }
            r.add_term(re, t);
        }
        return r;
    }

    // View as a univariate polynomial in variable `var`; all other variables
    // must already be bound away (i.e. absent).
    QPoly as_univariate(unsigned var) const {
        std::vector<Rational> c(degree_in(var) + 1, Rational(0));
        for (const auto& [e, coeff] : terms_) {
            for (std::size_t i = 0; i < e.size(); ++i)
                if (i != var && e[i] != 0)
                    throw std::logic_error("polynomial not univariate in requested variable");
            c[e[var]] += coeff;
        }
        return QPoly(std::move(c));
    }

    // Exact evaluation at a point with algebraic coordinates.
    AlgebraicReal eval_algebraic(const Point& x) const {
        if (x.size() != nvars_) throw DimensionError("evaluation arity mismatch");
        std::vector<std::optional<Rational>> bound(nvars_);
        std::vector<unsigned> irr;
        for (unsigned i = 0; i < nvars_; ++i) {
            if (x[i].is_rational())
                bound[i] = x[i].rational_value();
            else
                irr.push_back(i);
        }
        Poly r = bind(bound);
        if (irr.empty()) return AlgebraicReal(r.constant_value());
        if (irr.size() == 1) return x[irr[0]].apply_poly(r.as_univariate(0));
        // General case: peel one irrational coordinate at a time.
        AlgebraicReal acc(Rational(0));
        unsigned last = static_cast<unsigned>(irr.size()) - 1;
        const AlgebraicReal& v = x[irr[last]];
        for (unsigned d = 0; d <= r.degree_in(last); ++d) {
            Poly coeff(static_cast<unsigned>(irr.size()) - 1);
            for (const auto& [e, c] : r.terms_) {
                if (e[last] != d) continue;
                Exponents re(e.begin(), e.end() - 1);
                coeff.add_term(re, c);
            }
            Point sub;
            for (unsigned j = 0; j + 1 < irr.size(); ++j) sub.push_back(x[irr[j]]);
            AlgebraicReal term = coeff.eval_algebraic(sub);
            AlgebraicReal p(Rational(1));
            for (unsigned j = 0; j < d; ++j) p = p * v;
            acc = acc + term * p;
        }
        return acc;
    }

    int sign_at(const Point& x) const {
        if (x.size() != nvars_) throw DimensionError("evaluation arity mismatch");
        std::vector<std::optional<Rational>> bound(nvars_);
        std::vector<unsigned> irr;
        for (unsigned i = 0; i < nvars_; ++i) {
            if (x[i].is_rational())
                bound[i] = x[i].rational_value();
            else
                irr.push_back(i);
        }
        Poly r = bind(bound);
        if (irr.empty()) return sign(r.constant_value());
        if (irr.size() == 1) return x[irr[0]].sign_of_poly_at(r.as_univariate(0));
        return eval_algebraic(x).sign();
    }

    // Substitute variable `var` by a polynomial in the same variable space
    // (the substituted expression must not involve `var`).
    Poly substitute(unsigned var, const Poly& g) const {
        if (g.num_vars() != nvars_) throw DimensionError("substitution arity mismatch");
        if (g.degree_in(var) > 0) throw DomainError("self-referential substitution");
        Poly r(nvars_);
        for (const auto& [e, c] : terms_) {
            Exponents base = e;
            unsigned d = base[var];
            base[var] = 0;
            Poly t(nvars_);
            t.add_term(base, c);
            r = r + t * g.pow(d);
        }
        return r;
    }

    // Re-embed into a larger variable space; var_map[i] is the new index of
    // old variable i.
    Poly embed(unsigned new_num_vars, const std::vector<unsigned>& var_map) const {
        if (var_map.size() != nvars_) throw DimensionError("embed map arity mismatch");
        Poly r(new_num_vars);
        for (const auto& [e, c] : terms_) {
            Exponents ne(new_num_vars, 0);
            for (unsigned i = 0; i < nvars_; ++i) ne[var_map[i]] = e[i];
            r.add_term(ne, c);
        }
        return r;
    }

    // Interpret the variables as (y_1..y_k, z) and return the maximal index
    // of the support, or nothing for the zero polynomial.
    std::optional<OrderIndex> monomial_order() const {
        if (terms_.empty()) return std::nullopt;
        if (nvars_ == 0) return OrderIndex{};
        std::optional<OrderIndex> best;
        for (const auto& [e, c] : terms_) {
            OrderIndex idx = OrderIndex::from_tuple(e);
            if (!best || precedes(*best, idx)) best = idx;
        }
        return best;
    }

private:
    void check_same(const Poly& b) const {
        if (nvars_ != b.nvars_) throw DimensionError("polynomial arity mismatch");
    }
    unsigned nvars_;
    TermMap terms_;
};

inline std::optional<OrderIndex> monomial_order(const Poly& p) { return p.monomial_order(); }

}  // namespace ufss
