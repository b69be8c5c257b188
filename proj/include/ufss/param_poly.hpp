#pragma once

// Polynomials in a parameter block y = (y_1..y_k) and a single fiber
// variable z, with coefficients that are rational functions of the base
// variables x = (x_1..x_n):
//
//     p(x, y, z) = sum over indices (i, j) of  f_{i,j}(x) * y^i * z^j.
//
// The support is the set of indices with nonzero coefficient; the leading
// index is its maximum in the graded-lex order.

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ufss/order_index.hpp"
#include "ufss/rat_func.hpp"

namespace ufss {

class ParamPoly {
public:
    using CoeffMap = std::map<OrderIndex, RatFunc, OrderIndexLess>;

    ParamPoly() : n_(0), k_(0) {}
    ParamPoly(unsigned n, unsigned k) : n_(n), k_(k) {}

    unsigned base_vars() const { return n_; }
    unsigned param_vars() const { return k_; }
    const CoeffMap& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    void set_coeff(const OrderIndex& idx, RatFunc f) {
        if (idx.k() != k_) throw DimensionError("order index dimension mismatch");
        if (f.num_vars() != n_) throw DimensionError("coefficient arity mismatch");
        if (f.is_zero())
            coeffs_.erase(idx);
        else
            coeffs_[idx] = std::move(f);
    }
    RatFunc coeff(const OrderIndex& idx) const {
        auto it = coeffs_.find(idx);
        return it == coeffs_.end() ? RatFunc::constant(n_, Rational(0)) : it->second;
    }

    std::vector<OrderIndex> support() const {
        std::vector<OrderIndex> s;
        for (const auto& [idx, f] : coeffs_) s.push_back(idx);
        return s;
    }
    // The maximal support index; empty for the zero polynomial.
    std::optional<OrderIndex> leading_index() const {
        if (coeffs_.empty()) return std::nullopt;
        return coeffs_.rbegin()->first;
    }

    friend ParamPoly operator-(const ParamPoly& a, const ParamPoly& b) {
        a.check_same(b);
        ParamPoly r = a;
        for (const auto& [idx, f] : b.coeffs_) r.set_coeff(idx, r.coeff(idx) - f);
        return r;
    }
    friend ParamPoly operator+(const ParamPoly& a, const ParamPoly& b) {
        a.check_same(b);
        ParamPoly r = a;
        for (const auto& [idx, f] : b.coeffs_) r.set_coeff(idx, r.coeff(idx) + f);
        return r;
    }
    friend bool operator==(const ParamPoly& a, const ParamPoly& b) {
        if (a.n_ != b.n_ || a.k_ != b.k_ || a.coeffs_.size() != b.coeffs_.size()) return false;
        auto it = a.coeffs_.begin();
        auto jt = b.coeffs_.begin();
        for (; it != a.coeffs_.end(); ++it, ++jt)
            if (!(it->first == jt->first) || !(it->second == jt->second)) return false;
        return true;
    }

    // Divide every coefficient by d; the caller records d != 0 as a guard.
    ParamPoly divide_by(const RatFunc& d) const {
        if (d.is_zero()) throw DomainError("division by the zero rational function");
        ParamPoly r(n_, k_);
        for (const auto& [idx, f] : coeffs_) r.set_coeff(idx, f / d);
        return r;
    }

    // Drop all support indices strictly above `top`.
    ParamPoly truncate_above(const OrderIndex& top) const {
        ParamPoly r(n_, k_);
        for (const auto& [idx, f] : coeffs_)
            if (precedes_eq(idx, top)) r.set_coeff(idx, f);
        return r;
    }

    // Univariate polynomial in z at a fully bound point (b, a); empty if some
    // coefficient is undefined there (vanishing denominator).
    std::optional<std::vector<AlgebraicReal>> z_coeffs_at(const Point& b, const Point& a) const {
        if (b.size() != n_ || a.size() != k_) throw DimensionError("bind arity mismatch");
        unsigned zdeg = 0;
        for (const auto& [idx, f] : coeffs_)
            if (idx.z_deg > zdeg) zdeg = idx.z_deg;
        std::vector<AlgebraicReal> out(zdeg + 1, AlgebraicReal(Rational(0)));
        for (const auto& [idx, f] : coeffs_) {
            auto v = f.eval(b);
            if (!v) return std::nullopt;
            AlgebraicReal t = *v;
            for (unsigned i = 0; i < idx.y_exp.size(); ++i) {
                for (unsigned j = 0; j < idx.y_exp[i]; ++j) t = t * a[i];
            }
            out[idx.z_deg] = out[idx.z_deg] + t;
        }
        while (out.size() > 1 && out.back().sign() == 0 && out.back().is_rational()) out.pop_back();
        return out;
    }

    // Exact value at a fully bound point (b, a, c); empty if undefined.
    std::optional<AlgebraicReal> eval(const Point& b, const Point& a, const AlgebraicReal& c) const {
        auto zc = z_coeffs_at(b, a);
        if (!zc) return std::nullopt;
        // Horner in c
        AlgebraicReal acc(Rational(0));
        for (auto it = zc->rbegin(); it != zc->rend(); ++it) acc = acc * c + *it;
        return acc;
    }

    // The order of p(b, -, -): the maximal index whose coefficient is
    // defined and nonzero at b. Empty if all vanish.
    std::optional<OrderIndex> order_at(const Point& b) const {
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            auto s = it->second.sign_at(b);
            if (s && *s != 0) return it->first;
        }
        return std::nullopt;
    }

    // As a polynomial in (y, z) with rational coefficients; requires every
    // coefficient to be a constant rational function.
    Poly to_yz_poly() const {
        Poly r(k_ + 1);
        for (const auto& [idx, f] : coeffs_) {
            if (!f.is_constant()) throw std::logic_error("non-constant coefficient in yz conversion");
            r.add_term(idx.as_tuple(), f.constant_value());
        }
        return r;
    }

    // Substitute parameter y_t by a rational-coefficient polynomial g in the
    // remaining parameters (k-1 variables). Base coefficients are untouched.
    ParamPoly substitute_param(unsigned t, const Poly& g) const {
        if (t >= k_) throw DimensionError("parameter index out of range");
        if (g.num_vars() != k_ - 1) throw DimensionError("substitution arity mismatch");
        ParamPoly r(n_, k_ - 1);
        for (const auto& [idx, f] : coeffs_) {
            // y^i with y_t replaced by g, expanded over the remaining block
            Poly yz = Poly::constant(k_, Rational(1));
            for (unsigned i = 0; i < k_; ++i) {
                if (i == t) continue;
                unsigned pos = i < t ? i : i - 1;
                yz = yz * Poly::variable(k_, pos).pow(idx.y_exp[i]);
            }
            Poly gk = g.embed(k_, identity_map(k_ - 1));
            yz = yz * gk.pow(idx.y_exp[t]);
            // separate the z-degree back out; yz lives in k_ vars with the
            // last one unused, re-collect terms
            for (const auto& [e, c] : yz.terms()) {
                OrderIndex ni;
                ni.y_exp.assign(e.begin(), e.begin() + (k_ - 1));
                ni.z_deg = idx.z_deg;
                r.set_coeff(ni, r.coeff(ni) + f * RatFunc::constant(n_, c));
            }
        }
        return r;
    }

    // Insert a fresh parameter coordinate (exponent 0 everywhere) at `pos`.
    ParamPoly insert_param(unsigned pos) const {
        if (pos > k_) throw DimensionError("parameter insertion out of range");
        ParamPoly r(n_, k_ + 1);
        for (const auto& [idx, f] : coeffs_) {
            OrderIndex ni;
            ni.y_exp = idx.y_exp;
            ni.y_exp.insert(ni.y_exp.begin() + pos, 0);
            ni.z_deg = idx.z_deg;
            r.set_coeff(ni, f);
        }
        return r;
    }

    // Rename/extend the base variables.
    ParamPoly embed_base(unsigned new_n, const std::vector<unsigned>& var_map) const {
        ParamPoly r(new_n, k_);
        for (const auto& [idx, f] : coeffs_) r.set_coeff(idx, f.embed(new_n, var_map));
        return r;
    }

    // As a polynomial over the combined (b, a, c) variable space.
    Poly to_full_poly() const {
        unsigned total = n_ + k_ + 1;
        Poly acc(total);
        for (const auto& [idx, f] : coeffs_) {
            if (!f.denom().is_constant())
                throw std::logic_error("cannot flatten coefficient with polynomial denominator");
            Poly t = f.numer() * (Rational(1) / f.denom().constant_value());
            std::vector<unsigned> map(n_);
            for (unsigned i = 0; i < n_; ++i) map[i] = i;
            Poly tb = t.embed(total, map);
            Poly mono = Poly::constant(total, Rational(1));
            for (unsigned i = 0; i < k_; ++i) mono = mono * Poly::variable(total, n_ + i).pow(idx.y_exp[i]);
            mono = mono * Poly::variable(total, n_ + k_).pow(idx.z_deg);
            acc = acc + tb * mono;
        }
        return acc;
    }

    static std::vector<unsigned> identity_map(unsigned n) {
        std::vector<unsigned> m(n);
        for (unsigned i = 0; i < n; ++i) m[i] = i;
        return m;
    }

private:
    void check_same(const ParamPoly& b) const {
        if (n_ != b.n_ || k_ != b.k_) throw DimensionError("parametric polynomial arity mismatch");
    }

    unsigned n_, k_;
    CoeffMap coeffs_;
};

struct LeadingSupport {
    std::vector<OrderIndex> support;
    OrderIndex leading;
};

// Support and maximal index of a nonzero parametric polynomial.
inline LeadingSupport leading_support(const ParamPoly& p) {
    auto lead = p.leading_index();
    if (!lead) throw DomainError("leading support of the zero polynomial");
    return LeadingSupport{p.support(), *lead};
}

}  // namespace ufss
