#pragma once

// Rational functions: quotients of multivariate polynomials with a nonzero
// denominator. Normalization is kept cheap: rational content is stripped,
// identical numerator/denominator cancel, and the denominator sign is fixed.

#include <optional>
#include <stdexcept>

#include "ufss/poly.hpp"

namespace ufss {

class RatFunc {
public:
    RatFunc() : num_(0), den_(Poly::constant(0, Rational(1))) {}
    explicit RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.num_vars(), Rational(1))) {}
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DomainError("rational function with zero denominator");
        if (num_.num_vars() != den_.num_vars()) throw DimensionError("rational function arity mismatch");
        normalize();
    }
    static RatFunc constant(unsigned num_vars, const Rational& c) {
        return RatFunc(Poly::constant(num_vars, c));
    }

    const Poly& numer() const { return num_; }
    const Poly& denom() const { return den_; }
    unsigned num_vars() const { return num_.num_vars(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    RatFunc operator-() const { return RatFunc(-num_, den_); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw DomainError("division by the zero rational function");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return (a.num_ * b.den_) == (b.num_ * a.den_);
    }

    // Exact value at an algebraic point; empty if the denominator vanishes.
    std::optional<AlgebraicReal> eval(const Point& x) const {
        if (den_.sign_at(x) == 0) return std::nullopt;
        AlgebraicReal n = num_.eval_algebraic(x);
        AlgebraicReal d = den_.eval_algebraic(x);
        return n / d;
    }
    // Sign of the value; empty if undefined at x.
    std::optional<int> sign_at(const Point& x) const {
        int sd = den_.sign_at(x);
        if (sd == 0) return std::nullopt;
        return num_.sign_at(x) * sd;
    }

    RatFunc embed(unsigned new_num_vars, const std::vector<unsigned>& var_map) const {
        return RatFunc(num_.embed(new_num_vars, var_map), den_.embed(new_num_vars, var_map));
    }
    RatFunc substitute(unsigned var, const Poly& g) const {
        return RatFunc(num_.substitute(var, g), den_.substitute(var, g));
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly::constant(den_.num_vars(), Rational(1));
            return;
        }
        if (num_ == den_) {
            num_ = Poly::constant(num_.num_vars(), Rational(1));
            den_ = num_;
            return;
        }
        // strip rational content of the denominator into the numerator
        Rational lead = den_.terms().begin()->second;
        if (den_.is_constant()) {
            num_ = num_ * (Rational(1) / den_.constant_value());
            den_ = Poly::constant(den_.num_vars(), Rational(1));
            return;
        }
        num_ = num_ * (Rational(1) / lead);
        den_ = den_ * (Rational(1) / lead);
    }

    Poly num_, den_;
};

}  // namespace ufss
