#pragma once

// Dense univariate polynomials over an exact field (or, for the resultant
// machinery, an exact integral domain). Coefficient index = power.

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ufss/errors.hpp"
#include "ufss/rational.hpp"

namespace ufss {

template <typename C>
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UPoly constant(C v) { return UPoly(std::vector<C>{std::move(v)}); }
    static UPoly zero() { return UPoly(); }
    // x - r
    static UPoly linear_root(const C& r) { return UPoly(std::vector<C>{-r, C(1)}); }

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<C>& coeffs() const { return c_; }
    const C& operator[](std::size_t i) const { return c_[i]; }
    const C& leading() const { return c_.back(); }

    C coeff(std::size_t i) const { return i < c_.size() ? c_[i] : C{}; }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<C> r(std::max(a.c_.size(), b.c_.size()), C{});
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return UPoly(std::move(r));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) {
        std::vector<C> r(std::max(a.c_.size(), b.c_.size()), C{});
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
        return UPoly(std::move(r));
    }
    UPoly operator-() const {
        std::vector<C> r = c_;
        for (auto& x : r) x = -x;
        return UPoly(std::move(r));
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly();
        std::vector<C> r(a.c_.size() + b.c_.size() - 1, C{});
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return UPoly(std::move(r));
    }
    friend UPoly operator*(const UPoly& a, const C& s) {
        std::vector<C> r = a.c_;
        for (auto& x : r) x = x * s;
        return UPoly(std::move(r));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    C eval(const C& x) const {
        C acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return UPoly();
        std::vector<C> r(c_.size() - 1, C{});
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * C(static_cast<long long>(i));
        return UPoly(std::move(r));
    }

    // Field coefficients required.
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
        if (d.is_zero()) throw DomainError("polynomial division by zero");
        UPoly rem = *this;
        std::vector<C> q;
        if (rem.degree() >= d.degree()) q.assign(rem.degree() - d.degree() + 1, C{});
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            C f = rem.leading() / d.leading();
            int shift = rem.degree() - d.degree();
            q[shift] = f;
            std::vector<C> sub(shift + d.c_.size(), C{});
            for (std::size_t i = 0; i < d.c_.size(); ++i) sub[shift + i] = d.c_[i] * f;
            rem = rem - UPoly(std::move(sub));
        }
        return {UPoly(std::move(q)), rem};
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        UPoly r = *this;
        C inv = C(1) / leading();
        for (auto& x : r.c_) x = x * inv;
        return r;
    }

    // p(x + s)
    UPoly shift(const C& s) const {
        UPoly result;
        UPoly base = UPoly::constant(C(1));
        UPoly lin(std::vector<C>{s, C(1)});
        for (std::size_t i = 0; i < c_.size(); ++i) {
            result = result + base * c_[i];
            base = base * lin;
        }
        return result;
    }
    // p(s * x)
    UPoly scale_arg(const C& s) const {
        std::vector<C> r = c_;
        C f(1);
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = r[i] * f;
            f = f * s;
        }
        return UPoly(std::move(r));
    }
    // p(-x)
    UPoly negate_arg() const {
        std::vector<C> r = c_;
        for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
        return UPoly(std::move(r));
    }
    // x^deg * p(1/x)
    UPoly reverse() const {
        std::vector<C> r(c_.rbegin(), c_.rend());
        return UPoly(std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == C{}) c_.pop_back();
    }
    std::vector<C> c_;
};

using QPoly = UPoly<Rational>;

template <typename C>
UPoly<C> upoly_gcd(UPoly<C> a, UPoly<C> b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = r.is_zero() ? r : r.monic();
    }
    return a.is_zero() ? a : a.monic();
}

template <typename C>
UPoly<C> squarefree_part(const UPoly<C>& p) {
    if (p.degree() <= 1) return p.is_zero() ? p : p.monic();
    auto g = upoly_gcd(p, p.derivative());
    if (g.degree() <= 0) return p.monic();
    auto [q, rem] = p.divmod(g);
    assert(rem.is_zero());
    return q.monic();
}

// Scale by the content so all coefficients are integers with gcd 1 and the
// leading coefficient is positive. Rational coefficients only.
inline QPoly integer_primitive(const QPoly& p) {
    if (p.is_zero()) return p;
    Int den_lcm = 1;
    for (const auto& c : p.coeffs()) den_lcm = lcm(den_lcm, denominator(c));
    Int num_gcd = 0;
    for (const auto& c : p.coeffs()) num_gcd = gcd(num_gcd, Int(numerator(c) * (den_lcm / denominator(c))));
    Rational f(den_lcm, num_gcd);
    if (p.leading() < 0) f = -f;
    return p * f;
}

// Number of sign changes in the evaluations of the Sturm chain at x.
struct SturmChain {
    std::vector<QPoly> chain;

    explicit SturmChain(const QPoly& p) {
        QPoly f = squarefree_part(p);
        chain.push_back(f);
        if (f.degree() >= 1) {
            chain.push_back(f.derivative());
            while (chain.back().degree() >= 1) {
                auto rem = chain[chain.size() - 2].divmod(chain.back()).second;
                if (rem.is_zero()) break;
                chain.push_back(-rem);
            }
        }
    }

    int variations_at(const Rational& x) const {
        int var = 0, prev = 0;
        for (const auto& f : chain) {
            int s = sign(f.eval(x));
            if (s != 0) {
                if (prev != 0 && s != prev) ++var;
                prev = s;
            }
        }
        return var;
    }

    // Roots of the squarefree part in (lo, hi]; standard variation-count
    // difference.
    int count_roots(const Rational& lo, const Rational& hi) const {
        return variations_at(lo) - variations_at(hi);
    }
};

// Cauchy bound: all real roots lie in (-B, B).
inline Rational cauchy_root_bound(const QPoly& p) {
    if (p.degree() < 1) return Rational(1);
    Rational m(0);
    for (int i = 0; i < p.degree(); ++i) {
        Rational a = abs_rat(p.coeff(i) / p.leading());
        if (a > m) m = a;
    }
    return m + 1;
}

namespace detail {
// Fraction-free (Bareiss) determinant over an exact integral domain. Requires
// exact division `div`.
template <typename R, typename DivFn>
R bareiss_det(std::vector<std::vector<R>> m, const R& one, DivFn div, const R& zero) {
    const std::size_t n = m.size();
    if (n == 0) return one;
    R denom = one;
    int sgn = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == zero) {
            std::size_t pivot = k + 1;
            while (pivot < n && m[pivot][k] == zero) ++pivot;
            if (pivot == n) return zero;
            std::swap(m[k], m[pivot]);
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = div(m[k][k] * m[i][j] - m[i][k] * m[k][j], denom);
        denom = m[k][k];
    }
    R det = m[n - 1][n - 1];
    return sgn == 1 ? det : zero - det;
}
}  // namespace detail

// Sylvester resultant of a, b with coefficients in an exact integral domain R
// (e.g. QPoly for the bivariate case, Rational for the plain case).
template <typename R, typename DivFn>
R resultant(const UPoly<R>& a, const UPoly<R>& b, const R& one, const R& zero, DivFn div) {
    if (a.is_zero() || b.is_zero()) return zero;
    const int da = a.degree(), db = b.degree();
    if (da == 0) {
        R r = one;
        for (int i = 0; i < db; ++i) r = r * a.leading();
        return r;
    }
    if (db == 0) {
        R r = one;
        for (int i = 0; i < da; ++i) r = r * b.leading();
        return r;
    }
    const std::size_t n = static_cast<std::size_t>(da + db);
    std::vector<std::vector<R>> m(n, std::vector<R>(n, zero));
    for (int row = 0; row < db; ++row)
        for (int i = 0; i <= da; ++i) m[row][row + da - i] = a.coeff(i);
    for (int row = 0; row < da; ++row)
        for (int i = 0; i <= db; ++i) m[db + row][row + db - i] = b.coeff(i);
    return detail::bareiss_det(std::move(m), one, div, zero);
}

inline Rational resultant_q(const QPoly& a, const QPoly& b) {
    return resultant(
        a, b, Rational(1), Rational(0),
        [](const Rational& x, const Rational& y) { return Rational(x / y); });
}

}  // namespace ufss
