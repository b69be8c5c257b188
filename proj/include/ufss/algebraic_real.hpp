#pragma once

// Exact elements of the field of real algebraic numbers. A value is either a
// rational or a squarefree integer-primitive polynomial together with an open
// isolating interval with rational, non-root endpoints. All operations are
// exact; comparisons are decided by gcd arguments plus interval refinement,
// never by numeric tolerance.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ufss/rational.hpp"
#include "ufss/upoly.hpp"

namespace ufss {

namespace detail {

// Divide out (x - r) while r is a root. Exact.
inline QPoly strip_root(QPoly f, const Rational& r) {
    while (!f.is_zero() && f.eval(r) == 0) {
        auto [q, rem] = f.divmod(QPoly::linear_root(r));
        f = q;
        (void)rem;
    }
    return f;
}

// Count roots of squarefree f in the open interval (lo, hi). Endpoint roots
// of f are divided out first, which is sound because the open interval does
// not contain them.
inline int count_roots_open(const QPoly& f, const Rational& lo, const Rational& hi) {
    if (f.is_zero()) throw DomainError("root count of zero polynomial");
    QPoly g = strip_root(strip_root(f, lo), hi);
    if (g.degree() < 1) return 0;
    SturmChain chain(g);
    return chain.count_roots(lo, hi);
}

inline std::optional<Rational> rational_square_root(const Rational& q) {
    if (q < 0) return std::nullopt;
    Int n = numerator(q), d = denominator(q);
    Int rn = sqrt(n), rd = sqrt(d);
    if (rn * rn != n || rd * rd != d) return std::nullopt;
    return Rational(rn, rd);
}

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

// The rational root of f inside (lo, hi), if one exists. The interval must
// isolate exactly one root of f with non-root endpoints. Exhaustive as long
// as the leading coefficient is small enough to factor by trial division.
inline std::optional<Rational> rational_root_in_interval(const QPoly& f, Rational lo, Rational hi);

}  // namespace detail

class AlgebraicReal {
public:
    AlgebraicReal() : rational_(true), rat_(0) {}
    AlgebraicReal(Rational q) : rational_(true), rat_(std::move(q)) {}
    AlgebraicReal(long long n) : rational_(true), rat_(n) {}

    // The unique root of p inside the open interval (lo, hi). Verifies the
    // isolation property and normalizes the representation: squarefree
    // integer-primitive polynomial, non-root endpoints, rational values
    // detected for degrees <= 2 and whenever the root is hit exactly.
    static AlgebraicReal from_poly_interval(const QPoly& p, Rational lo, Rational hi) {
        if (p.is_zero()) throw DomainError("algebraic real from zero polynomial");
        if (!(lo < hi)) throw DomainError("empty isolating interval");
        QPoly f = squarefree_part(p);
        f = detail::strip_root(detail::strip_root(f, lo), hi);
        if (f.degree() < 1 || detail::count_roots_open(f, lo, hi) != 1)
            throw DomainError("interval does not isolate exactly one root");

        // Separate a possible root at 0 so the stored polynomial never
        // vanishes at the origin.
        if (f.eval(Rational(0)) == 0 && lo < 0 && hi > 0) {
            auto [g, rem] = f.divmod(QPoly(std::vector<Rational>{Rational(0), Rational(1)}));
            (void)rem;
            QPoly h = detail::strip_root(g, Rational(0));
            int left = h.degree() >= 1 ? detail::count_roots_open(h, lo, Rational(0)) : 0;
            if (left == 0 && (h.degree() < 1 || detail::count_roots_open(h, Rational(0), hi) == 0))
                return AlgebraicReal(Rational(0));
            f = h;
            if (left == 1)
                hi = 0;
            else
                lo = 0;
        }
        f = detail::strip_root(f, Rational(0));

        if (f.degree() == 1) {
            Rational r = -f.coeff(0) / f.coeff(1);
            return AlgebraicReal(std::move(r));
        }
        if (f.degree() == 2) {
            Rational a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
            auto s = detail::rational_square_root(b * b - 4 * a * c);
            if (s) {
                Rational r1 = (-b - *s) / (2 * a), r2 = (-b + *s) / (2 * a);
                if (lo < r1 && r1 < hi) return AlgebraicReal(std::move(r1));
                return AlgebraicReal(std::move(r2));
            }
        } else if (auto r = detail::rational_root_in_interval(f, lo, hi)) {
            return AlgebraicReal(std::move(*r));
        }

        AlgebraicReal v;
        v.rational_ = false;
        v.poly_ = integer_primitive(f);
        v.lo_ = std::move(lo);
        v.hi_ = std::move(hi);
        return v;
    }

    bool is_rational() const { return rational_; }
    const Rational& rational_value() const {
        if (!rational_) throw std::logic_error("not a rational value");
        return rat_;
    }

    QPoly min_poly() const {
        if (rational_) return integer_primitive(QPoly::linear_root(rat_));
        return poly_;
    }
    // Any open interval containing the value with rational endpoints.
    std::pair<Rational, Rational> interval() const {
        if (rational_) return {rat_ - 1, rat_ + 1};
        return {lo_, hi_};
    }

    int sign() const {
        if (rational_) return ufss::sign(rat_);
        Rational lo = lo_, hi = hi_;
        // 0 is never a root of the stored polynomial.
        while (lo < 0 && hi > 0) refine_step(poly_, lo, hi);
        return lo >= 0 ? 1 : -1;
    }

    // Exact sign of g evaluated at this value; 0 iff the value is a root of g.
    int sign_of_poly_at(const QPoly& g) const {
        if (g.is_zero()) return 0;
        if (rational_) return ufss::sign(g.eval(rat_));
        if (is_root_of(g)) return 0;
        QPoly gs = squarefree_part(g);
        Rational lo = lo_, hi = hi_;
        for (;;) {
            if (gs.eval(lo) != 0 && gs.eval(hi) != 0 &&
                SturmChain(gs).count_roots(lo, hi) == 0) {
                return ufss::sign(g.eval(midpoint(lo, hi)));
            }
            refine_step(poly_, lo, hi);
        }
    }

    bool is_root_of(const QPoly& g) const {
        if (g.is_zero()) return true;
        if (rational_) return g.eval(rat_) == 0;
        QPoly h = upoly_gcd(poly_, g);
        if (h.degree() < 1) return false;
        // h divides the minimal-interval polynomial, so it has at most one
        // root in (lo, hi), and that root can only be this value.
        return detail::count_roots_open(h, lo_, hi_) == 1;
    }

    static int compare(const AlgebraicReal& a, const AlgebraicReal& b) {
        if (a.rational_ && b.rational_) {
            if (a.rat_ == b.rat_) return 0;
            return a.rat_ < b.rat_ ? -1 : 1;
        }
        if (a.rational_) return -compare_algebraic_rational(b, a.rat_);
        if (b.rational_) return compare_algebraic_rational(a, b.rat_);

        QPoly g = upoly_gcd(a.poly_, b.poly_);
        bool maybe_equal = g.degree() >= 1 && a.is_root_of(g) && b.is_root_of(g);
        Rational alo = a.lo_, ahi = a.hi_, blo = b.lo_, bhi = b.hi_;
        for (;;) {
            if (ahi <= blo) return -1;
            if (bhi <= alo) return 1;
            if (maybe_equal) {
                Rational lo = alo < blo ? alo : blo;
                Rational hi = ahi > bhi ? ahi : bhi;
                if (g.eval(lo) != 0 && g.eval(hi) != 0 &&
                    detail::count_roots_open(g, lo, hi) == 1)
                    return 0;
            }
            refine_step(a.poly_, alo, ahi);
            refine_step(b.poly_, blo, bhi);
        }
    }

    friend bool operator==(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) == 0; }
    friend bool operator!=(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) != 0; }
    friend bool operator<(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) < 0; }
    friend bool operator<=(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) <= 0; }
    friend bool operator>(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) > 0; }
    friend bool operator>=(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) >= 0; }

    AlgebraicReal operator-() const {
        if (rational_) return AlgebraicReal(Rational(-rat_));
        AlgebraicReal v;
        v.rational_ = false;
        v.poly_ = integer_primitive(poly_.negate_arg());
        v.lo_ = -hi_;
        v.hi_ = -lo_;
        return v;
    }

    friend AlgebraicReal operator+(const AlgebraicReal& a, const AlgebraicReal& b) {
        if (a.rational_ && b.rational_) return AlgebraicReal(Rational(a.rat_ + b.rat_));
        if (b.rational_) return shift_by(a, b.rat_);
        if (a.rational_) return shift_by(b, a.rat_);
        // Roots of Res_y(p_a(y), p_b(x - y)).
        UPoly<QPoly> pa = lift_const(a.poly_);
        UPoly<QPoly> pbs = compose_shift(b.poly_);
        QPoly res = resultant_bivariate(pa, pbs);
        return locate(res, a, b, [](const Rational& x, const Rational& y) { return x + y; });
    }
    friend AlgebraicReal operator-(const AlgebraicReal& a, const AlgebraicReal& b) { return a + (-b); }

    friend AlgebraicReal operator*(const AlgebraicReal& a, const AlgebraicReal& b) {
        if (a.rational_ && b.rational_) return AlgebraicReal(Rational(a.rat_ * b.rat_));
        if (b.rational_) return scale_by(a, b.rat_);
        if (a.rational_) return scale_by(b, a.rat_);
        // Roots of Res_y(p_a(y), y^m p_b(x/y)); stored polynomials never
        // vanish at 0, so the homogenization has full degree in y.
        UPoly<QPoly> pa = lift_const(a.poly_);
        std::vector<QPoly> qc(static_cast<std::size_t>(b.poly_.degree()) + 1);
        for (int j = 0; j <= b.poly_.degree(); ++j) {
            std::vector<Rational> mono(static_cast<std::size_t>(j) + 1, Rational(0));
            mono[static_cast<std::size_t>(j)] = b.poly_.coeff(static_cast<std::size_t>(j));
            qc[static_cast<std::size_t>(b.poly_.degree() - j)] = QPoly(std::move(mono));
        }
        QPoly res = resultant_bivariate(pa, UPoly<QPoly>(std::move(qc)));
        return locate_mul(res, a, b);
    }

    AlgebraicReal inverse() const {
        if (rational_) {
            if (rat_ == 0) throw DomainError("inverse of zero");
            return AlgebraicReal(Rational(1 / rat_));
        }
        Rational lo = lo_, hi = hi_;
        while (lo < 0 && hi > 0) refine_step(poly_, lo, hi);
        return from_poly_interval(poly_.reverse(), 1 / hi, 1 / lo);
    }
    friend AlgebraicReal operator/(const AlgebraicReal& a, const AlgebraicReal& b) { return a * b.inverse(); }

    // Exact image under a univariate rational-coefficient polynomial.
    AlgebraicReal apply_poly(const QPoly& g) const {
        if (g.degree() <= 0) return AlgebraicReal(g.is_zero() ? Rational(0) : g.coeff(0));
        if (rational_) return AlgebraicReal(g.eval(rat_));
        UPoly<QPoly> pa = lift_const(poly_);
        // x - g(y) as a polynomial in y over Q[x].
        std::vector<QPoly> qc(static_cast<std::size_t>(g.degree()) + 1);
        qc[0] = QPoly(std::vector<Rational>{-g.coeff(0), Rational(1)});
        for (int j = 1; j <= g.degree(); ++j) qc[static_cast<std::size_t>(j)] = QPoly::constant(-g.coeff(static_cast<std::size_t>(j)));
        QPoly res = resultant_bivariate(pa, UPoly<QPoly>(std::move(qc)));
        QPoly sf = squarefree_part(res);
        Rational lo = lo_, hi = hi_;
        for (;;) {
            auto [glo, ghi] = eval_interval(g, lo, hi);
            if (glo < ghi && sf.eval(glo) != 0 && sf.eval(ghi) != 0 &&
                detail::count_roots_open(sf, glo, ghi) == 1)
                return from_poly_interval(res, glo, ghi);
            refine_step(poly_, lo, hi);
        }
    }

    // One bisection step on (lo, hi) for squarefree p with exactly one root
    // inside and non-root endpoints.
    static void refine_step(const QPoly& p, Rational& lo, Rational& hi) {
        Rational m = midpoint(lo, hi);
        int sm = ufss::sign(p.eval(m));
        if (sm == 0) {
            // The midpoint is the root itself; pin it arbitrarily tightly.
            Rational w = (hi - lo) / 8;
            lo = m - w;
            hi = m + w;
            return;
        }
        if (sm == ufss::sign(p.eval(lo)))
            lo = m;
        else
            hi = m;
    }

private:
    static int compare_algebraic_rational(const AlgebraicReal& a, const Rational& r) {
        int s = a.sign_of_poly_at(QPoly(std::vector<Rational>{-r, Rational(1)}));
        return s;  // sign of (a - r)
    }

    static AlgebraicReal shift_by(const AlgebraicReal& a, const Rational& r) {
        if (r == 0) return a;
        return from_poly_interval(a.poly_.shift(-r), a.lo_ + r, a.hi_ + r);
    }
    static AlgebraicReal scale_by(const AlgebraicReal& a, const Rational& r) {
        if (r == 0) return AlgebraicReal(Rational(0));
        QPoly q = a.poly_.scale_arg(Rational(1) / r);
        if (r > 0) return from_poly_interval(q, a.lo_ * r, a.hi_ * r);
        return from_poly_interval(q, a.hi_ * r, a.lo_ * r);
    }

    static UPoly<QPoly> lift_const(const QPoly& p) {
        std::vector<QPoly> c(static_cast<std::size_t>(p.degree()) + 1);
        for (int i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(i)] = QPoly::constant(p.coeff(static_cast<std::size_t>(i)));
        return UPoly<QPoly>(std::move(c));
    }
    // p(x - y) as a polynomial in y over Q[x].
    static UPoly<QPoly> compose_shift(const QPoly& p) {
        const int n = p.degree();
        std::vector<QPoly> out(static_cast<std::size_t>(n) + 1, QPoly());
        // (x - y)^j expanded incrementally.
        std::vector<QPoly> pw{QPoly::constant(Rational(1))};
        for (int j = 0; j <= n; ++j) {
            Rational cj = p.coeff(static_cast<std::size_t>(j));
            if (cj != 0)
                for (std::size_t t = 0; t < pw.size(); ++t) out[t] = out[t] + pw[t] * cj;
            if (j == n) break;
            // multiply pw by (x - y): y-coefficients shift and scale
            std::vector<QPoly> next(pw.size() + 1, QPoly());
            QPoly x(std::vector<Rational>{Rational(0), Rational(1)});
            for (std::size_t t = 0; t < pw.size(); ++t) {
                next[t] = next[t] + pw[t] * x;
                next[t + 1] = next[t + 1] - pw[t];
            }
            pw = std::move(next);
        }
        return UPoly<QPoly>(std::move(out));
    }

    static QPoly resultant_bivariate(const UPoly<QPoly>& a, const UPoly<QPoly>& b) {
        QPoly res = resultant(
            a, b, QPoly::constant(Rational(1)), QPoly(),
            [](const QPoly& x, const QPoly& y) {
                auto [q, rem] = x.divmod(y);
                if (!rem.is_zero()) throw std::logic_error("non-exact division in resultant");
                return q;
            });
        if (res.is_zero()) throw std::logic_error("degenerate resultant");
        return res;
    }

    template <typename Combine>
    static AlgebraicReal locate(const QPoly& res, const AlgebraicReal& a, const AlgebraicReal& b, Combine comb) {
        QPoly sf = squarefree_part(res);
        Rational alo = a.lo_, ahi = a.hi_, blo = b.lo_, bhi = b.hi_;
        for (;;) {
            Rational lo = comb(alo, blo), hi = comb(ahi, bhi);
            if (sf.eval(lo) != 0 && sf.eval(hi) != 0 && detail::count_roots_open(sf, lo, hi) == 1)
                return from_poly_interval(res, lo, hi);
            refine_step(a.poly_, alo, ahi);
            refine_step(b.poly_, blo, bhi);
        }
    }

    static AlgebraicReal locate_mul(const QPoly& res, const AlgebraicReal& a, const AlgebraicReal& b) {
        QPoly sf = squarefree_part(res);
        Rational alo = a.lo_, ahi = a.hi_, blo = b.lo_, bhi = b.hi_;
        for (;;) {
            Rational c1 = alo * blo, c2 = alo * bhi, c3 = ahi * blo, c4 = ahi * bhi;
            Rational lo = std::min(std::min(c1, c2), std::min(c3, c4));
            Rational hi = std::max(std::max(c1, c2), std::max(c3, c4));
            if (lo < hi && sf.eval(lo) != 0 && sf.eval(hi) != 0 &&
                detail::count_roots_open(sf, lo, hi) == 1)
                return from_poly_interval(res, lo, hi);
            refine_step(a.poly_, alo, ahi);
            refine_step(b.poly_, blo, bhi);
        }
    }

    // Interval image of g over [lo, hi] by interval Horner evaluation.
    static std::pair<Rational, Rational> eval_interval(const QPoly& g, const Rational& lo, const Rational& hi) {
        Rational rlo(0), rhi(0);
        for (int i = g.degree(); i >= 0; --i) {
            // multiply [rlo, rhi] by [lo, hi]
            Rational c1 = rlo * lo, c2 = rlo * hi, c3 = rhi * lo, c4 = rhi * hi;
            Rational mlo = std::min(std::min(c1, c2), std::min(c3, c4));
            Rational mhi = std::max(std::max(c1, c2), std::max(c3, c4));
            rlo = mlo + g.coeff(static_cast<std::size_t>(i));
            rhi = mhi + g.coeff(static_cast<std::size_t>(i));
        }
        return {rlo, rhi};
    }

    bool rational_;
    Rational rat_;
    QPoly poly_;
    Rational lo_, hi_;
};

namespace detail {
inline std::optional<Rational> rational_root_in_interval(const QPoly& f, Rational lo, Rational hi) {
    QPoly p = integer_primitive(f);
    Int lc = numerator(p.leading());
    if (lc < 0) lc = -lc;
    if (lc > 1000000000) return std::nullopt;
    std::vector<Int> divs;
    for (Int d = 1; d * d <= lc; ++d) {
        if (lc % d == 0) {
            divs.push_back(d);
            if (d * d != lc) divs.push_back(lc / d);
        }
    }
    for (const Int& q : divs) {
        Rational l = lo, h = hi;
        while ((h - l) * q >= 1) AlgebraicReal::refine_step(f, l, h);
        Int a = floor_div(numerator(l) * q, denominator(l)) + 1;
        Rational cand(a, q);
        if (l < cand && cand < h && p.eval(cand) == 0) return cand;
    }
    return std::nullopt;
}
}  // namespace detail

inline std::string to_string(const AlgebraicReal& a) {
    if (a.is_rational()) return to_string(a.rational_value());
    auto [lo, hi] = a.interval();
    std::string s = "root(";
    const QPoly p = a.min_poly();
    for (int i = 0; i <= p.degree(); ++i) {
        if (i) s += ",";
        s += to_string(p.coeff(static_cast<std::size_t>(i)));
    }
    s += ")in(" + to_string(lo) + "," + to_string(hi) + ")";
    return s;
}

using Point = std::vector<AlgebraicReal>;

inline bool point_less(const Point& a, const Point& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int c = AlgebraicReal::compare(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}
inline bool point_eq(const Point& a, const Point& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (AlgebraicReal::compare(a[i], b[i]) != 0) return false;
    return true;
}

inline void sort_dedup_points(std::vector<Point>& pts) {
    std::sort(pts.begin(), pts.end(), point_less);
    pts.erase(std::unique(pts.begin(), pts.end(), point_eq), pts.end());
}

}  // namespace ufss
