#pragma once

// Exact real root isolation. Over rational coefficients this is classic
// Sturm bisection. Over algebraic coefficients, a rational polynomial whose
// roots contain all candidates is obtained by resultant elimination of the
// coefficient values; each candidate is then accepted or rejected by
// interval arithmetic with an exact algebraic fallback.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ufss/algebraic_real.hpp"
#include "ufss/poly.hpp"
#include "ufss/upoly.hpp"

namespace ufss {

// All distinct real roots in increasing order. Throws on the zero polynomial.
inline std::vector<AlgebraicReal> isolate_roots(const QPoly& p) {
    if (p.is_zero()) throw DomainError("root isolation of the zero polynomial");
    std::vector<AlgebraicReal> out;
    QPoly f = squarefree_part(p);
    // Exact rational roots discovered during bisection are split off and the
    // polynomial is reduced, so restart after each hit.
    for (;;) {
        if (f.degree() < 1) break;
        Rational bound = cauchy_root_bound(f);
        if (f.eval(-bound) == 0 || f.eval(bound) == 0) bound += 1;
        SturmChain chain(f);
        struct Seg {
            Rational lo, hi;
            int count;
        };
        std::vector<Seg> work{{-bound, bound, chain.count_roots(-bound, bound)}};
        bool restarted = false;
        while (!work.empty() && !restarted) {
            Seg s = work.back();
            work.pop_back();
            if (s.count == 0) continue;
            if (s.count == 1) {
                out.push_back(AlgebraicReal::from_poly_interval(f, s.lo, s.hi));
                continue;
            }
            Rational m = midpoint(s.lo, s.hi);
            if (f.eval(m) == 0) {
                out.push_back(AlgebraicReal(m));
                f = detail::strip_root(f, m);
                restarted = true;
                break;
            }
            work.push_back({s.lo, m, chain.count_roots(s.lo, m)});
            work.push_back({m, s.hi, chain.count_roots(m, s.hi)});
        }
        if (!restarted) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

// Determinant by Laplace expansion over a commutative ring without division.
// Only used for small elimination matrices.
inline Poly det_expansion(const std::vector<std::vector<Poly>>& m) {
    const std::size_t n = m.size();
    if (n == 0) throw std::logic_error("empty determinant");
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Poly acc(m[0][0].num_vars());
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<Poly>> minor;
        minor.reserve(n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Poly> row;
            row.reserve(n - 1);
            for (std::size_t jj = 0; jj < n; ++jj)
                if (jj != j) row.push_back(m[i][jj]);
            minor.push_back(std::move(row));
        }
        Poly term = m[0][j] * det_expansion(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

// Res_w(a, b) for polynomials in variable w of a shared multivariate space;
// the result no longer involves w.
inline Poly resultant_in_var(const Poly& a, const Poly& b, unsigned w) {
    const unsigned da = a.degree_in(w), db = b.degree_in(w);
    if (da == 0 && db == 0) throw std::logic_error("resultant without the variable");
    auto coeff_of = [&](const Poly& p, unsigned d) {
        Poly c(p.num_vars());
        for (const auto& [e, v] : p.terms()) {
            if (e[w] != d) continue;
            auto e2 = e;
            e2[w] = 0;
            c.add_term(e2, v);
        }
        return c;
    };
    const std::size_t n = da + db;
    if (n > 14) throw std::logic_error("elimination matrix too large");
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n, Poly(a.num_vars())));
    for (unsigned row = 0; row < db; ++row)
        for (unsigned i = 0; i <= da; ++i) m[row][row + da - i] = coeff_of(a, i);
    for (unsigned row = 0; row < da; ++row)
        for (unsigned i = 0; i <= db; ++i) m[db + row][row + db - i] = coeff_of(b, i);
    return det_expansion(m);
}

// Working view of an algebraic value as a refinable interval.
struct RefinableValue {
    bool rational = false;
    Rational exact;
    QPoly poly;
    Rational lo, hi;

    static RefinableValue of(const AlgebraicReal& a) {
        RefinableValue v;
        if (a.is_rational()) {
            v.rational = true;
            v.exact = a.rational_value();
            v.lo = v.hi = v.exact;
        } else {
            v.poly = a.min_poly();
            auto [l, h] = a.interval();
            v.lo = l;
            v.hi = h;
        }
        return v;
    }
    void refine() {
        if (!rational) AlgebraicReal::refine_step(poly, lo, hi);
    }
};

struct IntervalQ {
    Rational lo, hi;
    IntervalQ operator+(const IntervalQ& o) const { return {lo + o.lo, hi + o.hi}; }
    IntervalQ operator*(const IntervalQ& o) const {
        Rational c1 = lo * o.lo, c2 = lo * o.hi, c3 = hi * o.lo, c4 = hi * o.hi;
        return {std::min(std::min(c1, c2), std::min(c3, c4)),
                std::max(std::max(c1, c2), std::max(c3, c4))};
    }
    bool excludes_zero() const { return lo > 0 || hi < 0; }
    bool is_exact_zero() const { return lo == 0 && hi == 0; }
};

// Interval Horner evaluation of sum coeffs[i] * x^i over interval x.
inline IntervalQ horner_interval(const std::vector<RefinableValue>& coeffs, const IntervalQ& x) {
    IntervalQ acc{0, 0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * x + IntervalQ{it->lo, it->hi};
    return acc;
}

// Exact sign of sum coeffs[i] * x^i at rational x; refines coefficient
// intervals, falling back to exact algebraic arithmetic when stalled.
inline int exact_sign_at(const std::vector<AlgebraicReal>& coeffs,
                         std::vector<RefinableValue>& work, const Rational& x) {
    IntervalQ xi{x, x};
    for (int round = 0; round < 64; ++round) {
        IntervalQ v = horner_interval(work, xi);
        if (v.excludes_zero()) return v.lo > 0 ? 1 : -1;
        if (v.is_exact_zero()) return 0;
        for (auto& w : work) w.refine();
    }
    AlgebraicReal acc{Rational(0)};
    AlgebraicReal xr{x};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * xr + *it;
    return acc.sign();
}

}  // namespace detail

// Roots of q(z) = sum coeffs[i] z^i with exact algebraic coefficients.
inline std::vector<AlgebraicReal> isolate_roots_algebraic(std::vector<AlgebraicReal> coeffs) {
    while (!coeffs.empty() && coeffs.back().sign() == 0) coeffs.pop_back();
    if (coeffs.empty()) throw DomainError("root isolation of the zero polynomial");
    if (coeffs.size() == 1) return {};
    bool all_rational = true;
    for (const auto& c : coeffs) all_rational = all_rational && c.is_rational();
    if (all_rational) {
        std::vector<Rational> qc;
        qc.reserve(coeffs.size());
        for (const auto& c : coeffs) qc.push_back(c.rational_value());
        return isolate_roots(QPoly(std::move(qc)));
    }

    // Rational polynomial containing every root: eliminate the distinct
    // irrational coefficient values by resultants.
    std::vector<AlgebraicReal> distinct;
    std::vector<int> which(coeffs.size(), -1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_rational()) continue;
        for (std::size_t j = 0; j < distinct.size(); ++j)
            if (AlgebraicReal::compare(distinct[j], coeffs[i]) == 0) {
                which[i] = static_cast<int>(j);
                break;
            }
        if (which[i] < 0) {
            distinct.push_back(coeffs[i]);
            which[i] = static_cast<int>(distinct.size()) - 1;
        }
    }
    const unsigned t = static_cast<unsigned>(distinct.size());
    // variables: w_0..w_{t-1}, z
    Poly big(t + 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        Poly c = which[i] < 0 ? Poly::constant(t + 1, coeffs[i].rational_value())
                              : Poly::variable(t + 1, static_cast<unsigned>(which[i]));
        big = big + c * Poly::variable(t + 1, t).pow(static_cast<unsigned>(i));
    }
    for (unsigned j = 0; j < t; ++j) {
        const QPoly mj = distinct[j].min_poly();
        Poly mpoly(big.num_vars());
        for (int d = 0; d <= mj.degree(); ++d) {
            Poly::Exponents e(big.num_vars(), 0);
            e[j] = static_cast<unsigned>(d);
            mpoly.add_term(e, mj.coeff(static_cast<std::size_t>(d)));
        }
        big = detail::resultant_in_var(mpoly, big, j);
        if (big.is_zero()) throw std::logic_error("degenerate coefficient elimination");
    }
    QPoly defining = squarefree_part(big.as_univariate(t));
    std::vector<AlgebraicReal> candidates = isolate_roots(defining);

    std::vector<detail::RefinableValue> work;
    work.reserve(coeffs.size());
    for (const auto& c : coeffs) work.push_back(detail::RefinableValue::of(c));

    std::vector<AlgebraicReal> out;
    for (const auto& cand : candidates) {
        detail::RefinableValue th = detail::RefinableValue::of(cand);
        bool decided = false, accepted = false;
        if (th.rational) {
            // exact membership at a rational candidate
            int s = detail::exact_sign_at(coeffs, work, th.exact);
            decided = true;
            accepted = (s == 0);
        }
        for (int round = 0; round < 48 && !decided; ++round) {
            detail::IntervalQ v = detail::horner_interval(work, {th.lo, th.hi});
            if (v.excludes_zero()) {
                decided = true;
                accepted = false;
                break;
            }
            // the candidate is the only possible root inside its isolating
            // interval, so a sign change certifies membership
            int sl = detail::exact_sign_at(coeffs, work, th.lo);
            int sr = detail::exact_sign_at(coeffs, work, th.hi);
            if (sl != 0 && sr != 0 && sl != sr) {
                decided = true;
                accepted = true;
                break;
            }
            th.refine();
            for (auto& w : work) w.refine();
        }
        if (!decided) {
            // even-multiplicity or adversarial case: exact evaluation
            AlgebraicReal acc{Rational(0)};
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * cand + *it;
            accepted = acc.sign() == 0;
        }
        if (accepted) out.push_back(cand);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ufss
