#pragma once

// The graded-lexicographic well-order on exponent indices (i_1,...,i_k,r):
// total degree first, ties broken lexicographically. The order has type
// omega; sigma/sigma_inv realize the order isomorphism with the naturals.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ufss/errors.hpp"

namespace ufss {

struct OrderIndex {
    std::vector<unsigned> y_exp;  // exponents of the parameter block
    unsigned z_deg = 0;

    unsigned k() const { return static_cast<unsigned>(y_exp.size()); }
    unsigned total_degree() const {
        unsigned d = z_deg;
        for (unsigned e : y_exp) d += e;
        return d;
    }
    std::vector<unsigned> as_tuple() const {
        std::vector<unsigned> t = y_exp;
        t.push_back(z_deg);
        return t;
    }
    static OrderIndex from_tuple(const std::vector<unsigned>& t) {
        if (t.empty()) throw DimensionError("empty order index");
        OrderIndex a;
        a.y_exp.assign(t.begin(), t.end() - 1);
        a.z_deg = t.back();
        return a;
    }
    friend bool operator==(const OrderIndex& a, const OrderIndex& b) {
        return a.y_exp == b.y_exp && a.z_deg == b.z_deg;
    }
};

inline bool precedes(const OrderIndex& a, const OrderIndex& b) {
    if (a.k() != b.k()) throw DimensionError("order indices of mismatched dimension");
    unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    return a.as_tuple() < b.as_tuple();
}

inline bool precedes_eq(const OrderIndex& a, const OrderIndex& b) {
    return a == b || precedes(a, b);
}

struct OrderIndexLess {
    bool operator()(const OrderIndex& a, const OrderIndex& b) const { return precedes(a, b); }
};

namespace detail {
inline std::uint64_t binom(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    if (r > n - r) r = n - r;
    std::uint64_t acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
    return acc;
}
// number of (dims)-tuples of naturals with sum exactly d
inline std::uint64_t tuples_with_sum(std::uint64_t d, std::uint64_t dims) {
    return binom(d + dims - 1, dims - 1);
}
}  // namespace detail

// n-th element of (N^k x N, <) in increasing order; sigma(0) is the zero index.
inline OrderIndex sigma(std::uint64_t n, unsigned k) {
    const unsigned dims = k + 1;
    std::uint64_t d = 0;
    while (true) {
        std::uint64_t block = detail::tuples_with_sum(d, dims);
        if (n < block) break;
        n -= block;
        ++d;
    }
    // n-th tuple (lexicographically) among dims-tuples with sum d
    std::vector<unsigned> t(dims, 0);
    std::uint64_t rem = d;
    for (unsigned pos = 0; pos + 1 < dims; ++pos) {
        for (std::uint64_t v = 0; v <= rem; ++v) {
            std::uint64_t cnt = detail::tuples_with_sum(rem - v, dims - pos - 1);
            if (n < cnt) {
                t[pos] = static_cast<unsigned>(v);
                rem -= v;
                break;
            }
            n -= cnt;
        }
    }
    t[dims - 1] = static_cast<unsigned>(rem);
    return OrderIndex::from_tuple(t);
}

inline std::uint64_t sigma_inv(const OrderIndex& a) {
    const unsigned dims = a.k() + 1;
    const std::uint64_t d = a.total_degree();
    std::uint64_t rank = 0;
    for (std::uint64_t e = 0; e < d; ++e) rank += detail::tuples_with_sum(e, dims);
    auto t = a.as_tuple();
    std::uint64_t rem = d;
    for (unsigned pos = 0; pos + 1 < dims; ++pos) {
        for (std::uint64_t v = 0; v < t[pos]; ++v)
            rank += detail::tuples_with_sum(rem - v, dims - pos - 1);
        rem -= t[pos];
    }
    return rank;
}

inline std::string to_string(const OrderIndex& a) {
    std::string s = "(";
    for (unsigned e : a.y_exp) s += std::to_string(e) + ",";
    s += std::to_string(a.z_deg) + ")";
    return s;
}

}  // namespace ufss
