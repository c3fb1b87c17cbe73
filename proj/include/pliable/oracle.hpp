#pragma once

// Exhaustive optimum search for desk-scale instances.
//
// Decodability depends only on the row space of the code (an invertible row operation maps every
// span relation among columns to itself), so it suffices to visit one matrix per row space: the
// full-rank K x m matrices in reduced row echelon form. A code of rank r < K has the same row space
// as some full-rank r x m matrix, which the search meets at length r first. The identity satisfies
// every client, so the optimum never exceeds m.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "decoding.hpp"
#include "instance.hpp"
#include "matrix.hpp"

namespace pliable {

class OracleError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The requested enumeration is larger than the configured guard.
class InfeasibleSearch : public OracleError {
    using OracleError::OracleError;
};

/// No code of length <= k_max exists.
class NoCodeWithin : public OracleError {
    using OracleError::OracleError;
};

struct OracleResult {
    std::size_t length = 0;
    Matrix witness;
    std::uint64_t examined = 0;
};

struct OracleLimits {
    std::uint64_t max_matrices = std::uint64_t{1} << 30;
    std::uint64_t max_fittings = std::uint64_t{1} << 28;
};

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    return p > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                        : static_cast<std::uint64_t>(p);
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::size_t e) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) r = saturating_mul(r, base);
    return r;
}

}  // namespace detail

/// Number of k-dimensional subspaces of F_q^m (saturates at 2^64 - 1).
inline std::uint64_t gaussian_binomial(std::size_t m, std::size_t k, std::uint64_t q) {
    if (k > m) return 0;
    // Sum over pivot sets of q^(free entries), computed by dynamic programming over columns:
    // dp[r] = weighted count of ways to place r pivots in the columns seen so far.
    std::vector<std::uint64_t> dp(k + 1, 0);
    dp[0] = 1;
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t r = std::min(k, c + 1); r >= 1; --r) {
            // column c is either pivot number r, or a free column for the r rows above (reading
            // rows in order, a non-pivot column contributes one free entry per existing pivot).
            const std::uint64_t as_free = detail::saturating_mul(dp[r], detail::saturating_pow(q, r));
            const std::uint64_t sum = as_free + dp[r - 1];
            dp[r] = sum < as_free ? std::numeric_limits<std::uint64_t>::max() : sum;
        }
    }
    return dp[k];
}

namespace detail {

// Every request set fits in a 64-bit mask over its positions, every column in a K-bit mask.
inline bool client_ok_gf2(const std::vector<std::uint64_t>& col, const IndexSet& r, std::size_t t) {
    std::uint64_t basis[64], combo[64];
    unsigned pivot[64];
    std::size_t nb = 0;
    std::uint64_t touched = 0;
    for (std::size_t k = 0; k < r.size(); ++k) {
        std::uint64_t v = col[r[k]];
        std::uint64_t c = std::uint64_t{1} << k;
        for (std::size_t b = 0; b < nb; ++b) {
            if ((v >> pivot[b]) & 1U) {
                v ^= basis[b];
                c ^= combo[b];
            }
        }
        if (v) {
            pivot[nb] = static_cast<unsigned>(std::countr_zero(v));
            basis[nb] = v;
            combo[nb] = c;
            ++nb;
        } else {
            touched |= c;
        }
    }
    return r.size() - static_cast<std::size_t>(std::popcount(touched)) >= t;
}

struct EchelonEnumerator {
    std::size_t k, m;
    std::uint32_t q;
    std::vector<std::size_t> pivots;
    std::vector<std::pair<std::size_t, std::size_t>> free;
    std::vector<std::uint32_t> digits;

    void layout() {
        free.clear();
        std::vector<bool> is_pivot(m, false);
        for (auto p : pivots) is_pivot[p] = true;
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = pivots[r] + 1; c < m; ++c)
                if (!is_pivot[c]) free.emplace_back(r, c);
        digits.assign(free.size(), 0);
    }

    bool next_digits() {
        for (auto& d : digits) {
            if (++d < q) return true;
            d = 0;
        }
        return false;
    }

    bool next_pivots() {
        // lexicographic next combination of k out of m
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (pivots[i] < m - k + i) {
                ++pivots[i];
                for (std::size_t j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
                return true;
            }
        }
        return false;
    }

    Matrix matrix() const {
        Matrix a(q, k, m);
        for (std::size_t r = 0; r < k; ++r) a.set(r, pivots[r], 1);
        for (std::size_t f = 0; f < free.size(); ++f) a.set(free[f].first, free[f].second, digits[f]);
        return a;
    }

    std::vector<std::uint64_t> masks() const {
        std::vector<std::uint64_t> col(m, 0);
        for (std::size_t r = 0; r < k; ++r) col[pivots[r]] |= std::uint64_t{1} << r;
        for (std::size_t f = 0; f < free.size(); ++f)
            if (digits[f]) col[free[f].second] |= std::uint64_t{1} << free[f].first;
        return col;
    }
};

inline bool satisfies_all(const Matrix& a, const Instance& inst) {
    for (const auto& r : inst.requests)
        if (decodable_set(a, r).size() < inst.t) return false;
    return true;
}

}  // namespace detail

/// Shortest linear code over F_q satisfying every client, by exhaustive search over row spaces.
inline OracleResult optimal_code_length(const Instance& inst, std::uint32_t q, std::size_t k_max,
                                        const OracleLimits& limits = {}) {
    require_valid(inst);
    PrimeField field(q);
    const std::size_t m = inst.m;
    const std::size_t k_top = std::min(k_max, m);
    const bool fast = q == 2 && m <= 64 &&
                      std::all_of(inst.requests.begin(), inst.requests.end(), [](const IndexSet& r) { return r.size() <= 64; });

    OracleResult res;
    for (std::size_t k = 1; k <= k_top; ++k) {
        // Checked per length so that an optimum found early is never blocked by a larger K.
        const auto count = gaussian_binomial(m, k, q);
        if (count > limits.max_matrices) {
            throw InfeasibleSearch("search at length " + std::to_string(k) + " visits " + std::to_string(count) +
                                   " matrices, above the limit of " + std::to_string(limits.max_matrices));
        }
        detail::EchelonEnumerator en{k, m, field.order(), {}, {}, {}};
        en.pivots.resize(k);
        for (std::size_t r = 0; r < k; ++r) en.pivots[r] = r;
        do {
            en.layout();
            do {
                ++res.examined;
                bool ok;
                if (fast) {
                    const auto col = en.masks();
                    ok = std::all_of(inst.requests.begin(), inst.requests.end(),
                                     [&](const IndexSet& r) { return detail::client_ok_gf2(col, r, inst.t); });
                } else {
                    ok = detail::satisfies_all(en.matrix(), inst);
                }
                if (ok) {
                    res.length = k;
                    res.witness = en.matrix();
                    return res;
                }
            } while (en.next_digits());
        } while (en.next_pivots());
    }
    throw NoCodeWithin("no code of length at most " + std::to_string(k_max) + " satisfies every client");
}

/// Minimum rank over all matrices fitting the instance: row i has a single 1 on some j in R_i,
/// zeros on the rest of R_i, and arbitrary entries on the side information.
inline std::size_t minrank_fit(const Instance& inst, std::uint32_t q, const OracleLimits& limits = {}) {
    require_valid(inst);
    if (inst.t != 1) throw std::invalid_argument("minrank_fit handles t = 1 only");
    PrimeField field(q);
    const std::size_t m = inst.m;
    std::uint64_t total = 1;
    std::vector<IndexSet> side(inst.n());
    for (std::size_t i = 0; i < inst.n(); ++i) {
        std::vector<bool> req(m, false);
        for (auto j : inst.requests[i]) req[j] = true;
        for (std::size_t j = 0; j < m; ++j)
            if (!req[j]) side[i].push_back(j);
        total = detail::saturating_mul(total, detail::saturating_mul(inst.requests[i].size(),
                                                                     detail::saturating_pow(q, side[i].size())));
    }
    if (total > limits.max_fittings) {
        throw InfeasibleSearch("minrank search visits " + std::to_string(total) + " fitting matrices, above the limit of " +
                               std::to_string(limits.max_fittings));
    }

    // Every fitting matrix has rank at most m, so m is a valid starting bound.
    std::size_t best = m;
    auto dfs = [&](auto&& self, std::size_t i, const RowSpace& space) -> void {
        if (space.dimension() >= best) return;
        if (i == inst.n()) {
            best = space.dimension();
            return;
        }
        const auto& s = side[i];
        std::vector<Elem> row(m, 0);
        for (auto jstar : inst.requests[i]) {
            std::vector<Elem> digits(s.size(), 0);
            for (;;) {
                std::fill(row.begin(), row.end(), 0);
                row[jstar] = 1;
                for (std::size_t k = 0; k < s.size(); ++k) row[s[k]] = digits[k];
                RowSpace next = space;
                next.insert(row);
                self(self, i + 1, next);
                std::size_t k = 0;
                while (k < digits.size() && ++digits[k] == q) digits[k++] = 0;
                if (k == digits.size()) break;
            }
        }
    };
    dfs(dfs, 0, RowSpace(field.order(), m));
    return best;
}

}  // namespace pliable
