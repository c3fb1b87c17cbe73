#pragma once

// Independent reference implementations for tests. Nothing here uses rank arithmetic: decodability
// is decided by listing every payload consistent with what a client hears and knows, and optimal
// lengths by trying every matrix.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "pliable/pliable.hpp"

namespace brute {

using pliable::Elem;
using pliable::IndexSet;
using pliable::Instance;
using pliable::Matrix;

// Advances a base-q odometer; false once it wraps to all zeros.
inline bool next(std::vector<Elem>& digits, std::uint32_t q) {
    for (auto& d : digits) {
        if (++d < q) return true;
        d = 0;
    }
    return false;
}

inline std::vector<Elem> mat_vec(const Matrix& a, const std::vector<Elem>& b) {
    std::vector<Elem> x(a.rows(), 0);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        std::uint64_t s = 0;
        for (std::size_t c = 0; c < a.cols(); ++c) s += static_cast<std::uint64_t>(a.at(r, c)) * b[c];
        x[r] = static_cast<Elem>(s % a.q());
    }
    return x;
}

/// The client holds every coordinate outside `unknown` (positions into b) and hears x = A b.
/// Returns, per unknown position, whether it takes the same value in every candidate b'.
inline std::vector<bool> constant_positions(const Matrix& a, const std::vector<Elem>& b, const IndexSet& unknown) {
    const auto x = mat_vec(a, b);
    std::vector<Elem> digits(unknown.size(), 0), first;
    std::vector<bool> constant(unknown.size(), true);
    bool seen = false;
    do {
        auto cand = b;
        for (std::size_t k = 0; k < unknown.size(); ++k) cand[unknown[k]] = digits[k];
        if (mat_vec(a, cand) != x) continue;
        if (!seen) {
            first = digits;
            seen = true;
        } else {
            for (std::size_t k = 0; k < unknown.size(); ++k)
                if (digits[k] != first[k]) constant[k] = false;
        }
    } while (next(digits, a.q()));
    return constant;
}

/// Messages of R recoverable by a client with side information [m] \ R, by solution enumeration.
inline IndexSet decodable(const Matrix& a, const IndexSet& r, const std::vector<Elem>& b) {
    const auto constant = constant_positions(a, b, r);
    IndexSet out;
    for (std::size_t k = 0; k < r.size(); ++k)
        if (constant[k]) out.push_back(r[k]);
    return out;
}

/// Vector version: message j occupies positions j*L .. j*L+L-1 of b; j counts only if all of them
/// are determined.
inline IndexSet vector_decodable(const Matrix& a, std::size_t l, const IndexSet& r, const std::vector<Elem>& b) {
    IndexSet unknown;
    for (auto j : r)
        for (std::size_t s = 0; s < l; ++s) unknown.push_back(j * l + s);
    const auto constant = constant_positions(a, b, unknown);
    IndexSet out;
    for (std::size_t k = 0; k < r.size(); ++k) {
        bool all = true;
        for (std::size_t s = 0; s < l; ++s) all = all && constant[k * l + s];
        if (all) out.push_back(r[k]);
    }
    return out;
}

inline bool all_satisfied(const Matrix& a, const Instance& inst, std::mt19937_64& rng) {
    std::vector<Elem> b(inst.m);
    for (auto& e : b) e = static_cast<Elem>(rng() % a.q());
    for (const auto& r : inst.requests)
        if (decodable(a, r, b).size() < inst.t) return false;
    return true;
}

/// Smallest K such that some K x m matrix (every entry assignment) satisfies every client.
/// Only for very small q^(K m).
inline std::size_t min_length(const Instance& inst, std::uint32_t q) {
    std::mt19937_64 rng(7);
    for (std::size_t k = 1; k <= inst.m; ++k) {
        std::vector<Elem> digits(k * inst.m, 0);
        do {
            Matrix a(q, k, inst.m);
            for (std::size_t i = 0; i < digits.size(); ++i) a.set(i / inst.m, i % inst.m, digits[i]);
            if (all_satisfied(a, inst, rng)) return k;
        } while (next(digits, q));
    }
    return inst.m;
}

inline Matrix random_matrix(std::mt19937_64& rng, std::uint32_t q, std::size_t rows, std::size_t cols) {
    Matrix a(q, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) a.set(r, c, static_cast<Elem>(rng() % q));
    return a;
}

inline IndexSet random_subset(std::mt19937_64& rng, std::size_t m) {
    for (;;) {
        IndexSet s;
        for (std::size_t j = 0; j < m; ++j)
            if (rng() & 1U) s.push_back(j);
        if (!s.empty()) return s;
    }
}

inline std::vector<Elem> random_vector(std::mt19937_64& rng, std::uint32_t q, std::size_t n) {
    std::vector<Elem> v(n);
    for (auto& e : v) e = static_cast<Elem>(rng() % q);
    return v;
}

/// Every instance over m messages with n distinct nonempty request sets, for n = 1..max_n.
inline std::vector<Instance> all_small_instances(std::size_t m, std::size_t max_n) {
    const auto subsets = pliable::nonempty_subsets(m);
    std::vector<Instance> out;
    const std::size_t count = subsets.size();
    for (std::uint32_t mask = 1; mask < (1U << count); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) > max_n) continue;
        Instance inst;
        inst.m = m;
        for (std::size_t k = 0; k < count; ++k)
            if (mask >> k & 1U) inst.requests.push_back(subsets[k]);
        out.push_back(std::move(inst));
    }
    return out;
}

/// The all 1- and 2-subsets family on m messages.
inline Instance small_subsets_instance(std::size_t m) {
    Instance inst;
    inst.m = m;
    for (std::size_t j = 0; j < m; ++j) inst.requests.push_back({j});
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) inst.requests.push_back({a, b});
    return inst;
}

/// Five clients on four messages; client 4 requests {1,3,4} (1-based).
inline Instance five_clients() {
    Instance inst;
    inst.m = 4;
    inst.requests = {{0, 1}, {0}, {1, 2}, {0, 2, 3}, {1, 3}};
    return inst;
}

}  // namespace brute
