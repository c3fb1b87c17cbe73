#pragma once

// Bound calculators for random bipartite instances B(m, n, p). Logarithms are base 2.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "matrix.hpp"

namespace pliable {

inline const double kGoldenThreshold = (std::sqrt(5.0) - 1.0) / 2.0;

enum class BoundRegime { sparse, dense };

inline const char* regime_name(BoundRegime r) { return r == BoundRegime::sparse ? "sparse" : "dense"; }

namespace detail {

inline void check_bound_args(std::size_t n, double p) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie strictly between 0 and 1");
}

}  // namespace detail

inline BoundRegime bound_regime(double p) { return p <= kGoldenThreshold ? BoundRegime::sparse : BoundRegime::dense; }

/// High-probability lower bound on the linear code length for B(m, n, p).
inline double lower_bound(std::size_t n, double p) {
    detail::check_bound_args(n, p);
    const double l = std::log2(static_cast<double>(n));
    if (bound_regime(p) == BoundRegime::sparse) return l / (4.0 * std::log2(1.0 / p));
    return l / (2.0 * std::log2(1.0 / (1.0 - p)));
}

/// Row count R = ceil(3 / log2(e / (e - 1)) * log2 n) of the constant-weight construction.
inline std::size_t constant_weight_rows(std::size_t n) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    const double e = std::exp(1.0);
    return static_cast<std::size_t>(std::ceil(3.0 / std::log2(e / (e - 1.0)) * std::log2(static_cast<double>(n))));
}

/// Ones per row: 1/p rounded to the nearest integer, at least 1.
inline std::size_t constant_weight_weight(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in (0, 1]");
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(1.0 / p)));
}

/// R x m binary matrix whose row r has w ones at columns r*w .. r*w + w - 1.
inline Matrix constant_weight_code(std::size_t m, std::size_t n, double p) {
    detail::check_bound_args(n, p);
    const std::size_t rows = constant_weight_rows(n);
    const std::size_t w = constant_weight_weight(p);
    if (m < rows * w) {
        throw std::invalid_argument("constant-weight code needs m >= " + std::to_string(rows * w) + " (R = " +
                                    std::to_string(rows) + ", w = " + std::to_string(w) + "), got m = " +
                                    std::to_string(m));
    }
    Matrix a(2, rows, m);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = r * w; c < (r + 1) * w; ++c) a.set(r, c, 1);
    return a;
}

struct BoundReport {
    std::size_t n = 0;
    double p = 0.0;
    double lower_bound = 0.0;
    std::size_t constructive_rows = 0;
    std::size_t weight = 0;
    BoundRegime regime = BoundRegime::sparse;
    std::optional<std::size_t> m;
    // Whether the construction fits into m columns; present only when m is given.
    std::optional<bool> fits;
};

inline BoundReport bound_report(std::size_t n, double p, std::optional<std::size_t> m = std::nullopt) {
    BoundReport rep;
    rep.n = n;
    rep.p = p;
    rep.lower_bound = lower_bound(n, p);
    rep.constructive_rows = constant_weight_rows(n);
    rep.weight = constant_weight_weight(p);
    rep.regime = bound_regime(p);
    if (m) {
        rep.m = m;
        rep.fits = *m >= rep.constructive_rows * rep.weight;
    }
    return rep;
}

}  // namespace pliable
