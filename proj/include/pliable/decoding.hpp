#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "instance.hpp"
#include "matrix.hpp"

namespace pliable {

namespace detail {

inline void check_request_set(const IndexSet& r, std::size_t cols) {
    if (r.empty()) throw std::invalid_argument("request set must be nonempty");
    for (auto j : r)
        if (j >= cols) throw std::invalid_argument("request index exceeds the number of code columns");
}

// Positions k of `cols` that appear in some linear dependency among them. The dependencies are
// found by column-wise elimination that tracks which inputs were combined; one relation per
// dependent column gives a basis of the null space, and the union of the supports of a basis
// equals the union over the whole null space.
inline std::vector<bool> dependent_positions_gf2(const Matrix& a, const IndexSet& cols) {
    const std::size_t k = cols.size();
    std::vector<gf2::BitVector> basis, combos;
    std::vector<std::size_t> pivots;
    gf2::BitVector touched(k);
    for (std::size_t idx = 0; idx < k; ++idx) {
        auto v = gf2::pack(a.column(cols[idx]));
        gf2::BitVector combo(k);
        combo.set(idx);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (v.get(pivots[b])) {
                v ^= basis[b];
                combo ^= combos[b];
            }
        }
        if (v.any()) {
            pivots.push_back(v.lowest());
            basis.push_back(std::move(v));
            combos.push_back(std::move(combo));
        } else {
            for (std::size_t i = 0; i < k; ++i)
                if (combo.get(i)) touched.set(i);
        }
    }
    std::vector<bool> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = touched.get(i);
    return out;
}

inline std::vector<bool> dependent_positions_generic(const Matrix& a, const IndexSet& cols) {
    const PrimeField f(a.q());
    const std::size_t k = cols.size();
    const std::size_t rows = a.rows();
    std::vector<std::vector<Elem>> basis, combos;
    std::vector<std::size_t> pivots;
    std::vector<bool> out(k, false);
    for (std::size_t idx = 0; idx < k; ++idx) {
        auto v = a.column(cols[idx]);
        std::vector<Elem> combo(k, 0);
        combo[idx] = 1;
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const Elem c = v[pivots[b]];
            if (c == 0) continue;
            for (std::size_t i = 0; i < rows; ++i) v[i] = f.sub(v[i], f.mul(c, basis[b][i]));
            for (std::size_t i = 0; i < k; ++i) combo[i] = f.sub(combo[i], f.mul(c, combos[b][i]));
        }
        const auto it = std::find_if(v.begin(), v.end(), [](Elem e) { return e != 0; });
        if (it == v.end()) {
            for (std::size_t i = 0; i < k; ++i)
                if (combo[i]) out[i] = true;
            continue;
        }
        const auto p = static_cast<std::size_t>(it - v.begin());
        const Elem s = f.inv(v[p]);
        for (auto& e : v) e = f.mul(e, s);
        for (auto& e : combo) e = f.mul(e, s);
        pivots.push_back(p);
        basis.push_back(std::move(v));
        combos.push_back(std::move(combo));
    }
    return out;
}

}  // namespace detail

/// Messages j in `requests` that a client can decode from code A: those whose column is not in
/// the span of the other requested columns.
inline IndexSet decodable_set(const Matrix& a, const IndexSet& requests) {
    detail::check_request_set(requests, a.cols());
    const auto dependent = a.q() == 2 ? detail::dependent_positions_gf2(a, requests)
                                      : detail::dependent_positions_generic(a, requests);
    IndexSet out;
    for (std::size_t k = 0; k < requests.size(); ++k)
        if (!dependent[k]) out.push_back(requests[k]);
    return out;
}

struct SatisfactionReport {
    std::size_t t = 1;
    std::vector<IndexSet> decodable;
    std::vector<bool> satisfied;
    std::size_t satisfied_count = 0;
    std::size_t unsatisfied_count = 0;

    bool all_satisfied() const { return unsatisfied_count == 0; }
};

inline SatisfactionReport verify(const Matrix& a, const Instance& inst) {
    if (a.cols() != inst.m) throw std::invalid_argument("code has " + std::to_string(a.cols()) +
                                                        " columns but the instance has " +
                                                        std::to_string(inst.m) + " messages");
    SatisfactionReport rep;
    rep.t = inst.t;
    rep.decodable.reserve(inst.n());
    for (const auto& r : inst.requests) {
        rep.decodable.push_back(decodable_set(a, r));
        const bool ok = rep.decodable.back().size() >= inst.t;
        rep.satisfied.push_back(ok);
        ++(ok ? rep.satisfied_count : rep.unsatisfied_count);
    }
    return rep;
}

/// Vector code: each of m messages consists of L sub-messages; columns (j*L .. j*L+L-1) of
/// `base` belong to message j.
struct VectorCode {
    Matrix base;
    std::size_t sub_messages = 1;
    std::size_t messages = 0;

    VectorCode(Matrix b, std::size_t l, std::size_t m) : base(std::move(b)), sub_messages(l), messages(m) {
        if (l == 0) throw std::invalid_argument("vector code needs L >= 1");
        if (base.cols() != m * l) throw std::invalid_argument("vector code columns must equal m * L");
    }

    IndexSet block(std::size_t j) const {
        IndexSet cols(sub_messages);
        for (std::size_t l = 0; l < sub_messages; ++l) cols[l] = j * sub_messages + l;
        return cols;
    }

    /// Code length normalized by L.
    double equivalent_length() const { return static_cast<double>(base.rows()) / static_cast<double>(sub_messages); }
};

/// Messages j in `requests` whose whole block is decodable: the block has full rank L and its span
/// meets the span of the other requested blocks only in zero.
inline IndexSet vector_decodable_set(const VectorCode& code, const IndexSet& requests) {
    detail::check_request_set(requests, code.messages);
    IndexSet out;
    for (auto j : requests) {
        IndexSet own = code.block(j);
        IndexSet others;
        for (auto o : requests) {
            if (o == j) continue;
            auto b = code.block(o);
            others.insert(others.end(), b.begin(), b.end());
        }
        IndexSet all = others;
        all.insert(all.end(), own.begin(), own.end());
        const std::size_t own_rank = rank(code.base.select_columns(own));
        if (own_rank != code.sub_messages) continue;
        const std::size_t other_rank = rank(code.base.select_columns(others));
        if (rank(code.base.select_columns(all)) == own_rank + other_rank) out.push_back(j);
    }
    return out;
}

}  // namespace pliable
