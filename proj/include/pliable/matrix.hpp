#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"

namespace pliable {

/// Dense row-major matrix over a prime field F_q.
class Matrix {
  public:
    Matrix() : q_(2) {}
    Matrix(std::uint32_t q, std::size_t rows, std::size_t cols)
        : q_(PrimeField(q).order()), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static Matrix from_rows(std::uint32_t q, const std::vector<std::vector<std::int64_t>>& rows,
                            std::size_t cols_if_empty = 0) {
        const std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
        Matrix m(q, rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
            for (std::size_t c = 0; c < cols; ++c) {
                const auto v = rows[r][c];
                if (v < 0 || v >= static_cast<std::int64_t>(q)) {
                    throw std::invalid_argument("matrix entry " + std::to_string(v) + " outside [0, " +
                                                std::to_string(q) + ")");
                }
                m.set(r, c, static_cast<Elem>(v));
            }
        }
        return m;
    }

    static Matrix identity(std::uint32_t q, std::size_t n) {
        Matrix m(q, n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    std::uint32_t q() const { return q_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, Elem v) { data_[r * cols_ + c] = v % q_; }

    std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::vector<Elem> column(std::size_t c) const {
        std::vector<Elem> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
        return out;
    }

    Matrix select_columns(std::span<const std::size_t> cols) const {
        Matrix out(q_, rows_, cols.size());
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (cols[k] >= cols_) throw std::out_of_range("column index out of range");
            for (std::size_t r = 0; r < rows_; ++r) out.set(r, k, at(r, cols[k]));
        }
        return out;
    }

    Matrix select_rows(std::span<const std::size_t> rows) const {
        Matrix out(q_, rows.size(), cols_);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (rows[k] >= rows_) throw std::out_of_range("row index out of range");
            std::copy_n(data_.begin() + rows[k] * cols_, cols_, out.data_.begin() + k * cols_);
        }
        return out;
    }

    Matrix transpose() const {
        Matrix out(q_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out.set(c, r, at(r, c));
        return out;
    }

    /// [this | v] for a column vector v with rows() entries.
    Matrix augment(std::span<const Elem> v) const {
        if (v.size() != rows_) throw std::invalid_argument("augment: dimension mismatch");
        Matrix out(q_, rows_, cols_ + 1);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) out.set(r, c, at(r, c));
            out.set(r, cols_, v[r]);
        }
        return out;
    }

    /// Stacks `below` under this matrix.
    void append_rows(const Matrix& below) {
        if (rows_ == 0 && cols_ == 0) {
            q_ = below.q_;
            cols_ = below.cols_;
        }
        if (below.q_ != q_) throw std::invalid_argument("append_rows: field mismatch");
        if (below.cols_ != cols_) throw std::invalid_argument("append_rows: column mismatch");
        data_.insert(data_.end(), below.data_.begin(), below.data_.end());
        rows_ += below.rows_;
    }

    std::string to_string() const {
        std::ostringstream os;
        for (std::size_t r = 0; r < rows_; ++r) {
            os << '[';
            for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << at(r, c);
            os << "]\n";
        }
        return os.str();
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.q_ == b.q_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    std::uint32_t q_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

/// Incrementally built echelon basis of a subspace of F_q^dim.
/// Each stored vector is normalized so that its pivot (first nonzero entry) is 1,
/// and is reduced against every earlier basis vector.
class RowSpace {
  public:
    RowSpace(std::uint32_t q, std::size_t dim) : field_(q), dim_(dim) {}

    std::size_t dimension() const { return basis_.size(); }
    std::size_t ambient() const { return dim_; }

    std::vector<Elem> reduce(std::vector<Elem> v) const {
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            const Elem c = v[pivots_[k]];
            if (c == 0) continue;
            const auto& b = basis_[k];
            for (std::size_t i = pivots_[k]; i < dim_; ++i) {
                if (b[i]) v[i] = field_.sub(v[i], field_.mul(c, b[i]));
            }
        }
        return v;
    }

    bool contains(std::span<const Elem> v) const {
        check(v);
        const auto r = reduce({v.begin(), v.end()});
        return std::all_of(r.begin(), r.end(), [](Elem e) { return e == 0; });
    }

    /// Adds v to the spanning set; returns true iff the dimension grew.
    bool insert(std::span<const Elem> v) {
        check(v);
        auto r = reduce({v.begin(), v.end()});
        const auto it = std::find_if(r.begin(), r.end(), [](Elem e) { return e != 0; });
        if (it == r.end()) return false;
        const auto pivot = static_cast<std::size_t>(it - r.begin());
        const Elem s = field_.inv(r[pivot]);
        for (auto& e : r) e = field_.mul(e, s);
        basis_.push_back(std::move(r));
        pivots_.push_back(pivot);
        return true;
    }

  private:
    void check(std::span<const Elem> v) const {
        if (v.size() != dim_) throw std::invalid_argument("RowSpace: dimension mismatch");
    }

    PrimeField field_;
    std::size_t dim_;
    std::vector<std::vector<Elem>> basis_;
    std::vector<std::size_t> pivots_;
};

namespace gf2 {

/// Bit-packed vector over F_2.
class BitVector {
  public:
    BitVector() = default;
    explicit BitVector(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    std::size_t size() const { return bits_; }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i, bool v = true) {
        const std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= m;
        else
            words_[i >> 6] &= ~m;
    }
    BitVector& operator^=(const BitVector& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
        return *this;
    }
    bool any() const {
        return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
    }
    /// Index of the lowest set bit, or size() when zero.
    std::size_t lowest() const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
        }
        return bits_;
    }
    friend bool operator==(const BitVector&, const BitVector&) = default;

  private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

inline BitVector pack(std::span<const Elem> v) {
    BitVector b(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] & 1U) b.set(i);
    return b;
}

/// GF(2) counterpart of pliable::RowSpace keyed on the lowest set bit.
class RowSpace {
  public:
    explicit RowSpace(std::size_t dim) : dim_(dim) {}

    std::size_t dimension() const { return basis_.size(); }

    BitVector reduce(BitVector v) const {
        for (std::size_t k = 0; k < basis_.size(); ++k)
            if (v.get(pivots_[k])) v ^= basis_[k];
        return v;
    }
    bool contains(const BitVector& v) const { return !reduce(v).any(); }
    bool insert(const BitVector& v) {
        if (v.size() != dim_) throw std::invalid_argument("gf2::RowSpace: dimension mismatch");
        auto r = reduce(v);
        if (!r.any()) return false;
        pivots_.push_back(r.lowest());
        basis_.push_back(std::move(r));
        return true;
    }

  private:
    std::size_t dim_;
    std::vector<BitVector> basis_;
    std::vector<std::size_t> pivots_;
};

inline std::size_t rank(const Matrix& m) {
    if (m.q() != 2) throw std::invalid_argument("gf2::rank on a non-binary matrix");
    RowSpace space(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) space.insert(pack(m.row(r)));
    return space.dimension();
}

}  // namespace gf2

/// Rank by mod-q elimination, without the GF(2) fast path.
inline std::size_t rank_generic(const Matrix& m) {
    RowSpace space(m.q(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) space.insert(m.row(r));
    return space.dimension();
}

inline std::size_t rank(const Matrix& m) { return m.q() == 2 ? gf2::rank(m) : rank_generic(m); }

/// True iff v lies in the column span of m.
inline bool in_span(std::span<const Elem> v, const Matrix& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("in_span: dimension mismatch");
    for (auto e : v)
        if (e >= m.q()) throw std::invalid_argument("in_span: entry outside field");
    if (m.q() == 2) {
        gf2::RowSpace space(m.rows());
        for (std::size_t c = 0; c < m.cols(); ++c) space.insert(gf2::pack(m.column(c)));
        return space.contains(gf2::pack(v));
    }
    RowSpace space(m.q(), m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c) space.insert(m.column(c));
    return space.contains(v);
}

/// Rows of m forming a maximal independent set, chosen greedily in row order.
inline Matrix row_basis(const Matrix& m) {
    std::vector<std::size_t> keep;
    if (m.q() == 2) {
        gf2::RowSpace space(m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (space.insert(gf2::pack(m.row(r)))) keep.push_back(r);
    } else {
        RowSpace space(m.q(), m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (space.insert(m.row(r))) keep.push_back(r);
    }
    return m.select_rows(keep);
}

}  // namespace pliable
