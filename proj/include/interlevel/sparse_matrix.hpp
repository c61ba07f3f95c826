#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "interlevel/scalar.hpp"

namespace interlevel {

struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// Sparse column vector: sorted (row, scalar) pairs, no explicit zeros.
using SparseColumn = std::vector<std::pair<int, Scalar>>;

struct Reduction;

// Column-major sparse matrix over one field. No stored zeros, unique coordinates.
class SparseMatrix {
  public:
    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(FieldId f, int rows, int cols) : field_(f), rows_(rows), cols_(cols), data_(cols) {
        if (rows < 0 || cols < 0) throw ShapeError("negative matrix dimension");
    }

    static SparseMatrix identity(FieldId f, int n) {
        SparseMatrix m(f, n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, Scalar::one(f));
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldId& field() const { return field_; }
    const SparseColumn& column(int j) const { return data_.at(j); }

    bool is_zero() const {
        for (const auto& c : data_)
            if (!c.empty()) return false;
        return true;
    }

    void set(int r, int c, const Scalar& v) {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw ShapeError("entry out of range");
        if (v.field() != field_) throw FieldMismatchError("matrix entry field mismatch");
        auto& col = data_[c];
        auto it = std::lower_bound(col.begin(), col.end(), r,
                                   [](const auto& e, int row) { return e.first < row; });
        if (it != col.end() && it->first == r) {
            if (v.is_zero())
                col.erase(it);
            else
                it->second = v;
        } else if (!v.is_zero()) {
            col.insert(it, {r, v});
        }
    }

    Scalar at(int r, int c) const {
        const auto& col = data_.at(c);
        auto it = std::lower_bound(col.begin(), col.end(), r,
                                   [](const auto& e, int row) { return e.first < row; });
        if (it != col.end() && it->first == r) return it->second;
        return Scalar::zero(field_);
    }

    void add_to_entry(int r, int c, const Scalar& v) { set(r, c, at(r, c) + v); }

    std::vector<Scalar> column_dense(int j) const {
        std::vector<Scalar> out(rows_, Scalar::zero(field_));
        for (const auto& [r, v] : data_.at(j)) out[r] = v;
        return out;
    }

    SparseMatrix transpose() const {
        SparseMatrix t(field_, cols_, rows_);
        for (int j = 0; j < cols_; ++j)
            for (const auto& [r, v] : data_[j]) t.set(j, r, v);
        return t;
    }

    SparseMatrix operator*(const SparseMatrix& o) const {
        if (field_ != o.field_) throw FieldMismatchError("matrix product field mismatch");
        if (cols_ != o.rows_) throw ShapeError("matrix product shape mismatch");
        SparseMatrix out(field_, rows_, o.cols_);
        for (int j = 0; j < o.cols_; ++j) {
            std::map<int, Scalar> acc;
            for (const auto& [k, w] : o.data_[j])
                for (const auto& [r, v] : data_[k]) {
                    auto it = acc.find(r);
                    if (it == acc.end())
                        acc.emplace(r, v * w);
                    else
                        it->second = it->second + v * w;
                }
            for (const auto& [r, v] : acc)
                if (!v.is_zero()) out.set(r, j, v);
        }
        return out;
    }

    SparseMatrix operator+(const SparseMatrix& o) const { return combine(o, false); }
    SparseMatrix operator-(const SparseMatrix& o) const { return combine(o, true); }

    SparseMatrix scaled(const Scalar& s) const {
        SparseMatrix out(field_, rows_, cols_);
        if (s.is_zero()) return out;
        for (int j = 0; j < cols_; ++j)
            for (const auto& [r, v] : data_[j]) out.set(r, j, v * s);
        return out;
    }

    std::vector<Scalar> apply(const std::vector<Scalar>& x) const {
        if (static_cast<int>(x.size()) != cols_) throw ShapeError("matrix-vector shape mismatch");
        std::vector<Scalar> out(rows_, Scalar::zero(field_));
        for (int j = 0; j < cols_; ++j) {
            if (x[j].is_zero()) continue;
            for (const auto& [r, v] : data_[j]) out[r] = out[r] + v * x[j];
        }
        return out;
    }

    bool operator==(const SparseMatrix& o) const {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    // Restriction to index subsets; map[i] gives the new row/col index (-1 drops it).
    SparseMatrix submatrix(const std::vector<int>& row_map, int new_rows,
                           const std::vector<int>& col_map, int new_cols) const {
        SparseMatrix out(field_, new_rows, new_cols);
        for (int j = 0; j < cols_; ++j) {
            if (col_map[j] < 0) continue;
            for (const auto& [r, v] : data_[j])
                if (row_map[r] >= 0) out.set(row_map[r], col_map[j], v);
        }
        return out;
    }

    int rank() const;
    std::optional<std::vector<Scalar>> solve_in_span(const std::vector<Scalar>& b) const;

    // Left-to-right column reduction in the given column order; the pivot of a
    // nonzero column is its maximal nonzero row under row_order, and pivots of
    // distinct nonzero columns are distinct.
    Reduction column_reduce(const std::vector<int>& column_order, const std::vector<int>& row_order) const;

  private:
    SparseMatrix combine(const SparseMatrix& o, bool subtract) const {
        if (field_ != o.field_) throw FieldMismatchError("matrix sum field mismatch");
        if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix sum shape mismatch");
        SparseMatrix out(field_, rows_, cols_);
        for (int j = 0; j < cols_; ++j) {
            std::map<int, Scalar> acc;
            for (const auto& [r, v] : data_[j]) acc.emplace(r, v);
            for (const auto& [r, v] : o.data_[j]) {
                auto w = subtract ? -v : v;
                auto it = acc.find(r);
                if (it == acc.end())
                    acc.emplace(r, w);
                else
                    it->second = it->second + w;
            }
            for (const auto& [r, v] : acc)
                if (!v.is_zero()) out.set(r, j, v);
        }
        return out;
    }

    Reduction reduce_impl(const std::vector<int>& column_order, const std::vector<int>& row_order) const;

    static void axpy(std::map<int, Scalar>& dst, const std::map<int, Scalar>& src, const Scalar& c) {
        for (const auto& [k, v] : src) {
            auto it = dst.find(k);
            if (it == dst.end()) {
                auto w = v * c;
                if (!w.is_zero()) dst.emplace(k, w);
            } else {
                it->second = it->second + v * c;
                if (it->second.is_zero()) dst.erase(it);
            }
        }
    }

    FieldId field_;
    int rows_, cols_;
    std::vector<SparseColumn> data_;
};

struct Reduction {
    SparseMatrix reduced;                     // reduced = m * basis
    SparseMatrix basis;                       // unit upper-triangular in column order
    std::vector<std::pair<int, int>> pivots;  // (row, col), in column order
};

inline Reduction SparseMatrix::reduce_impl(const std::vector<int>& column_order,
                                           const std::vector<int>& row_order) const {
    std::vector<int> row_pos(rows_);
    for (int i = 0; i < rows_; ++i) row_pos[row_order[i]] = i;

    Reduction out{SparseMatrix(field_, rows_, cols_), SparseMatrix::identity(field_, cols_), {}};
    std::vector<std::map<int, Scalar>> work(cols_);   // keyed by row position under row_order
    std::vector<std::map<int, Scalar>> basis(cols_);  // keyed by column index
    for (int j = 0; j < cols_; ++j) {
        basis[j].emplace(j, Scalar::one(field_));
        for (const auto& [r, v] : data_[j]) work[j].emplace(row_pos[r], v);
    }
    std::vector<int> pivot_owner(rows_, -1);
    for (int step = 0; step < cols_; ++step) {
        const int j = column_order[step];
        while (!work[j].empty()) {
            const int p = work[j].rbegin()->first;  // maximal row position
            const int owner = pivot_owner[p];
            if (owner < 0) {
                pivot_owner[p] = j;
                out.pivots.push_back({row_order[p], j});
                break;
            }
            const Scalar factor = work[j].rbegin()->second / work[owner].rbegin()->second;
            axpy(work[j], work[owner], -factor);
            axpy(basis[j], basis[owner], -factor);
        }
    }
    for (int j = 0; j < cols_; ++j) {
        for (const auto& [p, v] : work[j]) out.reduced.set(row_order[p], j, v);
        for (const auto& [i, v] : basis[j]) out.basis.set(i, j, v);
    }
    return out;
}

inline Reduction SparseMatrix::column_reduce(const std::vector<int>& column_order,
                                             const std::vector<int>& row_order) const {
    if (static_cast<int>(column_order.size()) != cols_ || static_cast<int>(row_order.size()) != rows_)
        throw ShapeError("column_reduce order size mismatch");
    return reduce_impl(column_order, row_order);
}

inline int SparseMatrix::rank() const {
    std::vector<int> cols(cols_), rows(rows_);
    std::iota(cols.begin(), cols.end(), 0);
    std::iota(rows.begin(), rows.end(), 0);
    auto red = reduce_impl(cols, rows);
    return static_cast<int>(red.pivots.size());
}

// Solves m * x = b; returns a coefficient vector when b lies in the column span.
inline std::optional<std::vector<Scalar>> SparseMatrix::solve_in_span(const std::vector<Scalar>& b) const {
    if (static_cast<int>(b.size()) != rows_) throw ShapeError("solve_in_span dimension mismatch");
    SparseMatrix aug(field_, rows_, cols_ + 1);
    for (int j = 0; j < cols_; ++j)
        for (const auto& [r, v] : data_[j]) aug.set(r, j, v);
    for (int r = 0; r < rows_; ++r)
        if (!b[r].is_zero()) aug.set(r, cols_, b[r]);
    std::vector<int> col_order(cols_ + 1), row_order(rows_);
    std::iota(col_order.begin(), col_order.end(), 0);
    std::iota(row_order.begin(), row_order.end(), 0);
    auto red = aug.reduce_impl(col_order, row_order);
    if (!red.reduced.column(cols_).empty()) return std::nullopt;
    // Last change-of-basis column expresses 0 = b + sum_j V[j,last] * col_j.
    std::vector<Scalar> x(cols_, Scalar::zero(field_));
    for (const auto& [r, v] : red.basis.column(cols_))
        if (r < cols_) x[r] = -v;
    return x;
}

}  // namespace interlevel
