#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cadph/errors.hpp"
#include "cadph/field.hpp"

namespace cadph {

/// Dense row-major matrix over a field. Entries are always normalized field values.
template <Field F>
class Matrix {
public:
    using value_type = typename F::value_type;

    Matrix() = default;
    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

    static Matrix identity(F field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = m.field_.one();
        return m;
    }

    /// Builds from small integer entries, reduced into the field.
    static Matrix from_ints(F field, const std::vector<std::vector<long long>>& rows, std::size_t cols = 0) {
        std::size_t c = rows.empty() ? cols : rows.front().size();
        Matrix m(field, rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) throw DimensionMismatch("ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = m.field_.from_int(rows[i][j]);
        }
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    value_type& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const value_type& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<value_type> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const value_type> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    bool is_zero() const {
        for (const auto& v : data_) {
            if (!field_.is_zero(v)) return false;
        }
        return true;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Keeps the listed columns, in the given order.
    Matrix select_columns(std::span<const std::size_t> columns) const {
        Matrix s(field_, rows_, columns.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < columns.size(); ++j) s(i, j) = (*this)(i, columns[j]);
        return s;
    }

    void append_row(std::span<const value_type> values) {
        if (values.size() != cols_) throw DimensionMismatch("appended row has wrong length");
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
        const F& f = a.field_;
        Matrix p(f, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const auto& aik = a(i, k);
                if (f.is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    p(i, j) = f.add(p(i, j), f.mul(aik, b(k, j)));
                }
            }
        }
        return p;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << '[';
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m.field_.to_string(m(i, j));
            os << "]\n";
        }
        return os;
    }

private:
    F field_{};
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<value_type> data_;
};

template <Field F>
struct RrefResult {
    Matrix<F> reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination. Pivot entries become 1 and their columns are cleared
/// above and below; zero rows are kept at the bottom so the shape is unchanged.
template <Field F>
RrefResult<F> rref(Matrix<F> m) {
    const F& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
        std::size_t pivot_row = lead;
        while (pivot_row < m.rows() && f.is_zero(m(pivot_row, col))) ++pivot_row;
        if (pivot_row == m.rows()) continue;
        if (pivot_row != lead) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot_row, j), m(lead, j));
        }
        const auto scale = f.inv(m(lead, col));
        for (std::size_t j = col; j < m.cols(); ++j) m(lead, j) = f.mul(m(lead, j), scale);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead || f.is_zero(m(r, col))) continue;
            const auto factor = m(r, col);
            for (std::size_t j = col; j < m.cols(); ++j) {
                m(r, j) = f.sub(m(r, j), f.mul(factor, m(lead, j)));
            }
        }
        pivots.push_back(col);
        ++lead;
    }
    return {std::move(m), pivots.size(), std::move(pivots)};
}

template <Field F>
std::size_t rank(const Matrix<F>& m) {
    return rref(m).rank;
}

}  // namespace cadph
