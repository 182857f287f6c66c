#pragma once

#include "sqdist/errors.hpp"
#include "sqdist/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sqdist {

/// Dense row-major matrix over an exact field.
template <typename T>
class Matrix {
public:
    using value_type = T;
    using size_type = std::size_t;

    Matrix() = default;

    Matrix(size_type rows, size_type cols, const T& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) throw DimensionError("ragged initializer list");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(size_type n) {
        Matrix m(n, n);
        for (size_type i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    static Matrix ones(size_type rows, size_type cols) { return Matrix(rows, cols, T{1}); }

    static Matrix diagonal(std::span<const T> entries) {
        Matrix m(entries.size(), entries.size());
        for (size_type i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
        return m;
    }

    static Matrix column(std::span<const T> entries) {
        Matrix m(entries.size(), 1);
        for (size_type i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
        return m;
    }

    size_type rows() const noexcept { return rows_; }
    size_type cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(size_type i, size_type j) { return data_[i * cols_ + j]; }
    const T& operator()(size_type i, size_type j) const { return data_[i * cols_ + j]; }

    std::span<T> row(size_type i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(size_type i) const { return {data_.data() + i * cols_, cols_}; }

    std::span<const T> entries() const noexcept { return data_; }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (size_type i = 0; i < rows_; ++i)
            for (size_type j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Entrywise product.
    Matrix hadamard(const Matrix& o) const {
        require_same_shape(o, "hadamard");
        Matrix r = *this;
        for (size_type k = 0; k < data_.size(); ++k) r.data_[k] *= o.data_[k];
        return r;
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o, "+");
        for (size_type k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o, "-");
        for (size_type k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const T& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a) { return a *= T{-1}; }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw DimensionError("cannot multiply " + a.shape() + " by " + b.shape());
        Matrix r(a.rows_, b.cols_);
        for (size_type i = 0; i < a.rows_; ++i)
            for (size_type k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T{}) continue;
                for (size_type j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        os << '[';
        for (size_type i = 0; i < m.rows_; ++i) {
            os << (i ? ", [" : "[");
            for (size_type j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
            os << ']';
        }
        return os << ']';
    }

private:
    void require_same_shape(const Matrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionError(std::string("shape mismatch in '") + op + "': " + shape() +
                                 " vs " + o.shape());
    }

    size_type rows_ = 0;
    size_type cols_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;

template <typename T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
    return a * b;
}

}  // namespace sqdist
