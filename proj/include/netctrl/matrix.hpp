#pragma once

// Small dense matrices over exact scalar types, plus exact rank computation.
// Rank decisions in this library are tolerance-free: integer matrices go
// through fraction-free (Bareiss) elimination, rational matrices are row-scaled
// to integers first.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/rational_adaptor.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

namespace netctrl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <typename T>
class Matrix {
public:
    Matrix() = default;

    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(checked_size(rows, cols)) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    bool operator==(const Matrix&) const = default;

    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    Matrix operator*(const Matrix& rhs) const {
        if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: inner dimensions differ");
        Matrix out(rows_, rhs.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == 0) continue;
                for (int j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
            }
        return out;
    }

private:
    static std::size_t checked_size(int rows, int cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("matrix dimensions must be nonnegative");
        return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

/// Places `a` and `b` side by side; both must have the same row count.
template <typename T>
Matrix<T> hconcat(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hconcat: row counts differ");
    Matrix<T> out(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
    }
    return out;
}

/// Exact rank of an integer matrix via fraction-free Gaussian elimination.
/// Row swaps and column skips keep all intermediate entries integral
/// (they are minors of the input), so growth stays bounded and no division
/// ever truncates.
inline int rank(Matrix<BigInt> m) {
    const int rows = m.rows();
    const int cols = m.cols();
    int r = 0;
    BigInt prev_pivot = 1;
    for (int col = 0; col < cols && r < rows; ++col) {
        int pivot = -1;
        for (int i = r; i < rows; ++i) {
            if (m(i, col) != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        m.swap_rows(r, pivot);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = col + 1; j < cols; ++j) {
                m(i, j) = (m(r, col) * m(i, j) - m(i, col) * m(r, j)) / prev_pivot;
            }
            m(i, col) = 0;
        }
        prev_pivot = m(r, col);
        ++r;
    }
    return r;
}

/// Exact rank over the rationals. Each row is scaled by the lcm of its
/// denominators (rank-preserving), then handed to the integer elimination.
inline int rank(const Matrix<Rational>& m) {
    Matrix<BigInt> scaled(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        BigInt scale = 1;
        for (int j = 0; j < m.cols(); ++j) scale = lcm(scale, denominator(m(i, j)));
        for (int j = 0; j < m.cols(); ++j) {
            scaled(i, j) = numerator(m(i, j)) * (scale / denominator(m(i, j)));
        }
    }
    return rank(std::move(scaled));
}

}  // namespace netctrl
