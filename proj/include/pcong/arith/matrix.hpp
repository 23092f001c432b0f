#pragma once

#include "pcong/arith/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pcong {

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

// Dense row-major matrix over an exact field F.
template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const F& fill = F(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<F>>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<F> row(std::size_t i) const {
        return std::vector<F>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    std::vector<F> column(std::size_t j) const {
        std::vector<F> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero_matrix() const {
        return std::all_of(data_.begin(), data_.end(), [](const F& x) { return is_zero(x); });
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const F& aik = a(i, k);
                if (is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) {
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b) {
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }

    Matrix scaled(const F& s) const {
        Matrix out = *this;
        for (auto& x : out.data_) x *= s;
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            if (!is_zero(F(a.data_[i] - b.data_[i]))) return false;
        return true;
    }

    // Row vector times matrix.
    std::vector<F> left_apply(const std::vector<F>& v) const {
        std::vector<F> out(cols_, F(0));
        for (std::size_t i = 0; i < rows_; ++i) {
            if (is_zero(v[i])) continue;
            for (std::size_t j = 0; j < cols_; ++j) out[j] += v[i] * (*this)(i, j);
        }
        return out;
    }

    std::vector<F> apply(const std::vector<F>& v) const {
        std::vector<F> out(rows_, F(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<F> data_;
};

// Reduced row echelon form in place; returns pivot columns.
template <class F>
std::vector<std::size_t> row_reduce(Matrix<F>& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && is_zero(m(piv, c))) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
        F inv = F(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            F factor = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
std::size_t rank(Matrix<F> m) {
    return row_reduce(m).size();
}

// Basis of {x : m x = 0}, one vector per row of the result.
template <class F>
Matrix<F> kernel(Matrix<F> m) {
    auto pivots = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<F> v(m.cols(), F(0));
        v[free] = F(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return Matrix<F>::from_rows(basis, m.cols());
}

// Basis of {y : y m = 0} as rows.
template <class F>
Matrix<F> left_kernel(const Matrix<F>& m) {
    return kernel(m.transpose());
}

// Echelon basis of the row space.
template <class F>
Matrix<F> row_space(Matrix<F> m) {
    auto pivots = row_reduce(m);
    Matrix<F> out(pivots.size(), m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

// Intersection of two row spaces (both given by independent rows).
template <class F>
Matrix<F> intersect_row_spaces(const Matrix<F>& a, const Matrix<F>& b) {
    Matrix<F> stacked(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) stacked(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) stacked(a.rows() + i, j) = b(i, j);
    Matrix<F> rel = left_kernel(stacked);
    std::vector<std::vector<F>> rows;
    for (std::size_t r = 0; r < rel.rows(); ++r) {
        std::vector<F> v(a.cols(), F(0));
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (is_zero(rel(r, i))) continue;
            for (std::size_t j = 0; j < a.cols(); ++j) v[j] += rel(r, i) * a(i, j);
        }
        rows.push_back(std::move(v));
    }
    return row_space(Matrix<F>::from_rows(rows, a.cols()));
}

// Solve x * basis = v for a row vector x; empty optional when v is outside the row space.
template <class F>
std::optional<std::vector<F>> solve_left(const Matrix<F>& basis, const std::vector<F>& v) {
    const std::size_t n = basis.rows();
    Matrix<F> aug(basis.cols(), n + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < basis.cols(); ++j) aug(j, i) = basis(i, j);
    for (std::size_t j = 0; j < basis.cols(); ++j) aug(j, n) = v[j];
    auto pivots = row_reduce(aug);
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;
    std::vector<F> x(n, F(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, n);
    return x;
}

// Matrix of the restriction of op to an op-stable row space: sub * op = out * sub.
template <class F>
Matrix<F> restrict_to(const Matrix<F>& sub, const Matrix<F>& op) {
    Matrix<F> image = sub * op;
    Matrix<F> out(sub.rows(), sub.rows());
    for (std::size_t i = 0; i < sub.rows(); ++i) {
        auto x = solve_left(sub, image.row(i));
        if (!x) throw std::logic_error("restrict_to: subspace is not stable");
        for (std::size_t j = 0; j < sub.rows(); ++j) out(i, j) = (*x)[j];
    }
    return out;
}

// Characteristic polynomial det(x - m), coefficients low to high, via Hessenberg reduction.
template <class F>
std::vector<F> charpoly(Matrix<F> h) {
    const std::size_t n = h.rows();
    for (std::size_t m = 1; m < n; ++m) {
        std::size_t i = m;
        while (i < n && is_zero(h(i, m - 1))) ++i;
        if (i == n) continue;
        if (i != m) {
            for (std::size_t j = 0; j < n; ++j) std::swap(h(i, j), h(m, j));
            for (std::size_t j = 0; j < n; ++j) std::swap(h(j, i), h(j, m));
        }
        F inv = F(1) / h(m, m - 1);
        for (std::size_t r = m + 1; r < n; ++r) {
            if (is_zero(h(r, m - 1))) continue;
            F u = h(r, m - 1) * inv;
            for (std::size_t j = 0; j < n; ++j) h(r, j) -= u * h(m, j);
            for (std::size_t j = 0; j < n; ++j) h(j, m) += u * h(j, r);
        }
    }
    std::vector<std::vector<F>> p(n + 1);
    p[0] = {F(1)};
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<F> next(k + 1, F(0));
        for (std::size_t j = 0; j < p[k - 1].size(); ++j) {
            next[j + 1] += p[k - 1][j];
            next[j] -= h(k - 1, k - 1) * p[k - 1][j];
        }
        F t = F(1);
        for (std::size_t i = 1; i < k; ++i) {
            t *= h(k - i, k - i - 1);
            F coef = t * h(k - i - 1, k - 1);
            for (std::size_t j = 0; j < p[k - i - 1].size(); ++j) next[j] -= coef * p[k - i - 1][j];
        }
        p[k] = std::move(next);
    }
    return p[n];
}

// poly(m) for coefficients low to high.
template <class F>
Matrix<F> evaluate_polynomial(const std::vector<F>& coeffs, const Matrix<F>& m) {
    Matrix<F> acc(m.rows(), m.cols());
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        acc = acc * m;
        for (std::size_t i = 0; i < m.rows(); ++i) acc(i, i) += coeffs[k];
    }
    return acc;
}

using QMatrix = Matrix<Rat>;

}  // namespace pcong
