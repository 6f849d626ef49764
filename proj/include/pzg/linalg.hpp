#pragma once

#include <cmath>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pzg {

using Vec = std::vector<double>;

// Small dense row-major matrix. Payoff matrices here are tiny (2x2 .. 8x8),
// so a flat vector plus index arithmetic is all we need.
struct Matrix {
    int rows = 0;
    int cols = 0;
    Vec data;

    Matrix() = default;
    Matrix(int r, int c, double fill = 0.0) : rows(r), cols(c), data(static_cast<size_t>(r) * c, fill) {}

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rws) {
        Matrix m(static_cast<int>(rws.size()), rws.size() ? static_cast<int>(rws.begin()->size()) : 0);
        int r = 0;
        for (const auto& row : rws) {
            if (static_cast<int>(row.size()) != m.cols)
                throw std::invalid_argument("Matrix::from_rows: ragged rows");
            int c = 0;
            for (double v : row) m(r, c++) = v;
            ++r;
        }
        return m;
    }

    double& operator()(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }

    Matrix transposed() const {
        Matrix t(cols, rows);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    Matrix scaled(double a) const {
        Matrix m = *this;
        for (double& v : m.data) v *= a;
        return m;
    }

    Matrix negated_transpose() const { return transposed().scaled(-1.0); }

    bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
};

// out += a * (A x)
inline void add_matvec(const Matrix& A, double a, std::span<const double> x, std::span<double> out) {
    if (static_cast<int>(x.size()) != A.cols || static_cast<int>(out.size()) != A.rows)
        throw std::invalid_argument("add_matvec: shape mismatch");
    for (int r = 0; r < A.rows; ++r) {
        double acc = 0.0;
        const double* row = &A.data[static_cast<size_t>(r) * A.cols];
        for (int c = 0; c < A.cols; ++c) acc += row[c] * x[c];
        out[r] += a * acc;
    }
}

inline void matvec(const Matrix& A, std::span<const double> x, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    add_matvec(A, 1.0, x, out);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double sq_norm(std::span<const double> a) { return dot(a, a); }

inline double sup_norm(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

inline double sup_dist(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("sup_dist: size mismatch");
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Determinant by Gaussian elimination with partial pivoting; n is tiny here.
inline double det(Matrix a) {
    if (a.rows != a.cols) throw std::invalid_argument("det: matrix not square");
    const int n = a.rows;
    double d = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int r = k + 1; r < n; ++r)
            if (std::abs(a(r, k)) > std::abs(a(piv, k))) piv = r;
        if (a(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            for (int c = k; c < n; ++c) std::swap(a(piv, c), a(k, c));
            d = -d;
        }
        d *= a(k, k);
        for (int r = k + 1; r < n; ++r) {
            const double f = a(r, k) / a(k, k);
            for (int c = k; c < n; ++c) a(r, c) -= f * a(k, c);
        }
    }
    return d;
}

inline bool all_finite(std::span<const double> a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace pzg
