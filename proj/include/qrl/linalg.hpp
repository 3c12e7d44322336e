#pragma once

// Small dense real linear algebra used throughout the library.
// Matrices here are tiny (2x2 .. ~24x24), so everything is straightforward
// row-major storage with O(n^3) algorithms and no external dependencies.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qrl {

using Vec = std::vector<double>;

struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;  // row-major, rows*cols entries

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    bool square() const { return rows == cols; }
};

inline Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("Mat multiply: dimension mismatch");
    Mat out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const double xik = x(i, k);
            if (xik == 0.0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) out(i, j) += xik * y(k, j);
        }
    return out;
}

inline Mat operator+(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("Mat add: dimension mismatch");
    Mat out = x;
    for (std::size_t i = 0; i < y.a.size(); ++i) out.a[i] += y.a[i];
    return out;
}

inline Mat operator-(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("Mat subtract: dimension mismatch");
    Mat out = x;
    for (std::size_t i = 0; i < y.a.size(); ++i) out.a[i] -= y.a[i];
    return out;
}

inline Mat scaled(const Mat& x, double s) {
    Mat out = x;
    for (double& v : out.a) v *= s;
    return out;
}

inline Mat transpose(const Mat& x) {
    Mat out(x.cols, x.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) out(j, i) = x(i, j);
    return out;
}

inline Vec mat_vec(const Mat& m, const Vec& v) {
    if (m.cols != v.size()) throw std::invalid_argument("mat_vec: dimension mismatch");
    Vec out(m.rows, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols; ++j) s += m(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

inline Vec vec_add(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("vec_add: dimension mismatch");
    Vec out = x;
    for (std::size_t i = 0; i < y.size(); ++i) out[i] += y[i];
    return out;
}

inline Vec vec_sub(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("vec_sub: dimension mismatch");
    Vec out = x;
    for (std::size_t i = 0; i < y.size(); ++i) out[i] -= y[i];
    return out;
}

inline double vec_norm(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double frobenius(const Mat& m) {
    double s = 0.0;
    for (double x : m.a) s += x * x;
    return std::sqrt(s);
}

inline double frobenius_diff(const Mat& x, const Mat& y) { return frobenius(x - y); }

// Quadratic form v^T M v.
inline double quad_form(const Mat& m, const Vec& v) {
    Vec mv = mat_vec(m, v);
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * mv[i];
    return s;
}

// Solve A x = b by Gaussian elimination with partial pivoting.
// Throws std::domain_error when A is (numerically) singular.
inline Vec solve(Mat A, Vec b) {
    if (!A.square() || A.rows != b.size()) throw std::invalid_argument("solve: dimension mismatch");
    const std::size_t n = A.rows;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(A(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            double v = std::abs(A(r, col));
            if (v > best) { best = v; piv = r; }
        }
        if (best < 1e-300) throw std::domain_error("solve: singular matrix");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(piv, j), A(col, j));
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = A(r, col) / A(col, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) A(r, j) -= f * A(col, j);
            b[r] -= f * b[col];
        }
    }
    Vec x(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= A(ii, j) * x[j];
        x[ii] = s / A(ii, ii);
    }
    return x;
}

// Eigenvalues of a symmetric matrix via cyclic Jacobi rotations.
// Adequate (and exact to ~1e-14) for the small matrices used here.
inline Vec jacobi_eigenvalues(Mat m, int max_sweeps = 60) {
    if (!m.square()) throw std::invalid_argument("jacobi_eigenvalues: matrix not square");
    const std::size_t n = m.rows;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = m(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
            }
    }
    Vec eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = m(i, i);
    return eig;
}

inline double min_eigenvalue_symmetric(const Mat& m) {
    Vec e = jacobi_eigenvalues(m);
    double lo = e[0];
    for (double v : e) lo = std::min(lo, v);
    return lo;
}

}  // namespace qrl
