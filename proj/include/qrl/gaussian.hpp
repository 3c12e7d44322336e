#pragma once

// Affine-symplectic representation of Gaussian unitaries and Gaussian states.
//
// Conventions (used by every module in this library):
//  * Quadrature ordering is (q_1 .. q_N, p_1 .. p_N).
//  * A GaussianOp stores the Heisenberg action U† x U = S x plus a phase-space
//    displacement d, so applying U maps mean -> S·mean + d and cov -> S·cov·Sᵀ.
//  * compose(a, b) means "apply b first, then a" — matrix product A·B, the
//    same order as the operator product.
//  * The symplectic form is Ω = [[0, I], [−I, 0]]; every constructor and every
//    composition is checked against ‖SᵀΩS − Ω‖_F < 1e−12.
//  * Vacuum variance is 1/2 per quadrature.  A displacement by complex
//    amplitude α shifts (q, p) by (√2·Re α, √2·Im α).
//
// Generators:
//  * rotation(θ):   q -> q cos θ − p sin θ,  p -> p cos θ + q sin θ
//  * squeeze(ζ):    diag(ζ, 1/ζ), valid for every real ζ ≠ 0 (a negative ζ
//                   carries a built-in π rotation, so the group law
//                   squeeze(a)∘squeeze(b) = squeeze(ab) holds unconditionally)
//  * shear(σ):      q -> q,  p -> p + σ q
//  * controlled_z(g):    p₁ += g q₂,  p₂ += g q₁
//  * beamsplitter(j,k,θ): x_j -> cos θ·x_j − sin θ·x_k,
//                         x_k -> cos θ·x_k + sin θ·x_j  (same q and p blocks);
//                         B_jk† = B_kj, θ = π/4 is the balanced case
//  * controlled_x(j,k,g): q_k += g q_j,  p_j −= g p_k  ( = F_k† C_Z(g) F_k )

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qrl/linalg.hpp"

namespace qrl {

inline constexpr double kSymplecticTol = 1e-12;

// Symplectic form Ω for n modes in (q.., p..) ordering.
inline Mat omega(std::size_t n_modes) {
    Mat w(2 * n_modes, 2 * n_modes);
    for (std::size_t m = 0; m < n_modes; ++m) {
        w(m, n_modes + m) = 1.0;
        w(n_modes + m, m) = -1.0;
    }
    return w;
}

// ‖SᵀΩS − Ω‖_F; zero iff S is symplectic.
inline double symplectic_residual(const Mat& s) {
    if (!s.square() || s.rows % 2 != 0) throw std::invalid_argument("symplectic_residual: need even square matrix");
    const Mat w = omega(s.rows / 2);
    return frobenius_diff(transpose(s) * w * s, w);
}

struct GaussianOp {
    std::size_t n_modes = 0;
    Mat matrix;  // 2N x 2N symplectic
    Vec shift;   // 2N displacement

    GaussianOp() = default;
    GaussianOp(std::size_t n, Mat s, Vec d, double tol = kSymplecticTol)
        : n_modes(n), matrix(std::move(s)), shift(std::move(d)) {
        if (matrix.rows != 2 * n || matrix.cols != 2 * n || shift.size() != 2 * n)
            throw std::invalid_argument("GaussianOp: dimension mismatch");
        const double r = symplectic_residual(matrix);
        if (!(r < tol)) throw std::invalid_argument("GaussianOp: matrix is not symplectic");
    }

    static GaussianOp identity(std::size_t n) { return GaussianOp(n, Mat::identity(2 * n), Vec(2 * n, 0.0)); }

    // Quadrature index helpers for mode m.
    std::size_t qi(std::size_t m) const { return m; }
    std::size_t pi(std::size_t m) const { return n_modes + m; }
};

struct GaussianState {
    Vec mean;  // 2N
    Mat cov;   // 2N x 2N symmetric

    std::size_t n_modes() const { return mean.size() / 2; }

    // Vacuum on n modes: zero mean, covariance I/2.
    static GaussianState vacuum(std::size_t n) {
        GaussianState st;
        st.mean.assign(2 * n, 0.0);
        st.cov = scaled(Mat::identity(2 * n), 0.5);
        return st;
    }

    // Physicality: cov + (i/2)Ω ⪰ 0, checked on the real embedding
    // [[Σ, −Ω/2], [Ω/2, Σ]] whose spectrum doubles that of the Hermitian form.
    bool is_physical(double tol = 1e-10) const {
        const std::size_t d = mean.size();
        const Mat w = omega(d / 2);
        Mat big(2 * d, 2 * d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                big(i, j) = cov(i, j);
                big(d + i, d + j) = cov(i, j);
                big(i, d + j) = -0.5 * w(i, j);
                big(d + i, j) = 0.5 * w(i, j);
            }
        return min_eigenvalue_symmetric(big) >= -tol;
    }
};

inline void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + ": non-finite argument");
}

// --- single-mode generators ---------------------------------------------

inline GaussianOp rotation(double theta) {
    require_finite(theta, "rotation");
    Mat s(2, 2);
    s(0, 0) = std::cos(theta);  s(0, 1) = -std::sin(theta);
    s(1, 0) = std::sin(theta);  s(1, 1) = std::cos(theta);
    return GaussianOp(1, s, Vec(2, 0.0));
}

inline GaussianOp fourier() { return rotation(M_PI / 2); }

inline GaussianOp squeeze(double zeta) {
    require_finite(zeta, "squeeze");
    if (zeta == 0.0) throw std::invalid_argument("squeeze: factor must be nonzero");
    Mat s(2, 2);
    s(0, 0) = zeta;
    s(1, 1) = 1.0 / zeta;
    return GaussianOp(1, s, Vec(2, 0.0));
}

inline GaussianOp shear(double sigma) {
    require_finite(sigma, "shear");
    Mat s = Mat::identity(2);
    s(1, 0) = sigma;
    return GaussianOp(1, s, Vec(2, 0.0));
}

// Displacement by complex amplitude α: (q, p) += (√2 Re α, √2 Im α).
inline GaussianOp displacement(std::complex<double> alpha) {
    require_finite(alpha.real(), "displacement");
    require_finite(alpha.imag(), "displacement");
    const double rt2 = std::sqrt(2.0);
    return GaussianOp(1, Mat::identity(2), Vec{rt2 * alpha.real(), rt2 * alpha.imag()});
}

// X(s) = e^{−isp}: position shift by s.     Z(t) = e^{itq}: momentum shift by t.
inline GaussianOp x_shift(double s) { return GaussianOp(1, Mat::identity(2), Vec{s, 0.0}); }
inline GaussianOp z_shift(double t) { return GaussianOp(1, Mat::identity(2), Vec{0.0, t}); }

// --- two-mode generators --------------------------------------------------

inline GaussianOp controlled_z(double g) {
    require_finite(g, "controlled_z");
    Mat s = Mat::identity(4);
    s(2, 1) = g;  // p1 += g q2
    s(3, 0) = g;  // p2 += g q1
    return GaussianOp(2, s, Vec(4, 0.0));
}

// Beam splitter B_jk(θ) on n modes (0-based j, k).
inline GaussianOp beamsplitter(std::size_t j, std::size_t k, double theta, std::size_t n_modes = 2) {
    require_finite(theta, "beamsplitter");
    if (j == k) throw std::invalid_argument("beamsplitter: modes must differ");
    if (j >= n_modes || k >= n_modes) throw std::invalid_argument("beamsplitter: mode out of range");
    const double c = std::cos(theta), s = std::sin(theta);
    Mat m = Mat::identity(2 * n_modes);
    for (std::size_t blk : {std::size_t{0}, n_modes}) {
        m(blk + j, blk + j) = c;  m(blk + j, blk + k) = -s;
        m(blk + k, blk + k) = c;  m(blk + k, blk + j) = s;
    }
    return GaussianOp(n_modes, m, Vec(2 * n_modes, 0.0));
}

inline GaussianOp balanced_beamsplitter(std::size_t j, std::size_t k, std::size_t n_modes = 2) {
    return beamsplitter(j, k, M_PI / 4, n_modes);
}

// Controlled-X with control j, target k: q_k += g q_j, p_j −= g p_k.
inline GaussianOp controlled_x(std::size_t j, std::size_t k, double g, std::size_t n_modes = 2) {
    require_finite(g, "controlled_x");
    if (j == k) throw std::invalid_argument("controlled_x: modes must differ");
    if (j >= n_modes || k >= n_modes) throw std::invalid_argument("controlled_x: mode out of range");
    Mat m = Mat::identity(2 * n_modes);
    m(k, j) = g;                           // q_k += g q_j
    m(n_modes + j, n_modes + k) = -g;      // p_j -= g p_k
    return GaussianOp(n_modes, m, Vec(2 * n_modes, 0.0));
}

// --- structural operations -----------------------------------------------

// compose(a, b): apply b, then a.  Matrix A·B, shift A·d_b + d_a.
inline GaussianOp compose(const GaussianOp& a, const GaussianOp& b) {
    if (a.n_modes != b.n_modes) throw std::invalid_argument("compose: mode-count mismatch");
    return GaussianOp(a.n_modes, a.matrix * b.matrix, vec_add(mat_vec(a.matrix, b.shift), a.shift));
}

// Tensor product: a on the first block of modes, b on the rest.
inline GaussianOp tensor(const GaussianOp& a, const GaussianOp& b) {
    const std::size_t n = a.n_modes + b.n_modes;
    Mat m(2 * n, 2 * n);
    Vec d(2 * n, 0.0);
    auto place = [&](const GaussianOp& op, std::size_t mode0) {
        const std::size_t k = op.n_modes;
        auto gi = [&](std::size_t local) {  // local quadrature index -> global
            return local < k ? mode0 + local : n + mode0 + (local - k);
        };
        for (std::size_t i = 0; i < 2 * k; ++i) {
            d[gi(i)] = op.shift[i];
            for (std::size_t j = 0; j < 2 * k; ++j) m(gi(i), gi(j)) = op.matrix(i, j);
        }
    };
    place(a, 0);
    place(b, a.n_modes);
    return GaussianOp(n, m, d);
}

// Embed op so it acts on the listed modes (order significant), identity elsewhere.
inline GaussianOp embed(const GaussianOp& op, const std::vector<std::size_t>& modes, std::size_t n_modes) {
    if (modes.size() != op.n_modes) throw std::invalid_argument("embed: mode list size mismatch");
    std::vector<bool> seen(n_modes, false);
    for (std::size_t m : modes) {
        if (m >= n_modes) throw std::invalid_argument("embed: mode out of range");
        if (seen[m]) throw std::invalid_argument("embed: duplicate mode");
        seen[m] = true;
    }
    const std::size_t k = op.n_modes;
    auto gi = [&](std::size_t local) {
        return local < k ? modes[local] : n_modes + modes[local - k];
    };
    Mat m = Mat::identity(2 * n_modes);
    Vec d(2 * n_modes, 0.0);
    for (std::size_t i = 0; i < 2 * k; ++i) {
        d[gi(i)] = op.shift[i];
        m(gi(i), gi(i)) = 0.0;  // clear the identity diagonal before writing the block
    }
    for (std::size_t i = 0; i < 2 * k; ++i)
        for (std::size_t j = 0; j < 2 * k; ++j) m(gi(i), gi(j)) = op.matrix(i, j);
    return GaussianOp(n_modes, m, d);
}

// Inverse of an affine symplectic map: S⁻¹ = −Ω Sᵀ Ω, d⁻¹ = −S⁻¹ d.
inline GaussianOp inverse(const GaussianOp& op) {
    const Mat w = omega(op.n_modes);
    const Mat sinv = scaled(w * transpose(op.matrix) * w, -1.0);
    Vec d = mat_vec(sinv, op.shift);
    for (double& x : d) x = -x;
    return GaussianOp(op.n_modes, sinv, d);
}

// Heisenberg evolution of a Gaussian state.
inline GaussianState apply(const GaussianOp& op, const GaussianState& st) {
    if (st.mean.size() != 2 * op.n_modes) throw std::invalid_argument("apply: dimension mismatch");
    GaussianState out;
    out.mean = vec_add(mat_vec(op.matrix, st.mean), op.shift);
    out.cov = op.matrix * st.cov * transpose(op.matrix);
    return out;
}

// Two-mode squeezed (EPR proxy) state with parameter r:
// Var = cosh(2r)/2 on every quadrature, Cov(q1,q2) = +sinh(2r)/2,
// Cov(p1,p2) = −sinh(2r)/2, zero mean.  Nullifier variances
// Var(q1−q2) = Var(p1+p2) = e^{−2r}.  Equals a balanced beam splitter acting on
// p-squeezed ⊗ q-squeezed vacuum.
inline GaussianState two_mode_squeezed(double r) {
    require_finite(r, "two_mode_squeezed");
    GaussianState st;
    st.mean.assign(4, 0.0);
    st.cov = Mat(4, 4);
    const double ch = std::cosh(2 * r) / 2, sh = std::sinh(2 * r) / 2;
    for (std::size_t i = 0; i < 4; ++i) st.cov(i, i) = ch;
    st.cov(0, 1) = st.cov(1, 0) = sh;
    st.cov(2, 3) = st.cov(3, 2) = -sh;
    return st;
}

}  // namespace qrl
