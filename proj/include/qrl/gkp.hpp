#pragma once

// Shift-lattice model of square-lattice grid states.
//
// A grid state is characterized (at the shift level) by the lattice of
// phase-space displacements that preserve it.  For the square-lattice qubit
// code, logical displacements have length √π and stabilizers 2√π; the
// Fourier-invariant "qunaught" state has a square lattice of spacing √(2π)
// and carries no logical information.  Two qunaughts interfered on a balanced
// beam splitter yield an encoded Bell pair — at this level, an exact lattice
// equality proved here by integer linear algebra (lattices_equal).
//
// Squeezing bookkeeping: a finite-squeezing spike variance δ² is quoted in
// decibels relative to the vacuum variance ½,  dB = −10 log₁₀(2δ²).
//
// Two per-quadrature error-correction conventions are provided:
//  * error_threshold_exceeded — an error whenever |shift| > √π/2, even if the
//    shift lands near a stabilizer multiple (this is the convention the erf
//    success-probability formula integrates exactly);
//  * modular_decode — nearest-multiple-of-√π binning with a logical flip on
//    odd multiples (diagnostic decoder; more forgiving for |shift| > √π).
// The two agree whenever |shift| < √π/2.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qrl/gaussian.hpp"
#include "qrl/linalg.hpp"

namespace qrl {

inline const double kRootPi = std::sqrt(M_PI);          // logical displacement length
inline const double kStabilizerSpacing = 2 * kRootPi;   // stabilizer displacement length
inline const double kQunaughtSpacing = std::sqrt(2 * M_PI);

struct ShiftLattice {
    std::size_t n_modes = 0;
    std::vector<Vec> basis;  // 2N generators, each a 2N vector in (q.., p..) order
};

struct SqueezingSpec {
    double delta_sq = 0.0;  // spike variance, quadrature units²
    double db = 0.0;        // −10 log₁₀(2δ²)

    static SqueezingSpec from_variance(double delta_sq);
    static SqueezingSpec from_db(double db);
};

struct BinResult {
    double correction = 0.0;    // nearest multiple of √π (the shift removed)
    bool logical_flip = false;  // odd multiple ⇒ logical displacement
};

inline double db_from_variance(double delta_sq) {
    if (!(delta_sq > 0.0)) throw std::invalid_argument("db_from_variance: variance must be positive");
    return -10.0 * std::log10(2.0 * delta_sq);
}

inline double variance_from_db(double db) {
    if (!std::isfinite(db)) throw std::invalid_argument("variance_from_db: non-finite dB");
    return 0.5 * std::pow(10.0, -db / 10.0);
}

inline SqueezingSpec SqueezingSpec::from_variance(double delta_sq) {
    return SqueezingSpec{delta_sq, db_from_variance(delta_sq)};
}

inline SqueezingSpec SqueezingSpec::from_db(double db) {
    return SqueezingSpec{variance_from_db(db), db};
}

// Per-quadrature error event: the spike leaked past the nearest bin boundary.
inline bool error_threshold_exceeded(double shift) {
    if (!std::isfinite(shift)) throw std::invalid_argument("error_threshold_exceeded: non-finite shift");
    return std::abs(shift) > kRootPi / 2;
}

// Nearest-multiple-of-√π decoder: remove k√π, flag a flip when k is odd.
inline BinResult modular_decode(double shift) {
    if (!std::isfinite(shift)) throw std::invalid_argument("modular_decode: non-finite shift");
    const auto k = static_cast<std::int64_t>(std::llround(shift / kRootPi));
    return BinResult{static_cast<double>(k) * kRootPi, (k % 2) != 0};
}

// Square lattice of spacing √(2π) on each of n modes.
inline ShiftLattice qunaught_lattice(std::size_t n_modes) {
    ShiftLattice lat;
    lat.n_modes = n_modes;
    for (std::size_t i = 0; i < 2 * n_modes; ++i) {
        Vec v(2 * n_modes, 0.0);
        v[i] = kQunaughtSpacing;
        lat.basis.push_back(std::move(v));
    }
    return lat;
}

// Displacement lattice of an encoded Bell pair: correlated logical shifts
// (X̄X̄ and Z̄Z̄ at ±√π on both modes) plus the single-mode stabilizers they
// generate.  Ordering (q1, q2, p1, p2).
inline ShiftLattice gkp_bell_lattice() {
    ShiftLattice lat;
    lat.n_modes = 2;
    lat.basis = {
        Vec{kRootPi, kRootPi, 0.0, 0.0},
        Vec{kRootPi, -kRootPi, 0.0, 0.0},
        Vec{0.0, 0.0, kRootPi, kRootPi},
        Vec{0.0, 0.0, kRootPi, -kRootPi},
    };
    return lat;
}

// Conjugating a displacement by a Gaussian unitary maps its phase-space
// vector through the symplectic matrix, so a lattice transforms basis-wise.
inline ShiftLattice transform(const ShiftLattice& lat, const GaussianOp& op) {
    if (op.n_modes != lat.n_modes) throw std::invalid_argument("transform: mode-count mismatch");
    ShiftLattice out;
    out.n_modes = lat.n_modes;
    for (const Vec& b : lat.basis) out.basis.push_back(mat_vec(op.matrix, b));
    return out;
}

namespace detail {
// Every vector of `a` must be an integer combination of `b`'s basis.
inline bool sublattice_of(const ShiftLattice& a, const ShiftLattice& b, double tol) {
    const std::size_t d = 2 * b.n_modes;
    Mat basis_b(d, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) basis_b(i, j) = b.basis[j][i];
    for (const Vec& v : a.basis) {
        Vec x;
        try {
            x = solve(basis_b, v);
        } catch (const std::domain_error&) {
            return false;  // rank-deficient basis cannot span
        }
        for (double c : x)
            if (std::abs(c - std::round(c)) > tol) return false;
    }
    return true;
}
}  // namespace detail

// Equality as point sets: mutual integer-combination containment.
inline bool lattices_equal(const ShiftLattice& a, const ShiftLattice& b, double tol = 1e-9) {
    if (a.n_modes != b.n_modes) throw std::invalid_argument("lattices_equal: dimension mismatch");
    if (a.basis.size() != 2 * a.n_modes || b.basis.size() != 2 * b.n_modes)
        throw std::invalid_argument("lattices_equal: basis must hold 2N generators");
    return detail::sublattice_of(a, b, tol) && detail::sublattice_of(b, a, tol);
}

}  // namespace qrl
