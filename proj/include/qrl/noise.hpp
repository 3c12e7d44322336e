#pragma once

// Finite-squeezing noise analytics.
//
// Finite squeezing turns each ideal grid-state spike into a Gaussian of
// covariance η (the "error matrix").  One teleportation hop applies the gate
// symplectic to the incoming spike and adds a fresh measurement blur:
//
//   η_gate = S η_in Sᵀ + δ² I,      with η_in = δ² I for ideal-in-blurred-out
//
// so every entry of η_gate is an integer multiple of δ².  Ordering matches
// the global quadrature convention (q₁[, q₂], p₁[, p₂]).
//
// A quadrature of spike variance σ² survives ideal error correction with
// probability erf(√(π/(8σ²))) — the mass of the spike within ±√π/2 — and a
// gate succeeds when every quadrature of every mode survives:
//
//   P_err = 1 − Π_j P_succ,q^{(j)} P_succ,p^{(j)}.
//
// The product uses only the diagonal of η (marginal variances); off-diagonal
// correlations in η_P and η_CZ are deliberately ignored by this formula, and
// the Monte Carlo module surfaces the (small) joint-vs-product deviation as a
// diagnostic.  required_squeezing inverts P_err(δ²) by bisection; squeezing
// is quoted as dB = −10 log₁₀(2δ²).

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrl/gadget.hpp"
#include "qrl/gaussian.hpp"
#include "qrl/gkp.hpp"
#include "qrl/linalg.hpp"

namespace qrl {

struct ErrorMatrix {
    std::size_t dim = 0;  // 2 (single-mode) or 4 (two-mode)
    Mat mat;

    static ErrorMatrix isotropic(std::size_t dim, double variance) {
        return ErrorMatrix{dim, scaled(Mat::identity(dim), variance)};
    }
};

// Gaussian random-displacement channel: η → η + δ²I.
inline ErrorMatrix blur(const ErrorMatrix& eta, double delta_sq) {
    if (!(delta_sq > 0.0)) throw std::invalid_argument("blur: variance must be positive");
    Mat m = eta.mat;
    for (std::size_t i = 0; i < m.rows; ++i) m(i, i) += delta_sq;
    return ErrorMatrix{eta.dim, std::move(m)};
}

// One teleportation hop: propagate the incoming spike through the gate and
// add the fresh measurement blur.
inline ErrorMatrix propagate(const GaussianOp& op, const ErrorMatrix& eta_in, double delta_sq) {
    if (eta_in.mat.rows != 2 * op.n_modes) throw std::invalid_argument("propagate: dimension mismatch");
    if (!std::isfinite(delta_sq)) throw std::invalid_argument("propagate: non-finite variance");
    Mat m = op.matrix * eta_in.mat * transpose(op.matrix);
    for (std::size_t i = 0; i < m.rows; ++i) m(i, i) += delta_sq;
    return ErrorMatrix{eta_in.dim, std::move(m)};
}

// Spike covariance after one hop of the given gate on blurred ideal inputs.
// Every entry is an exact integer multiple of δ².
inline ErrorMatrix gate_error_matrix(LogicalGate gate, double delta_sq) {
    if (!(delta_sq > 0.0)) throw std::invalid_argument("gate_error_matrix: variance must be positive");
    const GaussianOp target = logical_target(gate);
    return propagate(target, ErrorMatrix::isotropic(2 * target.n_modes, delta_sq), delta_sq);
}

// Probability that a spike of variance σ² stays within ±√π/2 of its bin center.
inline double success_prob_quadrature(double sigma_sq) {
    if (!(sigma_sq > 0.0)) throw std::invalid_argument("success_prob_quadrature: variance must be positive");
    return std::erf(std::sqrt(M_PI / (8.0 * sigma_sq)));
}

// Logical error probability of one gate hop: any quadrature of any mode leaks.
inline double gate_error_rate(LogicalGate gate, double delta_sq) {
    const ErrorMatrix eta = gate_error_matrix(gate, delta_sq);
    double succ = 1.0;
    for (std::size_t j = 0; j < eta.mat.rows; ++j) succ *= success_prob_quadrature(eta.mat(j, j));
    return 1.0 - succ;
}

inline double gate_error_rate_db(LogicalGate gate, double db) {
    return gate_error_rate(gate, variance_from_db(db));
}

// Squeezing (dB) at which the gate's error rate hits `target`, by bisection
// on δ² over the dB ∈ [0, 30] bracket (P_err is strictly increasing in δ²).
inline double required_squeezing(LogicalGate gate, double target) {
    if (!(target > 0.0) || !(target < 1.0))
        throw std::invalid_argument("required_squeezing: target must lie in (0, 1)");
    double lo = variance_from_db(30.0);  // error rate far below any sensible target
    double hi = variance_from_db(0.0);
    if (gate_error_rate(gate, hi) < target || gate_error_rate(gate, lo) > target)
        throw std::domain_error("required_squeezing: target not bracketed in [0, 30] dB");
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (gate_error_rate(gate, mid) < target ? lo : hi) = mid;
    }
    return db_from_variance(0.5 * (lo + hi));
}

struct SweepRow {
    double db = 0.0;
    LogicalGate gate = LogicalGate::I;
    double p_err = 0.0;
};

// Error-rate curves over an evenly spaced dB grid, one contiguous block per
// gate in input order.
inline std::vector<SweepRow> sweep(const std::vector<LogicalGate>& gates, double db_min, double db_max,
                                   std::size_t steps) {
    if (!(db_min < db_max)) throw std::invalid_argument("sweep: need db_min < db_max");
    if (steps < 2) throw std::invalid_argument("sweep: need at least 2 steps");
    std::vector<SweepRow> rows;
    rows.reserve(gates.size() * steps);
    for (LogicalGate g : gates)
        for (std::size_t i = 0; i < steps; ++i) {
            const double db = db_min + (db_max - db_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
            rows.push_back(SweepRow{db, g, gate_error_rate_db(g, db)});
        }
    return rows;
}

}  // namespace qrl
