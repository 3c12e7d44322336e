#pragma once

// Test-only Gaussian measurement toolkit: tensor two states, condition on a
// rotated-quadrature (homodyne) outcome, and measure state distance.  Used to
// cross-check the macronode gadget algebra against first-principles Gaussian
// conditioning: teleporting through a finitely squeezed EPR pair must converge
// to D(μ)·V(θa,θb) as the squeezing grows.

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include <qrl/gaussian.hpp>
#include <qrl/linalg.hpp>

namespace qrl::testsupport {

// a's modes first, then b's, in the global (q.., p..) quadrature ordering.
inline GaussianState state_tensor(const GaussianState& a, const GaussianState& b) {
    const std::size_t na = a.n_modes(), nb = b.n_modes(), n = na + nb;
    auto ga = [&](std::size_t i) { return i < na ? i : n + (i - na); };
    auto gb = [&](std::size_t i) { return i < nb ? na + i : n + na + (i - nb); };
    GaussianState out;
    out.mean.assign(2 * n, 0.0);
    out.cov = Mat(2 * n, 2 * n);
    for (std::size_t i = 0; i < 2 * na; ++i) {
        out.mean[ga(i)] = a.mean[i];
        for (std::size_t j = 0; j < 2 * na; ++j) out.cov(ga(i), ga(j)) = a.cov(i, j);
    }
    for (std::size_t i = 0; i < 2 * nb; ++i) {
        out.mean[gb(i)] = b.mean[i];
        for (std::size_t j = 0; j < 2 * nb; ++j) out.cov(gb(i), gb(j)) = b.cov(i, j);
    }
    return out;
}

// Homodyne p_θ = p cos θ + q sin θ on one mode: rotate the mode by θ, condition
// every other quadrature on p_mode = outcome, then remove the measured mode.
inline GaussianState condition_p_theta(const GaussianState& st, std::size_t mode, double theta,
                                       double outcome) {
    const std::size_t n = st.n_modes();
    if (mode >= n) throw std::invalid_argument("condition_p_theta: mode out of range");
    const GaussianState rot = apply(embed(rotation(theta), {mode}, n), st);

    const std::size_t b = n + mode;  // index of the measured quadrature
    const double vbb = rot.cov(b, b);
    if (!(vbb > 0.0)) throw std::domain_error("condition_p_theta: measured quadrature has no variance");

    const std::size_t nn = n - 1;
    auto keep = [&](std::size_t old_mode, bool momentum) {
        const std::size_t shifted = old_mode - (old_mode > mode ? 1 : 0);
        return momentum ? nn + shifted : shifted;
    };

    GaussianState out;
    out.mean.assign(2 * nn, 0.0);
    out.cov = Mat(2 * nn, 2 * nn);
    // old quadrature indices that survive, with their new positions
    std::vector<std::size_t> old_idx;
    std::vector<std::size_t> new_idx;
    for (std::size_t m = 0; m < n; ++m) {
        if (m == mode) continue;
        old_idx.push_back(m);
        new_idx.push_back(keep(m, false));
        old_idx.push_back(n + m);
        new_idx.push_back(keep(m, true));
    }
    const double gain = (outcome - rot.mean[b]) / vbb;
    for (std::size_t ii = 0; ii < old_idx.size(); ++ii) {
        const std::size_t i = old_idx[ii];
        out.mean[new_idx[ii]] = rot.mean[i] + rot.cov(i, b) * gain;
        for (std::size_t jj = 0; jj < old_idx.size(); ++jj) {
            const std::size_t j = old_idx[jj];
            out.cov(new_idx[ii], new_idx[jj]) = rot.cov(i, j) - rot.cov(i, b) * rot.cov(b, j) / vbb;
        }
    }
    return out;
}

inline double state_distance(const GaussianState& a, const GaussianState& b) {
    return vec_norm(vec_sub(a.mean, b.mean)) + frobenius_diff(a.cov, b.cov);
}

}  // namespace qrl::testsupport
