#pragma once

// Registry of circuit identities, each verified over randomized parameter
// draws.  Exact identities (equalities of affine symplectic maps) are checked
// by Frobenius/Euclidean residual and sit at machine precision; the "bounce"
// identities — moving a two-mode gate across a pair of EPR states onto the
// opposite legs — hold only in the infinite-squeezing limit, so they are
// evaluated on finite-squeezing covariances and report a residual per
// squeezing parameter r (the mismatch decays as e^{−2r}; weight-g gates give
// exactly g²e^{−2r} on the nullifier variances, beam splitters are exact at
// every r).
//
// Registered names:
//   bloch-messiah        S(tan θ) = R(θ) P(2 cot 2θ) R(θ − π/2)
//   vgate-equivalence    R(θ₊−π/2) S(tan θ₋) R(θ₊) = R(θa−π/2) P(2 cot 2θ₋) R(θa−π/2)
//   cz-decomposition     C_Z(g) = B₂₁ [P(−g) ⊗ P(g)] B₁₂
//   disentangle          B₂₁ (V ⊗ V) B₁₂ = V ⊗ V
//   four-splitter        [B₁₂(θ)B₃₄(θ), B₂₃(φ)B₄₁(φ)] = 0
//   bs-ldu               B_jk(θ) = C_X^{jk}(tan θ)[S_j(cos θ) ⊗ S_k(sec θ)]C_X^{kj}(−tan θ)
//   bounce-cz            C_Z on the inner EPR legs ↔ C_Z on the outer legs (same weight)
//   bounce-cx            C_X on the inner EPR legs ↔ C_X on the outer legs (weight negated)
//   bounce-bs            beam splitter bounce, exact at all r
//   two-mode-derivation  [D(μ₊) ⊗ D(μ₋)] V⁽²⁾(θ⃗) = B₂₁ [D(μab)V(θa,θb) ⊗ D(μcd)V(θc,θd)] B₁₂

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrl/gadget.hpp"
#include "qrl/gaussian.hpp"
#include "qrl/gkp.hpp"
#include "qrl/rng.hpp"

namespace qrl {

struct IdentityReport {
    std::string name;
    double residual = 0.0;                   // worst residual over all trials (bounces: at r = 4)
    std::map<std::string, double> parameters;  // parameter values of the worst draw
    std::map<int, double> residual_by_r;     // bounce identities only: worst residual per r ∈ {2,3,4}
};

namespace detail {

inline double op_residual(const GaussianOp& a, const GaussianOp& b) {
    return frobenius_diff(a.matrix, b.matrix) + vec_norm(vec_sub(a.shift, b.shift));
}

// Angle with the squeeze/shear factors well-conditioned: |sin 2θ| ≥ 0.2.
inline double sample_nondegenerate_half_angle(SplitMix64& rng) {
    for (;;) {
        const double t = rng.uniform(-M_PI, M_PI);
        if (std::abs(std::sin(2 * t)) >= 0.2) return t;
    }
}

// Angle pair (θa, θb) with |sin(θa − θb)| ≥ 0.2.
inline std::pair<double, double> sample_gadget_angles(SplitMix64& rng) {
    for (;;) {
        const double a = rng.uniform(-M_PI, M_PI);
        const double b = rng.uniform(-M_PI, M_PI);
        if (std::abs(std::sin(a - b)) >= 0.2) return {a, b};
    }
}

// Covariance of two EPR (two-mode-squeezed) pairs on modes (0,1) and (2,3).
inline Mat epr_pair_cov(double r) {
    Mat cov(8, 8);
    const double ch = std::cosh(2 * r) / 2, sh = std::sinh(2 * r) / 2;
    for (std::size_t i = 0; i < 8; ++i) cov(i, i) = ch;
    for (std::size_t pair = 0; pair < 2; ++pair) {
        const std::size_t a = 2 * pair, b = 2 * pair + 1;
        cov(a, b) = cov(b, a) = sh;          // q_a q_b
        cov(4 + a, 4 + b) = cov(4 + b, 4 + a) = -sh;  // p_a p_b
    }
    return cov;
}

// Worst mismatch of EPR nullifier variances between the two sides of a bounce:
// with M = S_rhs⁻¹ S_lhs, compare vᵀ MΣMᵀ v against vᵀ Σ v for each nullifier
// v ∈ {q0−q1, p0+p1, q2−q3, p2+p3}.
inline double bounce_residual(const GaussianOp& lhs, const GaussianOp& rhs, double r) {
    const Mat m = compose(inverse(rhs), lhs).matrix;
    const Mat sigma = epr_pair_cov(r);
    const Mat moved = m * sigma * transpose(m);  // covariance after the pulled-back map, Var(vᵀMx) = vᵀ MΣMᵀ v
    double worst = 0.0;
    auto nullifier = [](std::size_t i, std::size_t j, double sj) {
        Vec v(8, 0.0);
        v[i] = 1.0;
        v[j] = sj;
        return v;
    };
    const Vec nulls[4] = {nullifier(0, 1, -1.0), nullifier(4, 5, 1.0), nullifier(2, 3, -1.0), nullifier(6, 7, 1.0)};
    for (const Vec& v : nulls) {
        const double d = std::abs(quad_form(moved, v) - quad_form(sigma, v));
        if (d > worst) worst = d;
    }
    return worst;
}

struct BounceSides {
    GaussianOp lhs;
    GaussianOp rhs;
};

// The bounce moves a gate from the inner EPR legs (modes 1, 3) to the outer
// legs (modes 0, 2); C_X flips the sign of its weight, beam splitters do not.
inline BounceSides bounce_sides(const std::string& name, double g, double theta) {
    if (name == "bounce-cz")
        return {embed(controlled_z(g), {1, 3}, 4), embed(controlled_z(g), {0, 2}, 4)};
    if (name == "bounce-cx")
        return {controlled_x(1, 3, g, 4), controlled_x(0, 2, -g, 4)};
    return {beamsplitter(1, 3, theta, 4), beamsplitter(2, 0, theta, 4)};  // bounce-bs
}

}  // namespace detail

inline std::vector<std::string> registered_identities() {
    return {"bloch-messiah", "vgate-equivalence", "cz-decomposition", "disentangle",
            "four-splitter", "bs-ldu",            "bounce-cz",        "bounce-cx",
            "bounce-bs",     "two-mode-derivation"};
}

inline IdentityReport verify_identity(const std::string& name, std::size_t trials, std::uint64_t rng_seed) {
    if (trials < 1) throw std::invalid_argument("verify_identity: trials must be >= 1");
    SplitMix64 rng(rng_seed);
    IdentityReport report;
    report.name = name;

    auto record = [&](double residual, std::map<std::string, double> params) {
        if (residual >= report.residual) {
            report.residual = residual;
            report.parameters = std::move(params);
        }
    };

    if (name == "bloch-messiah") {
        for (std::size_t t = 0; t < trials; ++t) {
            const double th = detail::sample_nondegenerate_half_angle(rng);
            const GaussianOp lhs = squeeze(std::tan(th));
            const GaussianOp rhs =
                compose(rotation(th), compose(shear(2.0 / std::tan(2 * th)), rotation(th - M_PI / 2)));
            record(detail::op_residual(lhs, rhs), {{"theta", th}});
        }
    } else if (name == "vgate-equivalence") {
        for (std::size_t t = 0; t < trials; ++t) {
            const auto [a, b] = detail::sample_gadget_angles(rng);
            const double minus = 0.5 * (a - b);
            const GaussianOp lhs = v_gate(a, b);
            const GaussianOp shear_form = compose(
                rotation(a - M_PI / 2), compose(shear(2.0 / std::tan(2 * minus)), rotation(a - M_PI / 2)));
            record(detail::op_residual(lhs, shear_form), {{"theta_a", a}, {"theta_b", b}});
        }
    } else if (name == "cz-decomposition") {
        for (std::size_t t = 0; t < trials; ++t) {
            const double g = rng.uniform(0.5, 2.0);
            const GaussianOp lhs = controlled_z(g);
            const GaussianOp rhs = compose(
                beamsplitter(1, 0, M_PI / 4, 2),
                compose(tensor(shear(-g), shear(g)), beamsplitter(0, 1, M_PI / 4, 2)));
            record(detail::op_residual(lhs, rhs), {{"g", g}});
        }
    } else if (name == "disentangle") {
        for (std::size_t t = 0; t < trials; ++t) {
            const auto [a, b] = detail::sample_gadget_angles(rng);
            const GaussianOp v = v_gate(a, b);
            const GaussianOp lhs = compose(
                beamsplitter(1, 0, M_PI / 4, 2), compose(tensor(v, v), beamsplitter(0, 1, M_PI / 4, 2)));
            record(detail::op_residual(lhs, tensor(v, v)), {{"theta_a", a}, {"theta_b", b}});
        }
    } else if (name == "four-splitter") {
        for (std::size_t t = 0; t < trials; ++t) {
            const double th = rng.uniform(-M_PI, M_PI);
            const double ph = rng.uniform(-M_PI, M_PI);
            const GaussianOp outer = compose(beamsplitter(0, 1, th, 4), beamsplitter(2, 3, th, 4));
            const GaussianOp inner = compose(beamsplitter(1, 2, ph, 4), beamsplitter(3, 0, ph, 4));
            record(detail::op_residual(compose(outer, inner), compose(inner, outer)),
                   {{"theta", th}, {"phi", ph}});
        }
    } else if (name == "bs-ldu") {
        for (std::size_t t = 0; t < trials; ++t) {
            double th;
            do {
                th = rng.uniform(-M_PI, M_PI);
            } while (std::abs(std::cos(th)) < 0.2);
            const GaussianOp lhs = beamsplitter(0, 1, th, 2);
            const GaussianOp rhs = compose(
                controlled_x(0, 1, std::tan(th), 2),
                compose(tensor(squeeze(std::cos(th)), squeeze(1.0 / std::cos(th))),
                        controlled_x(1, 0, -std::tan(th), 2)));
            record(detail::op_residual(lhs, rhs), {{"theta", th}});
        }
    } else if (name == "bounce-cz" || name == "bounce-cx" || name == "bounce-bs") {
        for (int r : {2, 3, 4}) report.residual_by_r[r] = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            const double g = rng.uniform(0.5, 2.0);
            const double th = rng.uniform(-M_PI, M_PI);
            const auto sides = detail::bounce_sides(name, g, th);
            double at4 = 0.0;
            for (int r : {2, 3, 4}) {
                const double res = detail::bounce_residual(sides.lhs, sides.rhs, static_cast<double>(r));
                if (res > report.residual_by_r[r]) report.residual_by_r[r] = res;
                if (r == 4) at4 = res;
            }
            record(at4, {{"g", g}, {"theta", th}});
        }
    } else if (name == "two-mode-derivation") {
        for (std::size_t t = 0; t < trials; ++t) {
            const auto [a, b] = detail::sample_gadget_angles(rng);
            const auto [c, d] = detail::sample_gadget_angles(rng);
            const double ma = rng.uniform(-2.0, 2.0), mb = rng.uniform(-2.0, 2.0);
            const double mc = rng.uniform(-2.0, 2.0), md = rng.uniform(-2.0, 2.0);
            const OutcomePair mu = two_mode_displacements(a, b, c, d, ma, mb, mc, md);
            const GaussianOp lhs = compose(tensor(displacement(mu.plus), displacement(mu.minus)),
                                           two_mode_v(a, b, c, d));
            const GaussianOp left_arm = compose(displacement(outcome_displacement(a, b, ma, mb)), v_gate(a, b));
            const GaussianOp right_arm = compose(displacement(outcome_displacement(c, d, mc, md)), v_gate(c, d));
            const GaussianOp rhs = compose(
                beamsplitter(1, 0, M_PI / 4, 2),
                compose(tensor(left_arm, right_arm), beamsplitter(0, 1, M_PI / 4, 2)));
            record(detail::op_residual(lhs, rhs),
                   {{"theta_a", a}, {"theta_b", b}, {"theta_c", c}, {"theta_d", d},
                    {"m_a", ma}, {"m_b", mb}, {"m_c", mc}, {"m_d", md}});
        }
    } else {
        throw std::invalid_argument("verify_identity: unknown identity '" + name + "'");
    }
    return report;
}

}  // namespace qrl
