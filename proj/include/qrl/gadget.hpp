#pragma once

// Measurement gadgets for macronode teleportation.
//
// A macronode pairs two modes (a, b); measuring both in rotated quadrature
// bases p_{θa}, p_{θb} teleports the input through the gate
//
//   V(θa, θb) = R(θ₊ − π/2) S(tan θ₋) R(θ₊),     θ± = (θa ± θb)/2,
//
// together with an outcome-dependent displacement D(μ_{a,b}),
//
//   μ_{a,b} = (−m_a e^{iθ_b} − m_b e^{iθ_a}) / sin(2θ₋).
//
// The pair is degenerate when sin(2θ₋) = 0 — both detectors then probe the
// same quadrature and no complete gate is carried out.
//
// Two-mode gates use a four-angle gadget sandwiched between balanced beam
// splitters:
//
//   V⁽²⁾(θa..θd) = B₂₁ [ V(θa,θb) ⊗ V(θc,θd) ] B₁₂,
//
// with displacements μ± = (μ_{c,d} ± μ_{a,b})/√2 landing on output modes 1
// and 2 respectively (the beam splitter mixes the single-gadget amplitudes
// exactly: B₂₁ ∘ [D(μ_{a,b}) ⊗ D(μ_{c,d})] = [D(μ₊) ⊗ D(μ₋)] ∘ B₂₁).
//
// angles_for() tabulates the measurement bases realizing the standard logical
// gate set; every set pushed through v_gate / two_mode_v reproduces its
// logical_target() exactly.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrl/gaussian.hpp"

namespace qrl {

inline constexpr double kDegenerateTol = 1e-9;

struct DegenerateAngles : std::domain_error {
    explicit DegenerateAngles(const std::string& what) : std::domain_error(what) {}
};

// Measurement bases for one gate: two angles per macronode, so size 2 for a
// single-mode gate and 4 for a two-mode gate.
struct AngleSet {
    std::vector<double> angles_rad;

    std::size_t arity() const { return angles_rad.size() / 2; }
};

// Outcome-derived displacement amplitudes for the two outputs of a gadget.
struct OutcomePair {
    std::complex<double> plus;
    std::complex<double> minus;
};

// --- gate through a single macronode --------------------------------------

inline GaussianOp v_gate(double theta_a, double theta_b) {
    const double minus = 0.5 * (theta_a - theta_b);
    const double plus = 0.5 * (theta_a + theta_b);
    if (std::abs(std::sin(2 * minus)) < kDegenerateTol)
        throw DegenerateAngles("v_gate: theta_a - theta_b is a multiple of pi; bases are degenerate");
    return compose(rotation(plus - M_PI / 2), compose(squeeze(std::tan(minus)), rotation(plus)));
}

inline std::complex<double> outcome_displacement(double theta_a, double theta_b, double m_a, double m_b) {
    const double s = std::sin(theta_a - theta_b);
    if (std::abs(s) < kDegenerateTol)
        throw DegenerateAngles("outcome_displacement: degenerate basis pair");
    const std::complex<double> i(0.0, 1.0);
    return (-m_a * std::exp(i * theta_b) - m_b * std::exp(i * theta_a)) / s;
}

// --- gate across two macronodes --------------------------------------------

inline GaussianOp two_mode_v(double theta_a, double theta_b, double theta_c, double theta_d) {
    const GaussianOp inner = tensor(v_gate(theta_a, theta_b), v_gate(theta_c, theta_d));
    return compose(beamsplitter(1, 0, M_PI / 4, 2), compose(inner, beamsplitter(0, 1, M_PI / 4, 2)));
}

inline OutcomePair two_mode_displacements(double theta_a, double theta_b, double theta_c, double theta_d,
                                          double m_a, double m_b, double m_c, double m_d) {
    const std::complex<double> mu_ab = outcome_displacement(theta_a, theta_b, m_a, m_b);
    const std::complex<double> mu_cd = outcome_displacement(theta_c, theta_d, m_c, m_d);
    const double rt2 = std::sqrt(2.0);
    return OutcomePair{(mu_cd + mu_ab) / rt2, (mu_cd - mu_ab) / rt2};
}

// Heterodyne (dual-homodyne) readout of a macronode: the two samples combine
// into symmetric/antisymmetric amplitudes on the virtual output pair.
inline OutcomePair heterodyne_postprocess(std::complex<double> alpha_1, std::complex<double> alpha_2) {
    const double rt2 = std::sqrt(2.0);
    return OutcomePair{(alpha_1 + alpha_2) / rt2, (alpha_1 - alpha_2) / rt2};
}

// --- logical gate dictionary ------------------------------------------------

enum class LogicalGate {
    I,        // single-mode identity (teleportation step)
    F,        // Fourier; Hadamard-equivalent on the encoded qubit
    PPlus,    // shear P(+1)
    PMinus,   // shear P(−1)
    CZPlus,   // controlled-Z, weight +1
    CZMinus,  // controlled-Z, weight −1
    Swap,     // mode exchange
    II,       // two-mode identity (parallel teleportation)
    FF,       // Fourier on both modes
    PPPlus,   // P(+1) ⊗ P(+1)
    PPMinus,  // P(−1) ⊗ P(−1)
};

inline std::size_t gate_arity(LogicalGate g) {
    switch (g) {
        case LogicalGate::I:
        case LogicalGate::F:
        case LogicalGate::PPlus:
        case LogicalGate::PMinus:
            return 1;
        default:
            return 2;
    }
}

inline const char* gate_name(LogicalGate g) {
    switch (g) {
        case LogicalGate::I: return "I";
        case LogicalGate::F: return "F";
        case LogicalGate::PPlus: return "P+";
        case LogicalGate::PMinus: return "P-";
        case LogicalGate::CZPlus: return "CZ+";
        case LogicalGate::CZMinus: return "CZ-";
        case LogicalGate::Swap: return "SWAP";
        case LogicalGate::II: return "II";
        case LogicalGate::FF: return "FF";
        case LogicalGate::PPPlus: return "PP+";
        case LogicalGate::PPMinus: return "PP-";
    }
    throw std::invalid_argument("gate_name: unknown gate");
}

inline std::vector<LogicalGate> all_gates() {
    return {LogicalGate::I,      LogicalGate::F,       LogicalGate::PPlus,  LogicalGate::PMinus,
            LogicalGate::CZPlus, LogicalGate::CZMinus, LogicalGate::Swap,   LogicalGate::II,
            LogicalGate::FF,     LogicalGate::PPPlus,  LogicalGate::PPMinus};
}

// Accepts canonical names plus common aliases (H for F, P for P+, CZ for CZ+,
// PP for PP+).  Case-sensitive on purpose: gate names are uppercase tokens.
inline LogicalGate parse_gate(const std::string& token) {
    if (token == "I") return LogicalGate::I;
    if (token == "F" || token == "H") return LogicalGate::F;
    if (token == "P+" || token == "P") return LogicalGate::PPlus;
    if (token == "P-") return LogicalGate::PMinus;
    if (token == "CZ+" || token == "CZ") return LogicalGate::CZPlus;
    if (token == "CZ-") return LogicalGate::CZMinus;
    if (token == "SWAP") return LogicalGate::Swap;
    if (token == "II") return LogicalGate::II;
    if (token == "FF") return LogicalGate::FF;
    if (token == "PP+" || token == "PP") return LogicalGate::PPPlus;
    if (token == "PP-") return LogicalGate::PPMinus;
    throw std::invalid_argument("parse_gate: unknown gate token '" + token + "'");
}

// Ideal symplectic action of each logical gate.
inline GaussianOp logical_target(LogicalGate g) {
    switch (g) {
        case LogicalGate::I: return GaussianOp::identity(1);
        case LogicalGate::F: return rotation(M_PI / 2);
        case LogicalGate::PPlus: return shear(1.0);
        case LogicalGate::PMinus: return shear(-1.0);
        case LogicalGate::CZPlus: return controlled_z(1.0);
        case LogicalGate::CZMinus: return controlled_z(-1.0);
        case LogicalGate::Swap: {
            Mat s(4, 4);
            s(0, 1) = s(1, 0) = s(2, 3) = s(3, 2) = 1.0;  // q1<->q2, p1<->p2
            return GaussianOp(2, s, Vec(4, 0.0));
        }
        case LogicalGate::II: return GaussianOp::identity(2);
        case LogicalGate::FF: return tensor(rotation(M_PI / 2), rotation(M_PI / 2));
        case LogicalGate::PPPlus: return tensor(shear(1.0), shear(1.0));
        case LogicalGate::PPMinus: return tensor(shear(-1.0), shear(-1.0));
    }
    throw std::invalid_argument("logical_target: unknown gate");
}

// Measurement bases realizing each gate (χ = arctan 2).
inline AngleSet angles_for(LogicalGate g) {
    const double h = M_PI / 2;
    const double chi = std::atan(2.0);
    switch (g) {
        case LogicalGate::I: return {{h, 0.0}};
        case LogicalGate::F: return {{3 * M_PI / 4, M_PI / 4}};
        case LogicalGate::PPlus: return {{h, h - chi}};
        case LogicalGate::PMinus: return {{h, h + chi}};
        case LogicalGate::CZPlus: return {{h, h + chi, h, h - chi}};
        case LogicalGate::CZMinus: return {{h, h - chi, h, h + chi}};
        case LogicalGate::Swap: return {{0.0, h, h, 0.0}};
        case LogicalGate::II: return {{h, 0.0, h, 0.0}};
        case LogicalGate::FF: return {{3 * M_PI / 4, M_PI / 4, 3 * M_PI / 4, M_PI / 4}};
        case LogicalGate::PPPlus: return {{h, h - chi, h, h - chi}};
        case LogicalGate::PPMinus: return {{h, h + chi, h, h + chi}};
    }
    throw std::invalid_argument("angles_for: unknown gate");
}

// The gate an angle set realizes, as a GaussianOp (1 or 2 modes).
inline GaussianOp realized_gate(const AngleSet& set) {
    if (set.angles_rad.size() == 2) return v_gate(set.angles_rad[0], set.angles_rad[1]);
    if (set.angles_rad.size() == 4)
        return two_mode_v(set.angles_rad[0], set.angles_rad[1], set.angles_rad[2], set.angles_rad[3]);
    throw std::invalid_argument("realized_gate: angle set must hold 2 or 4 angles");
}

}  // namespace qrl
