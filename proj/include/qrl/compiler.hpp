#pragma once

// Logical-circuit → measurement-schedule compiler and displacement-frame
// bookkeeping.
//
// A logical circuit is an ordered gate list over qubits (wires).  Compilation
// packs gates into time steps as-soon-as-possible: a gate lands on the
// earliest step where all its targets are free.  Every step, every wire
// teleports through exactly one gadget, so wires untouched by any gate in a
// step receive explicit identity angles {π/2, 0} — idle still costs one hop
// (and performs error correction).  Macronode ids number the steps' gadgets
// sequentially in emission order; within a step, gadgets are emitted in
// ascending order of their smallest target mode.
//
// Compilation is exact at the symplectic level: composing the realized gates
// of a schedule (zero outcomes) reproduces the circuit's target unitary to
// machine precision, which verify_compilation checks as a Frobenius residual.
//
// The displacement frame is the accumulated known phase-space shift from
// measurement outcomes.  It transforms covariantly under each scheduled
// symplectic (frame_update), and at the end of the line resolves into a
// per-qubit Pauli label by modular binning: a q-shift at an odd multiple of
// √π is an X, a p-shift a Z, both a Y (logical_correction).
//
// Interchange formats (JSON):
//   circuit   {"n_qubits": int, "gates": [{"kind": "H"|"P+"|"P-"|"CZ+"|"CZ-"|
//              "SWAP"|"I", "targets": [int, …]}]}
//   schedule  {"steps": [{"macronode": int, "arity": 1|2,
//              "angles_rad": [double, …], "targets": [int, …]}]}

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrl/gadget.hpp"
#include "qrl/gaussian.hpp"
#include "qrl/gkp.hpp"
#include "qrl/linalg.hpp"

namespace qrl {

struct GateApplication {
    LogicalGate gate = LogicalGate::I;
    std::vector<std::size_t> targets;
};

struct LogicalCircuit {
    std::size_t n_qubits = 0;
    std::vector<GateApplication> gates;
};

struct ScheduleStep {
    std::size_t macronode = 0;
    std::size_t arity = 1;
    AngleSet angles;
    std::vector<std::size_t> targets;
};

struct MeasurementSchedule {
    std::vector<ScheduleStep> steps;
};

struct DisplacementFrame {
    Vec shift;  // 2N accumulated correctable displacement

    static DisplacementFrame zero(std::size_t n_modes) { return DisplacementFrame{Vec(2 * n_modes, 0.0)}; }
};

enum class Pauli { I, X, Z, Y };

inline char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Z: return 'Z';
        case Pauli::Y: return 'Y';
    }
    throw std::invalid_argument("pauli_char: unknown label");
}

inline void validate_circuit(const LogicalCircuit& circuit) {
    if (circuit.n_qubits < 1) throw std::invalid_argument("circuit: need at least one qubit");
    for (const GateApplication& app : circuit.gates) {
        if (app.targets.size() != gate_arity(app.gate))
            throw std::invalid_argument(std::string("circuit: gate ") + gate_name(app.gate) +
                                        " takes " + std::to_string(gate_arity(app.gate)) + " target(s)");
        for (std::size_t t : app.targets)
            if (t >= circuit.n_qubits) throw std::invalid_argument("circuit: target out of range");
        if (app.targets.size() == 2 && app.targets[0] == app.targets[1])
            throw std::invalid_argument("circuit: two-mode gate needs distinct targets");
    }
}

// Number of modes a schedule addresses (largest target + 1).
inline std::size_t schedule_n_modes(const MeasurementSchedule& schedule) {
    if (schedule.steps.empty()) throw std::invalid_argument("schedule: empty");
    std::size_t n = 0;
    for (const ScheduleStep& step : schedule.steps)
        for (std::size_t t : step.targets) n = std::max(n, t + 1);
    return n;
}

inline MeasurementSchedule compile(const LogicalCircuit& circuit) {
    validate_circuit(circuit);

    // ASAP layering: place each gate on the earliest step with all targets free.
    std::vector<std::vector<const GateApplication*>> layers;
    std::vector<std::size_t> next_free(circuit.n_qubits, 0);
    for (const GateApplication& app : circuit.gates) {
        std::size_t layer = 0;
        for (std::size_t t : app.targets) layer = std::max(layer, next_free[t]);
        if (layer >= layers.size()) layers.resize(layer + 1);
        layers[layer].push_back(&app);
        for (std::size_t t : app.targets) next_free[t] = layer + 1;
    }
    if (layers.empty()) layers.resize(1);  // empty circuit: one all-identity step

    MeasurementSchedule schedule;
    std::size_t macronode = 0;
    for (const auto& layer : layers) {
        struct Entry {
            std::size_t key;
            LogicalGate gate;
            std::vector<std::size_t> targets;
        };
        std::vector<Entry> entries;
        std::vector<bool> covered(circuit.n_qubits, false);
        for (const GateApplication* app : layer) {
            entries.push_back({*std::min_element(app->targets.begin(), app->targets.end()), app->gate, app->targets});
            for (std::size_t t : app->targets) {
                if (covered[t]) throw std::logic_error("compile: target collision within a step");
                covered[t] = true;
            }
        }
        for (std::size_t q = 0; q < circuit.n_qubits; ++q)
            if (!covered[q]) entries.push_back({q, LogicalGate::I, {q}});
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
        for (const Entry& e : entries)
            schedule.steps.push_back({macronode++, gate_arity(e.gate), angles_for(e.gate), e.targets});
    }
    return schedule;
}

// One composed GaussianOp per time step (each step covers every mode once).
inline std::vector<GaussianOp> schedule_layer_ops(const MeasurementSchedule& schedule, std::size_t n_modes) {
    std::vector<GaussianOp> ops;
    std::vector<bool> covered(n_modes, false);
    std::size_t count = 0;
    GaussianOp current = GaussianOp::identity(n_modes);
    for (const ScheduleStep& step : schedule.steps) {
        if (step.targets.size() != step.arity || step.angles.arity() != step.arity)
            throw std::invalid_argument("schedule: step arity inconsistent with targets/angles");
        for (std::size_t t : step.targets) {
            if (t >= n_modes) throw std::invalid_argument("schedule: target out of range");
            if (covered[t]) throw std::invalid_argument("schedule: mode addressed twice in one step");
            covered[t] = true;
            ++count;
        }
        current = compose(embed(realized_gate(step.angles), step.targets, n_modes), current);
        if (count == n_modes) {
            ops.push_back(std::move(current));
            current = GaussianOp::identity(n_modes);
            covered.assign(n_modes, false);
            count = 0;
        }
    }
    if (count != 0) throw std::invalid_argument("schedule: final step leaves modes uncovered");
    return ops;
}

inline GaussianOp circuit_target_op(const LogicalCircuit& circuit) {
    validate_circuit(circuit);
    GaussianOp acc = GaussianOp::identity(circuit.n_qubits);
    for (const GateApplication& app : circuit.gates)
        acc = compose(embed(logical_target(app.gate), app.targets, circuit.n_qubits), acc);
    return acc;
}

inline GaussianOp schedule_target_op(const MeasurementSchedule& schedule, std::size_t n_modes) {
    GaussianOp acc = GaussianOp::identity(n_modes);
    for (const GaussianOp& op : schedule_layer_ops(schedule, n_modes)) acc = compose(op, acc);
    return acc;
}

// Distance between the schedule's composed symplectic (zero outcomes) and the
// circuit's target; exact compilation keeps this at machine precision.
inline double verify_compilation(const LogicalCircuit& circuit, const MeasurementSchedule& schedule) {
    const GaussianOp target = circuit_target_op(circuit);
    const GaussianOp realized = schedule_target_op(schedule, circuit.n_qubits);
    return frobenius_diff(realized.matrix, target.matrix) + vec_norm(vec_sub(realized.shift, target.shift));
}

// Advance the frame through one scheduled step: S·shift + outcome shifts.
inline DisplacementFrame frame_update(const DisplacementFrame& frame, const GaussianOp& step_op,
                                      const Vec& mu_shifts) {
    if (frame.shift.size() != 2 * step_op.n_modes || mu_shifts.size() != frame.shift.size())
        throw std::invalid_argument("frame_update: dimension mismatch");
    return DisplacementFrame{vec_add(mat_vec(step_op.matrix, frame.shift), mu_shifts)};
}

// Resolve the accumulated frame into per-qubit Pauli labels: q-shifts at odd
// multiples of √π are X, p-shifts Z, both Y.
inline std::vector<Pauli> logical_correction(const DisplacementFrame& frame) {
    const std::size_t n = frame.shift.size() / 2;
    std::vector<Pauli> labels(n, Pauli::I);
    for (std::size_t m = 0; m < n; ++m) {
        const bool x = modular_decode(frame.shift[m]).logical_flip;
        const bool z = modular_decode(frame.shift[n + m]).logical_flip;
        labels[m] = x ? (z ? Pauli::Y : Pauli::X) : (z ? Pauli::Z : Pauli::I);
    }
    return labels;
}

// --- JSON interchange -------------------------------------------------------

inline nlohmann::json circuit_to_json(const LogicalCircuit& circuit) {
    nlohmann::json gates = nlohmann::json::array();
    for (const GateApplication& app : circuit.gates) {
        // The interchange token for the Fourier gate is its qubit-level name H.
        const std::string kind = app.gate == LogicalGate::F ? "H" : gate_name(app.gate);
        gates.push_back({{"kind", kind}, {"targets", app.targets}});
    }
    return {{"n_qubits", circuit.n_qubits}, {"gates", gates}};
}

inline LogicalCircuit circuit_from_json(const nlohmann::json& doc) {
    LogicalCircuit circuit;
    circuit.n_qubits = doc.at("n_qubits").get<std::size_t>();
    for (const nlohmann::json& g : doc.at("gates")) {
        GateApplication app;
        app.gate = parse_gate(g.at("kind").get<std::string>());
        app.targets = g.at("targets").get<std::vector<std::size_t>>();
        circuit.gates.push_back(std::move(app));
    }
    validate_circuit(circuit);
    return circuit;
}

inline nlohmann::json schedule_to_json(const MeasurementSchedule& schedule) {
    nlohmann::json steps = nlohmann::json::array();
    for (const ScheduleStep& s : schedule.steps)
        steps.push_back({{"macronode", s.macronode},
                         {"arity", s.arity},
                         {"angles_rad", s.angles.angles_rad},
                         {"targets", s.targets}});
    return {{"steps", steps}};
}

inline MeasurementSchedule schedule_from_json(const nlohmann::json& doc) {
    MeasurementSchedule schedule;
    for (const nlohmann::json& s : doc.at("steps")) {
        ScheduleStep step;
        step.macronode = s.at("macronode").get<std::size_t>();
        step.arity = s.at("arity").get<std::size_t>();
        step.angles.angles_rad = s.at("angles_rad").get<std::vector<double>>();
        step.targets = s.at("targets").get<std::vector<std::size_t>>();
        if (step.arity != 1 && step.arity != 2) throw std::invalid_argument("schedule: arity must be 1 or 2");
        schedule.steps.push_back(std::move(step));
    }
    if (schedule.steps.empty()) throw std::invalid_argument("schedule: empty");
    return schedule;
}

}  // namespace qrl
