#pragma once

// Stochastic oracle for the noise analytics: samples Gaussian shift errors
// through gates and compiled schedules and estimates logical error rates.
//
// Model (one teleportation hop): the incoming spike error e ~ N(0, δ²I) is
// propagated by the step symplectic and picks up a fresh measurement blur
// f ~ N(0, δ²I); each quadrature of e″ = S·e + f is then binned by ideal
// error correction.  Hops are independent: error correction hands the next
// hop a fresh δ²-blurred spike, while the lattice part of the shift survives
// as an integer error class L ← S_int·L + k (every scheduled layer symplectic
// is an exact integer matrix).  Two binning conventions:
//   threshold — error when |e″| > √π/2 (matches the erf analytics exactly);
//   modular   — error when e″ rounds to an odd multiple of √π (diagnostic).
//
// Displacement frames: with random measurement outcomes, the known frame F
// advances covariantly (F ← S·F + μ-shifts) alongside the noise; the decoder
// subtracts F exactly, so error events depend on the noise alone, and the
// end-of-line Pauli labels after logical_correction(F) coincide with the
// zero-outcome run — the frame-covariance property the acceptance suite
// checks.  Noise and outcomes draw from separate counter-based RNG streams,
// so the two runs see bit-identical noise at the same seed.
//
// Reproducibility: shots are addressed by index in a counter-based RNG
// (seed × shot × stream), chunks of shots are distributed to threads
// atomically, and per-thread integer tallies are merged by summation —
// reports are bit-identical for any thread count.

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qrl/compiler.hpp"
#include "qrl/gadget.hpp"
#include "qrl/gkp.hpp"
#include "qrl/rng.hpp"

namespace qrl {

enum class Decoder { Threshold, Modular };

inline const char* decoder_name(Decoder d) { return d == Decoder::Threshold ? "threshold" : "modular"; }

inline Decoder parse_decoder(const std::string& token) {
    if (token == "threshold") return Decoder::Threshold;
    if (token == "modular") return Decoder::Modular;
    throw std::invalid_argument("parse_decoder: unknown decoder '" + token + "'");
}

enum class OutcomePolicy { Zero, Random };

struct SimConfig {
    double delta_sq = 0.0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    Decoder decoder = Decoder::Threshold;
};

struct SimReport {
    SimConfig config;
    std::string subject;       // gate name or "schedule"
    std::size_t n_modes = 0;
    std::size_t n_layers = 1;
    std::uint64_t trials = 0;  // shots × layers: denominator of marginal rates
    std::vector<std::uint64_t> quadrature_errors;  // per quadrature (q.., p..), summed over layers
    std::uint64_t joint_errors = 0;                // shots with ≥1 error event anywhere
    std::vector<std::uint64_t> layer_joint_errors; // shots with ≥1 error event in layer ℓ
    // Schedule runs only: per qubit, end-of-line Pauli label counts (I, X, Z, Y)
    // after applying logical_correction for the accumulated frame.
    std::vector<std::array<std::uint64_t, 4>> label_counts;

    double marginal_rate(std::size_t j) const {
        return static_cast<double>(quadrature_errors.at(j)) / static_cast<double>(trials);
    }
    double marginal_std_err(std::size_t j) const {
        const double p = marginal_rate(j);
        return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    }
    double joint_rate() const { return static_cast<double>(joint_errors) / static_cast<double>(config.shots); }
    double joint_std_err() const {
        const double p = joint_rate();
        return std::sqrt(p * (1.0 - p) / static_cast<double>(config.shots));
    }
    double layer_joint_rate(std::size_t layer) const {
        return static_cast<double>(layer_joint_errors.at(layer)) / static_cast<double>(config.shots);
    }
};

namespace detail {

inline void require_config(const SimConfig& cfg) {
    if (cfg.shots < 1) throw std::invalid_argument("simulate: need at least one shot");
    if (!(cfg.delta_sq > 0.0)) throw std::invalid_argument("simulate: variance must be positive");
}

inline std::size_t worker_count(std::uint64_t shots) {
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t cap = static_cast<std::size_t>(shots / 4096 + 1);
    return std::min<std::size_t>(std::max(1u, hw), cap);
}

// Fill out[0..dim) with N(0, δ²) draws, two per polar round.
inline void draw_normals(PhiloxStream& rng, double delta, double* out, std::size_t dim) {
    for (std::size_t i = 0; i < dim; i += 2) {
        double a, b;
        rng.normal_pair(a, b);
        out[i] = delta * a;
        if (i + 1 < dim) out[i + 1] = delta * b;
    }
}

inline bool quadrature_error(Decoder decoder, double shift, std::int64_t k) {
    return decoder == Decoder::Threshold ? error_threshold_exceeded(shift) : (k % 2) != 0;
}

}  // namespace detail

// Single-gate oracle: one hop of `gate` per shot.
inline SimReport simulate_gate(LogicalGate gate, const SimConfig& cfg) {
    detail::require_config(cfg);
    const GaussianOp target = logical_target(gate);
    const std::size_t dim = 2 * target.n_modes;
    const double delta = std::sqrt(cfg.delta_sq);

    struct Tally {
        std::array<std::uint64_t, 4> quadrature{};
        std::uint64_t joint = 0;
    };
    const std::size_t n_workers = detail::worker_count(cfg.shots);
    std::vector<Tally> tallies(n_workers);
    std::atomic<std::uint64_t> cursor{0};
    constexpr std::uint64_t kChunk = 8192;

    auto work = [&](std::size_t worker) {
        Tally& tally = tallies[worker];
        double e[4], shifted[4];
        for (;;) {
            const std::uint64_t begin = cursor.fetch_add(kChunk);
            if (begin >= cfg.shots) break;
            const std::uint64_t end = std::min(cfg.shots, begin + kChunk);
            for (std::uint64_t shot = begin; shot < end; ++shot) {
                PhiloxStream noise(cfg.seed, shot, 0);
                detail::draw_normals(noise, delta, e, dim);
                for (std::size_t i = 0; i < dim; ++i) {
                    double acc = 0.0;
                    for (std::size_t j = 0; j < dim; ++j) acc += target.matrix(i, j) * e[j];
                    shifted[i] = acc;
                }
                detail::draw_normals(noise, delta, e, dim);  // reuse e as the blur
                bool any = false;
                for (std::size_t i = 0; i < dim; ++i) {
                    const double s = shifted[i] + e[i];
                    const auto k = static_cast<std::int64_t>(std::llround(s / kRootPi));
                    if (detail::quadrature_error(cfg.decoder, s, k)) {
                        ++tally.quadrature[i];
                        any = true;
                    }
                }
                if (any) ++tally.joint;
            }
        }
    };

    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(work, w);
    work(0);
    for (std::thread& t : pool) t.join();

    SimReport report;
    report.config = cfg;
    report.subject = gate_name(gate);
    report.n_modes = target.n_modes;
    report.n_layers = 1;
    report.trials = cfg.shots;
    report.quadrature_errors.assign(dim, 0);
    for (const Tally& t : tallies) {
        for (std::size_t i = 0; i < dim; ++i) report.quadrature_errors[i] += t.quadrature[i];
        report.joint_errors += t.joint;
    }
    report.layer_joint_errors = {report.joint_errors};
    return report;
}

// Schedule oracle: propagates noise, integer error class, and (optionally) a
// random displacement frame through every compiled layer.
inline SimReport simulate_schedule(const MeasurementSchedule& schedule, const SimConfig& cfg,
                                   OutcomePolicy outcomes = OutcomePolicy::Zero) {
    detail::require_config(cfg);
    const std::size_t n_modes = schedule_n_modes(schedule);
    const std::size_t dim = 2 * n_modes;
    const std::vector<GaussianOp> layers = schedule_layer_ops(schedule, n_modes);
    const double delta = std::sqrt(cfg.delta_sq);

    // Every layer symplectic is a product of integer gate matrices; the
    // rounded copy propagates the error class exactly.
    std::vector<std::vector<std::int64_t>> int_layers;
    for (const GaussianOp& op : layers) {
        std::vector<std::int64_t> m(dim * dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                const double v = op.matrix(i, j);
                if (std::abs(v - std::round(v)) > 1e-9)
                    throw std::logic_error("simulate_schedule: layer symplectic is not integer");
                m[i * dim + j] = static_cast<std::int64_t>(std::llround(v));
            }
        int_layers.push_back(std::move(m));
    }

    // Layer boundaries in the step list, for outcome sampling in step order.
    std::vector<std::pair<std::size_t, std::size_t>> layer_steps;
    {
        std::size_t count = 0, begin = 0;
        for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
            count += schedule.steps[i].targets.size();
            if (count == n_modes) {
                layer_steps.emplace_back(begin, i + 1);
                begin = i + 1;
                count = 0;
            }
        }
    }

    struct Tally {
        std::vector<std::uint64_t> quadrature;
        std::uint64_t joint = 0;
        std::vector<std::uint64_t> layer_joint;
        std::vector<std::array<std::uint64_t, 4>> labels;
    };
    const std::size_t n_workers = detail::worker_count(cfg.shots);
    std::vector<Tally> tallies(n_workers);
    for (Tally& t : tallies) {
        t.quadrature.assign(dim, 0);
        t.layer_joint.assign(layers.size(), 0);
        t.labels.assign(n_modes, {});
    }
    std::atomic<std::uint64_t> cursor{0};
    constexpr std::uint64_t kChunk = 4096;

    auto work = [&](std::size_t worker) {
        Tally& tally = tallies[worker];
        Vec e(dim), shifted(dim), blur(dim), frame(dim), frame_next(dim);
        std::vector<std::int64_t> cls(dim), cls_next(dim);
        for (;;) {
            const std::uint64_t begin = cursor.fetch_add(kChunk);
            if (begin >= cfg.shots) break;
            const std::uint64_t end = std::min(cfg.shots, begin + kChunk);
            for (std::uint64_t shot = begin; shot < end; ++shot) {
                PhiloxStream noise(cfg.seed, shot, 0);
                PhiloxStream outcome_rng(cfg.seed, shot, 1);
                std::fill(cls.begin(), cls.end(), 0);
                std::fill(frame.begin(), frame.end(), 0.0);
                bool any = false;
                for (std::size_t layer = 0; layer < layers.size(); ++layer) {
                    const Mat& s = layers[layer].matrix;
                    detail::draw_normals(noise, delta, e.data(), dim);
                    detail::draw_normals(noise, delta, blur.data(), dim);
                    for (std::size_t i = 0; i < dim; ++i) {
                        double acc = 0.0;
                        for (std::size_t j = 0; j < dim; ++j) acc += s(i, j) * e[j];
                        shifted[i] = acc + blur[i];
                    }
                    const std::vector<std::int64_t>& si = int_layers[layer];
                    bool layer_any = false;
                    for (std::size_t i = 0; i < dim; ++i) {
                        std::int64_t acc = 0;
                        for (std::size_t j = 0; j < dim; ++j) acc += si[i * dim + j] * cls[j];
                        const auto k = static_cast<std::int64_t>(std::llround(shifted[i] / kRootPi));
                        cls_next[i] = acc + k;
                        if (detail::quadrature_error(cfg.decoder, shifted[i], k)) {
                            ++tally.quadrature[i];
                            layer_any = true;
                        }
                    }
                    if (layer_any) {
                        ++tally.layer_joint[layer];
                        any = true;
                    }
                    cls.swap(cls_next);
                    // Advance the known frame covariantly: F ← S·F + μ-shifts.
                    for (std::size_t i = 0; i < dim; ++i) {
                        double acc = 0.0;
                        for (std::size_t j = 0; j < dim; ++j) acc += s(i, j) * frame[j];
                        frame_next[i] = acc;
                    }
                    if (outcomes == OutcomePolicy::Random) {
                        const auto [sb, se] = layer_steps[layer];
                        for (std::size_t si_idx = sb; si_idx < se; ++si_idx) {
                            const ScheduleStep& step = schedule.steps[si_idx];
                            const std::vector<double>& a = step.angles.angles_rad;
                            if (step.arity == 1) {
                                const double ma = outcome_rng.uniform(-2.0, 2.0);
                                const double mb = outcome_rng.uniform(-2.0, 2.0);
                                const std::complex<double> mu = outcome_displacement(a[0], a[1], ma, mb);
                                frame_next[step.targets[0]] += std::sqrt(2.0) * mu.real();
                                frame_next[n_modes + step.targets[0]] += std::sqrt(2.0) * mu.imag();
                            } else {
                                const double ma = outcome_rng.uniform(-2.0, 2.0);
                                const double mb = outcome_rng.uniform(-2.0, 2.0);
                                const double mc = outcome_rng.uniform(-2.0, 2.0);
                                const double md = outcome_rng.uniform(-2.0, 2.0);
                                const OutcomePair mu =
                                    two_mode_displacements(a[0], a[1], a[2], a[3], ma, mb, mc, md);
                                frame_next[step.targets[0]] += std::sqrt(2.0) * mu.plus.real();
                                frame_next[n_modes + step.targets[0]] += std::sqrt(2.0) * mu.plus.imag();
                                frame_next[step.targets[1]] += std::sqrt(2.0) * mu.minus.real();
                                frame_next[n_modes + step.targets[1]] += std::sqrt(2.0) * mu.minus.imag();
                            }
                        }
                    }
                    frame.swap(frame_next);
                }
                if (any) ++tally.joint;
                // End of line: bin the total displacement (error class + frame),
                // then strip the frame's logical content — the frame-covariance
                // correction.  With zero outcomes the correction is trivial.
                const DisplacementFrame df{frame};
                const std::vector<Pauli> correction = logical_correction(df);
                for (std::size_t m = 0; m < n_modes; ++m) {
                    const double total_q = static_cast<double>(cls[m]) * kRootPi + frame[m];
                    const double total_p = static_cast<double>(cls[n_modes + m]) * kRootPi + frame[n_modes + m];
                    bool x = modular_decode(total_q).logical_flip;
                    bool z = modular_decode(total_p).logical_flip;
                    const Pauli corr = correction[m];
                    if (corr == Pauli::X || corr == Pauli::Y) x = !x;
                    if (corr == Pauli::Z || corr == Pauli::Y) z = !z;
                    const std::size_t label = x ? (z ? 3 : 1) : (z ? 2 : 0);  // I,X,Z,Y
                    ++tally.labels[m][label];
                }
            }
        }
    };

    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(work, w);
    work(0);
    for (std::thread& t : pool) t.join();

    SimReport report;
    report.config = cfg;
    report.subject = "schedule";
    report.n_modes = n_modes;
    report.n_layers = layers.size();
    report.trials = cfg.shots * layers.size();
    report.quadrature_errors.assign(dim, 0);
    report.layer_joint_errors.assign(layers.size(), 0);
    report.label_counts.assign(n_modes, {});
    for (const Tally& t : tallies) {
        for (std::size_t i = 0; i < dim; ++i) report.quadrature_errors[i] += t.quadrature[i];
        report.joint_errors += t.joint;
        for (std::size_t l = 0; l < layers.size(); ++l) report.layer_joint_errors[l] += t.layer_joint[l];
        for (std::size_t m = 0; m < n_modes; ++m)
            for (std::size_t l = 0; l < 4; ++l) report.label_counts[m][l] += t.labels[m][l];
    }
    return report;
}

inline nlohmann::json report_to_json(const SimReport& report) {
    nlohmann::json doc{
        {"config",
         {{"delta_sq", report.config.delta_sq},
          {"shots", report.config.shots},
          {"seed", report.config.seed},
          {"decoder", decoder_name(report.config.decoder)}}},
        {"subject", report.subject},
        {"n_modes", report.n_modes},
        {"n_layers", report.n_layers},
        {"trials", report.trials},
        {"quadrature_errors", report.quadrature_errors},
        {"joint_errors", report.joint_errors},
        {"joint_rate", report.joint_rate()},
        {"joint_std_err", report.joint_std_err()},
        {"layer_joint_errors", report.layer_joint_errors},
    };
    nlohmann::json rates = nlohmann::json::array(), errs = nlohmann::json::array();
    for (std::size_t j = 0; j < report.quadrature_errors.size(); ++j) {
        rates.push_back(report.marginal_rate(j));
        errs.push_back(report.marginal_std_err(j));
    }
    doc["marginal_rates"] = rates;
    doc["marginal_std_errs"] = errs;
    if (!report.label_counts.empty()) {
        nlohmann::json labels = nlohmann::json::array();
        for (const auto& lc : report.label_counts)
            labels.push_back({{"I", lc[0]}, {"X", lc[1]}, {"Z", lc[2]}, {"Y", lc[3]}});
        doc["label_counts"] = labels;
    }
    return doc;
}

}  // namespace qrl
