#pragma once

// Command-line surface.  Subcommands:
//   verify    identity-registry table (residuals per identity, bounce decay)
//   gates     measurement-angle dictionary (gate → radians)
//   rates     analytic error rate per gate at one squeezing level
//   sweep     error-rate curves over a dB grid (CSV schema: db,gate,p_err)
//   required  squeezing needed to reach a target error rate
//   table2    the eight-entry required-squeezing summary table
//   compile   logical-circuit JSON → measurement-schedule JSON
//   simulate  Monte Carlo report (JSON) for a gate or a compiled circuit
//
// Conventions: summary tables print dB at 0.1 resolution; CSV carries floats
// at 17 significant digits (lossless round-trip); output is byte-identical
// for identical inputs and seeds.  Exit codes: 0 success, 1 computation
// error, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrl/compiler.hpp"
#include "qrl/gadget.hpp"
#include "qrl/identities.hpp"
#include "qrl/montecarlo.hpp"
#include "qrl/noise.hpp"

namespace qrl::cli {

namespace detail {

inline std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_db(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

inline std::vector<LogicalGate> parse_gate_list(const std::string& csv) {
    std::vector<LogicalGate> gates;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (!token.empty()) gates.push_back(parse_gate(token));
    }
    if (gates.empty()) throw std::invalid_argument("empty gate list");
    return gates;
}

// Rows as ordered key → string-formatted value pairs; rendered as CSV or a
// JSON array of objects.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void render(std::ostream& out, const std::string& format) const {
        if (format == "csv") {
            for (std::size_t c = 0; c < columns.size(); ++c)
                out << columns[c] << (c + 1 < columns.size() ? "," : "\n");
            for (const auto& row : rows)
                for (std::size_t c = 0; c < row.size(); ++c) out << row[c] << (c + 1 < row.size() ? "," : "\n");
        } else {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& row : rows) {
                nlohmann::ordered_json obj;
                for (std::size_t c = 0; c < columns.size(); ++c) obj[columns[c]] = row[c];
                arr.push_back(std::move(obj));
            }
            out << arr.dump(2) << "\n";
        }
    }
};

inline const double kBounceDecayTarget = std::exp(-4.0);

inline bool identity_passes(const IdentityReport& rep) {
    if (rep.residual_by_r.empty() || rep.name == "bounce-bs") return rep.residual < 1e-12;
    const double r2 = rep.residual_by_r.at(2), r4 = rep.residual_by_r.at(4);
    if (!(r2 > 0.0)) return false;
    const double ratio = r4 / r2;
    return ratio > kBounceDecayTarget / 2 && ratio < kBounceDecayTarget * 2;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Macronode cluster-state gate analytics"};
    app.name("qrl");

    std::string gate_csv = "I,F,P+,P-,CZ+,CZ-,SWAP,II,FF,PP+,PP-";
    std::string format = "csv";
    std::string out_path;
    std::string circuit_path;
    std::string decoder_token = "threshold";
    double db = 10.0, perr = 1e-2, db_min = 8.0, db_max = 18.0;
    std::uint64_t shots = 100000, seed = 1;
    std::size_t steps = 41;

    app.add_option("--out", out_path, "Write output to this path instead of stdout");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    CLI::App* cmd_verify = app.add_subcommand("verify", "Run the circuit-identity registry");
    cmd_verify->add_option("--seed", seed, "RNG seed for parameter draws");

    CLI::App* cmd_gates = app.add_subcommand("gates", "Print the gate → measurement-angle dictionary");

    CLI::App* cmd_rates = app.add_subcommand("rates", "Analytic logical error rates at one squeezing level");
    cmd_rates->add_option("--gate", gate_csv, "Comma-separated gate list");
    cmd_rates->add_option("--db", db, "Squeezing in dB")->required();

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "Error-rate curves over a dB grid");
    cmd_sweep->add_option("--gate", gate_csv, "Comma-separated gate list");
    cmd_sweep->add_option("--db-min", db_min, "Grid start (dB)");
    cmd_sweep->add_option("--db-max", db_max, "Grid end (dB)");
    cmd_sweep->add_option("--steps", steps, "Grid points")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));

    CLI::App* cmd_required = app.add_subcommand("required", "Squeezing required for a target error rate");
    cmd_required->add_option("--gate", gate_csv, "Comma-separated gate list")->required();
    cmd_required->add_option("--perr", perr, "Target logical error rate")->required();

    CLI::App* cmd_table2 = app.add_subcommand("table2", "Required-squeezing summary (8 entries)");

    CLI::App* cmd_compile = app.add_subcommand("compile", "Compile a logical circuit to a schedule");
    cmd_compile->add_option("--circuit", circuit_path, "Circuit JSON path")->required();

    CLI::App* cmd_simulate = app.add_subcommand("simulate", "Monte Carlo error-rate report");
    CLI::Option* sim_gate = cmd_simulate->add_option("--gate", gate_csv, "Single gate to simulate");
    CLI::Option* sim_circ = cmd_simulate->add_option("--circuit", circuit_path, "Circuit JSON to compile and simulate");
    sim_gate->excludes(sim_circ);
    cmd_simulate->add_option("--db", db, "Squeezing in dB")->required();
    cmd_simulate->add_option("--shots", shots, "Sample count");
    cmd_simulate->add_option("--seed", seed, "RNG seed");
    cmd_simulate->add_option("--decoder", decoder_token, "Binning convention")
        ->check(CLI::IsMember({"threshold", "modular"}));

    app.require_subcommand(1);

    // CLI11 wants a mutable char* array.
    std::vector<std::string> argv_store;
    argv_store.push_back("qrl");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (std::string& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        err << app.help();
        return 2;
    }

    std::ofstream file_out;
    std::ostream* sink = &out;
    if (!out_path.empty()) {
        file_out.open(out_path);
        if (!file_out) {
            err << "error: cannot open output path '" << out_path << "'\n";
            return 1;
        }
        sink = &file_out;
    }

    try {
        if (app.got_subcommand(cmd_verify)) {
            detail::Table table;
            table.columns = {"identity", "residual", "residual_r2", "residual_r3", "residual_r4", "pass"};
            bool all_pass = true;
            for (const std::string& name : registered_identities()) {
                const IdentityReport rep = verify_identity(name, 200, seed);
                const bool pass = detail::identity_passes(rep);
                all_pass = all_pass && pass;
                std::vector<std::string> row{name, detail::fmt17(rep.residual)};
                for (int r : {2, 3, 4})
                    row.push_back(rep.residual_by_r.count(r) ? detail::fmt17(rep.residual_by_r.at(r)) : "");
                row.push_back(pass ? "true" : "false");
                table.rows.push_back(std::move(row));
            }
            table.render(*sink, format);
            return all_pass ? 0 : 1;
        }
        if (app.got_subcommand(cmd_gates)) {
            detail::Table table;
            table.columns = {"gate", "arity", "theta_a", "theta_b", "theta_c", "theta_d"};
            for (LogicalGate g : all_gates()) {
                const AngleSet set = angles_for(g);
                std::vector<std::string> row{gate_name(g), std::to_string(set.arity())};
                for (std::size_t i = 0; i < 4; ++i)
                    row.push_back(i < set.angles_rad.size() ? detail::fmt17(set.angles_rad[i]) : "");
                table.rows.push_back(std::move(row));
            }
            table.render(*sink, format);
            return 0;
        }
        if (app.got_subcommand(cmd_rates)) {
            detail::Table table;
            table.columns = {"db", "gate", "p_err"};
            for (LogicalGate g : detail::parse_gate_list(gate_csv))
                table.rows.push_back({detail::fmt17(db), gate_name(g), detail::fmt17(gate_error_rate_db(g, db))});
            table.render(*sink, format);
            return 0;
        }
        if (app.got_subcommand(cmd_sweep)) {
            detail::Table table;
            table.columns = {"db", "gate", "p_err"};
            for (const SweepRow& row : sweep(detail::parse_gate_list(gate_csv), db_min, db_max, steps))
                table.rows.push_back({detail::fmt17(row.db), gate_name(row.gate), detail::fmt17(row.p_err)});
            table.render(*sink, format);
            return 0;
        }
        if (app.got_subcommand(cmd_required)) {
            const std::vector<LogicalGate> gates = detail::parse_gate_list(gate_csv);
            if (gates.size() == 1) {
                *sink << detail::fmt_db(required_squeezing(gates[0], perr)) << "\n";
                return 0;
            }
            detail::Table table;
            table.columns = {"gate", "target", "required_db"};
            for (LogicalGate g : gates)
                table.rows.push_back({gate_name(g), detail::fmt17(perr),
                                      detail::fmt_db(required_squeezing(g, perr))});
            table.render(*sink, format);
            return 0;
        }
        if (app.got_subcommand(cmd_table2)) {
            detail::Table table;
            table.columns = {"gate", "target", "required_db"};
            const std::pair<const char*, LogicalGate> rows[] = {
                {"I", LogicalGate::I}, {"F", LogicalGate::F}, {"P", LogicalGate::PPlus}, {"CZ", LogicalGate::CZPlus}};
            for (const auto& [label, g] : rows)
                for (double target : {1e-2, 1e-3}) {
                    const char* tname = target == 1e-2 ? "1e-2" : "1e-3";
                    table.rows.push_back({label, tname, detail::fmt_db(required_squeezing(g, target))});
                }
            table.render(*sink, format);
            return 0;
        }
        if (app.got_subcommand(cmd_compile)) {
            std::ifstream in(circuit_path);
            if (!in) throw std::invalid_argument("cannot open circuit file '" + circuit_path + "'");
            nlohmann::json doc = nlohmann::json::parse(in);
            const MeasurementSchedule schedule = compile(circuit_from_json(doc));
            *sink << schedule_to_json(schedule).dump(2) << "\n";
            return 0;
        }
        if (app.got_subcommand(cmd_simulate)) {
            if (sim_gate->count() + sim_circ->count() != 1) {
                err << "usage error: simulate needs exactly one of --gate or --circuit\n";
                return 2;
            }
            SimConfig cfg;
            cfg.delta_sq = variance_from_db(db);
            cfg.shots = shots;
            cfg.seed = seed;
            cfg.decoder = parse_decoder(decoder_token);
            SimReport report;
            if (sim_circ->count() > 0) {
                std::ifstream in(circuit_path);
                if (!in) throw std::invalid_argument("cannot open circuit file '" + circuit_path + "'");
                const LogicalCircuit circuit = circuit_from_json(nlohmann::json::parse(in));
                report = simulate_schedule(compile(circuit), cfg);
            } else {
                const std::vector<LogicalGate> gates = detail::parse_gate_list(gate_csv);
                if (gates.size() != 1) throw std::invalid_argument("simulate takes exactly one --gate");
                report = simulate_gate(gates[0], cfg);
            }
            *sink << report_to_json(report).dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace qrl::cli
