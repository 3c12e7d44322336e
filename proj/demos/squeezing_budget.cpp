// Squeezing-budget planner: how much squeezing each logical gate needs to
// reach a target error rate, and how the analytic error-rate curves fall with
// squeezing.

#include <cstdio>

#include <qrl/noise.hpp>

int main() {
    using namespace qrl;

    std::printf("required squeezing (dB) per gate and target error rate\n");
    std::printf("%-6s %12s %12s\n", "gate", "p=1e-2", "p=1e-3");
    for (LogicalGate g : {LogicalGate::I, LogicalGate::F, LogicalGate::PPlus, LogicalGate::CZPlus,
                          LogicalGate::Swap, LogicalGate::PPPlus}) {
        std::printf("%-6s %12.2f %12.2f\n", gate_name(g), required_squeezing(g, 1e-2),
                    required_squeezing(g, 1e-3));
    }

    std::printf("\nanalytic error rate vs squeezing\n");
    std::printf("%-6s", "dB");
    const std::vector<LogicalGate> gates{LogicalGate::I, LogicalGate::PPlus, LogicalGate::CZPlus};
    for (LogicalGate g : gates) std::printf(" %12s", gate_name(g));
    std::printf("\n");
    const std::size_t steps = 11;
    const std::vector<SweepRow> rows = sweep(gates, 8.0, 18.0, steps);
    for (std::size_t i = 0; i < steps; ++i) {
        std::printf("%-6.1f", rows[i].db);
        for (std::size_t g = 0; g < gates.size(); ++g)
            std::printf(" %12.3e", rows[g * steps + i].p_err);
        std::printf("\n");
    }
    return 0;
}
