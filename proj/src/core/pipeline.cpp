#include "core/pipeline.hpp"

namespace darkmap {

AnalysisResult run_analysis(const SystemSpec& spec, std::span<const int> upper_ids,
                            const Tolerances& tol) {
    AnalysisResult result;
    result.rotating = to_rotating_frame(spec);
    const Partition partition = make_partition(spec.levels, upper_ids);
    result.block = split(result.rotating, partition);
    result.dressed = dress(result.block, tol);
    result.report = analyze(result.dressed, tol);
    result.h_full = assemble_full(result.block);
    return result;
}

void run_verification(AnalysisResult& result, std::span<const double> times) {
    std::vector<double> grid;
    if (times.empty()) {
        grid = default_time_grid(result.h_full);
        times = grid;
    }
    result.verification =
        leakage_scan(result.h_full, result.report.dark_bare_full, result.report.dark_omegas,
                     result.report.n_upper, times, result.report.tolerances.residual);
}

}  // namespace darkmap
