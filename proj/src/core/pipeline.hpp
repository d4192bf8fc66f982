// pipeline.hpp — end-to-end orchestration: parse -> rotating frame ->
// partition -> dress -> analyze, with optional verification attached.

#pragma once

#include "core/darkstate.hpp"
#include "core/verifier.hpp"

#include <optional>
#include <span>

namespace darkmap {

struct AnalysisResult {
    RotatingHamiltonian rotating;
    BlockHamiltonian block;
    DressedSystem dressed;
    DarkStateReport report;
    Matrix h_full;  // assembled in the partitioned order (upper rows first)
    std::optional<VerificationResult> verification;
};

AnalysisResult run_analysis(const SystemSpec& spec, std::span<const int> upper_ids,
                            const Tolerances& tol);

// Empty times selects the default grid.
void run_verification(AnalysisResult& result, std::span<const double> times = {});

}  // namespace darkmap
