// report_io.hpp — report (de)serialization and the bipartite-graph DOT export.

#pragma once

#include "core/darkstate.hpp"
#include "core/verifier.hpp"

#include <optional>
#include <string>

namespace darkmap {

std::string report_to_json(const DarkStateReport& report,
                           const VerificationResult* verification = nullptr,
                           bool pretty = false);

struct ParsedReport {
    DarkStateReport report;
    std::optional<VerificationResult> verification;
};

ParsedReport report_from_json(const std::string& text);

// Field-exact comparison (used by the round-trip checks).
bool report_equal(const DarkStateReport& a, const DarkStateReport& b);

// Dressed-state graph: one node per dressed state labeled with its
// eigenvalue, an edge wherever |G| clears the rank cutoff.
std::string export_dot(const DressedSystem& dressed, double tol_rank);

}  // namespace darkmap
