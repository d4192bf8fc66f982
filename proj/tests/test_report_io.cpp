#include "core/report_io.hpp"

#include "core/pipeline.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace darkmap;

namespace {

AnalysisResult lambda_result() {
    SystemSpec spec;
    spec.mode = SpecMode::rotating;
    spec.levels = 3;
    spec.detunings = {{1, 0.3}, {2, 0.3}};
    spec.transitions = {{1, 3, {1.0, 0}, {}}, {2, 3, {2.0, 0}, {}}};
    return run_analysis(spec, std::array{3}, Tolerances{});
}

int count_lines_with(const std::string& text, const std::string& needle) {
    int count = 0;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        if (line.find(needle) != std::string::npos) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("report round-trips field-exact") {
    std::mt19937_64 rng(67);
    for (int round = 0; round < 10; ++round) {
        const auto sys = oracles::random_degenerate_system(rng);
        auto result = run_analysis(sys.spec, sys.upper, Tolerances{});
        run_verification(result);
        const std::string text =
            report_to_json(result.report, &*result.verification, round % 2 == 0);
        const ParsedReport parsed = report_from_json(text);
        CHECK(report_equal(parsed.report, result.report));
        REQUIRE(parsed.verification.has_value());
        CHECK(parsed.verification->pass == result.verification->pass);
        REQUIRE(parsed.verification->states.size() == result.verification->states.size());
        for (size_t i = 0; i < parsed.verification->states.size(); ++i) {
            CHECK(parsed.verification->states[i].eigen_residual ==
                  result.verification->states[i].eigen_residual);
            CHECK(parsed.verification->states[i].max_leakage ==
                  result.verification->states[i].max_leakage);
        }
        // serialization itself is deterministic
        CHECK(report_to_json(result.report, &*result.verification, round % 2 == 0) == text);
    }
}

TEST_CASE("report json carries the documented fields") {
    auto result = lambda_result();
    const std::string text = report_to_json(result.report, nullptr, false);
    for (const char* field : {"\"n_upper\"", "\"n_lower\"", "\"blocks\"", "\"omega\"",
                              "\"dim\"", "\"rank\"", "\"singular_values\"",
                              "\"dark_states_dressed\"", "\"dark_states_bare\"",
                              "\"total_dark\"", "\"tolerances\""}) {
        CAPTURE(field);
        CHECK(text.find(field) != std::string::npos);
    }
    CHECK(text.find("\"verify\"") == std::string::npos);
    run_verification(result);
    const std::string verified = report_to_json(result.report, &*result.verification, false);
    CHECK(verified.find("\"verify\"") != std::string::npos);
    CHECK(verified.find("\"max_leakage\"") != std::string::npos);
    CHECK(verified.find("\"pass\":true") != std::string::npos);
}

TEST_CASE("malformed reports are rejected") {
    CHECK_THROWS_AS((void)report_from_json("{"), Error);
    CHECK_THROWS_AS((void)report_from_json(R"({"n_upper":1})"), Error);
}

TEST_CASE("dot export shows exactly the surviving couplings") {
    SUBCASE("resonant pair couples through one dressed column") {
        const auto result = lambda_result();
        const std::string dot = export_dot(result.dressed, 1e-10);
        CHECK(count_lines_with(dot, "shape=box") == 1);      // one dressed upper
        CHECK(count_lines_with(dot, "shape=ellipse") == 2);  // two dressed lowers
        // the dressed coupling row has exactly one entry above threshold
        int expected_edges = 0;
        for (int j = 0; j < result.dressed.coupling.cols(); ++j) {
            if (std::abs(result.dressed.coupling(0, j)) > 1e-10) ++expected_edges;
        }
        CHECK(count_lines_with(dot, " -- ") == expected_edges);
        // the degenerate pair keeps the solver's bare basis, so both dressed
        // lowers overlap the bright combination and carry an edge
        CHECK(expected_edges == 2);
    }
    SUBCASE("zero coupling graph has no edges") {
        BlockHamiltonian block;
        block.h_upper = Matrix::Identity(1, 1);
        block.h_lower = Matrix::Identity(2, 2);
        block.coupling = Matrix::Zero(1, 2);
        block.upper_order = {3};
        block.lower_order = {2, 1};
        const std::string dot = export_dot(dress(block, Tolerances{}), 1e-10);
        CHECK(count_lines_with(dot, " -- ") == 0);
    }
    SUBCASE("two-upper arrangement keeps the documented pattern") {
        SystemSpec spec;
        spec.mode = SpecMode::rotating;
        spec.levels = 5;
        spec.detunings = {{1, 0.3}, {2, 0.3}, {3, 0.3}, {4, 0.6}};
        spec.transitions = {{3, 5, {0.8, 0}, {}},
                            {1, 5, {0.8, 0}, {}},
                            {2, 4, {0.8, 0}, {}},
                            {1, 4, {0.8, 0}, {}}};
        const auto result = run_analysis(spec, std::array{5, 4}, Tolerances{});
        const std::string dot = export_dot(result.dressed, 1e-10);
        int expected_edges = 0;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (std::abs(result.dressed.coupling(i, j)) > 1e-10) ++expected_edges;
            }
        }
        CHECK(count_lines_with(dot, " -- ") == expected_edges);
        CHECK(expected_edges == 4);  // two forbidden links stay absent
        CHECK(dot.find("graph dressed_system") != std::string::npos);
    }
}
