#include "core/system_model.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace darkmap;

namespace {

const char* kLambdaLab = R"({
  "mode": "lab",
  "levels": [{"id":1,"energy":0.0},{"id":2,"energy":1.0},{"id":3,"energy":10.0}],
  "transitions": [
    {"from":1,"to":3,"amplitude":[1.0,0.0],"drive_frequency":9.5},
    {"from":2,"to":3,"amplitude":[1.0,0.0],"drive_frequency":8.5}
  ]
})";

std::string delta_lab(double omega12_drive) {
    std::string text = R"({
  "mode": "lab",
  "levels": [{"id":1,"energy":0.0},{"id":2,"energy":1.0},{"id":3,"energy":10.0}],
  "transitions": [
    {"from":1,"to":3,"amplitude":[1.0,0.0],"drive_frequency":9.5},
    {"from":2,"to":3,"amplitude":[1.0,0.0],"drive_frequency":8.5},
    {"from":1,"to":2,"amplitude":[0.5,0.0],"drive_frequency":DRIVE}
  ]
})";
    text.replace(text.find("DRIVE"), 5, std::to_string(omega12_drive));
    return text;
}

}  // namespace

TEST_CASE("parse lab document") {
    const SystemSpec spec = parse_system(kLambdaLab);
    CHECK(spec.mode == SpecMode::lab);
    CHECK(spec.levels == 3);
    CHECK(spec.transitions.size() == 2);
    CHECK(spec.energies == std::vector<double>{0.0, 1.0, 10.0});
}

TEST_CASE("parse rotating document") {
    const SystemSpec spec = parse_system(R"({
      "mode": "rotating",
      "detunings": {"1": 0.5, "2": 0.5},
      "transitions": [
        {"from":1,"to":3,"amplitude":[1.0,0.0]},
        {"from":2,"to":3,"amplitude":[1.0,0.0]}
      ]
    })");
    CHECK(spec.mode == SpecMode::rotating);
    CHECK(spec.levels == 3);
    CHECK(spec.detunings.at(1) == 0.5);
    CHECK(spec.detunings.at(2) == 0.5);
}

TEST_CASE("parse rejections") {
    auto expect_kind = [](const char* text, const char* kind) {
        try {
            parse_system(text);
            FAIL_CHECK("expected a parse failure for ", text);
        } catch (const Error& e) {
            CHECK(e.kind() == kind);
        }
    };
    expect_kind("{not json", "SchemaError");
    expect_kind(R"({"mode":"sideways","transitions":[]})", "SchemaError");
    expect_kind(R"({"mode":"rotating","detunings":{"1":0.1},"transitions":[],"extra":1})",
                "SchemaError");
    // self-transition
    expect_kind(R"({"mode":"rotating","detunings":{"1":0.1,"2":0.2},
                    "transitions":[{"from":2,"to":2,"amplitude":[1,0]}]})",
                "ValidationError");
    // reversed pair
    expect_kind(R"({"mode":"rotating","detunings":{"1":0.1,"2":0.2},
                    "transitions":[{"from":3,"to":1,"amplitude":[1,0]}]})",
                "ValidationError");
    // duplicate pair
    expect_kind(R"({"mode":"rotating","detunings":{"1":0.1,"2":0.2},
                    "transitions":[{"from":1,"to":3,"amplitude":[1,0]},
                                   {"from":1,"to":3,"amplitude":[2,0]}]})",
                "ValidationError");
    // out-of-range level
    expect_kind(R"({"mode":"rotating","detunings":{"1":0.1,"2":0.2},
                    "transitions":[{"from":1,"to":4,"amplitude":[1,0]}]})",
                "ValidationError");
    // detuning carried by the top level
    expect_kind(R"({"mode":"rotating","detunings":{"1":0.1,"3":0.2},
                    "transitions":[{"from":1,"to":3,"amplitude":[1,0]}]})",
                "ValidationError");
    // rotating transitions take no drive frequency
    expect_kind(R"({"mode":"rotating","detunings":{"1":0.1,"2":0.2},
                    "transitions":[{"from":1,"to":3,"amplitude":[1,0],"drive_frequency":2.0}]})",
                "SchemaError");
    // nonzero lab amplitude without a drive
    expect_kind(R"({"mode":"lab","levels":[{"id":1,"energy":0},{"id":2,"energy":1}],
                    "transitions":[{"from":1,"to":2,"amplitude":[1,0]}]})",
                "ValidationError");
}

TEST_CASE("loop resonance on the all-coupled triangle") {
    SUBCASE("consistent drives") {
        const SystemSpec spec = parse_system(delta_lab(1.0).c_str());
        const auto violations = validate_loop_resonance(spec, default_consistency_tol(spec));
        CHECK(violations.empty());
    }
    SUBCASE("inconsistent drive on (1,2)") {
        const SystemSpec spec = parse_system(delta_lab(0.7).c_str());
        const auto violations = validate_loop_resonance(spec, default_consistency_tol(spec));
        REQUIRE(violations.size() == 1);
        CHECK(violations[0].r == 1);
        CHECK(violations[0].r_prime == 2);
        CHECK(violations[0].top == 3);
        CHECK(violations[0].residual == doctest::Approx(-0.3).epsilon(1e-12));
    }
    SUBCASE("zero-amplitude leg imposes no constraint") {
        std::string text = delta_lab(0.7);
        const auto pos = text.find("[0.5,0.0]");
        text.replace(pos, 9, "[0.0,0.0]");
        const SystemSpec spec = parse_system(text.c_str());
        CHECK(validate_loop_resonance(spec, default_consistency_tol(spec)).empty());
    }
}

TEST_CASE("violation set is invariant under transition reordering") {
    SystemSpec spec = parse_system(delta_lab(0.7).c_str());
    const auto reference = validate_loop_resonance(spec, default_consistency_tol(spec));
    std::mt19937 rng(7);
    for (int round = 0; round < 5; ++round) {
        std::shuffle(spec.transitions.begin(), spec.transitions.end(), rng);
        const auto shuffled = validate_loop_resonance(spec, default_consistency_tol(spec));
        REQUIRE(shuffled.size() == reference.size());
        CHECK(shuffled[0].r == reference[0].r);
        CHECK(shuffled[0].r_prime == reference[0].r_prime);
        CHECK(shuffled[0].residual == reference[0].residual);
    }
}

TEST_CASE("rotating frame of the two-drive lab system") {
    const SystemSpec spec = parse_system(kLambdaLab);
    const RotatingHamiltonian ham = to_rotating_frame(spec);
    REQUIRE(ham.basis_order == std::vector<int>{3, 2, 1});
    CHECK(ham.matrix(0, 0) == Complex(0.0, 0.0));
    CHECK(ham.matrix(1, 1) == Complex(-0.5, 0.0));
    CHECK(ham.matrix(2, 2) == Complex(-0.5, 0.0));
    CHECK(ham.matrix(0, 1) == Complex(1.0, 0.0));
    CHECK(ham.matrix(0, 2) == Complex(1.0, 0.0));
    CHECK(ham.matrix(1, 2) == Complex(0.0, 0.0));
}

TEST_CASE("rotating frame is Hermitian by construction") {
    const SystemSpec spec = parse_system(R"({
      "mode": "rotating",
      "detunings": {"1": 0.5, "2": -0.25},
      "transitions": [
        {"from":1,"to":3,"amplitude":[1.0,0.75]},
        {"from":2,"to":3,"amplitude":[-0.5,0.25]},
        {"from":1,"to":2,"amplitude":[0.0,1.0]}
      ]
    })");
    const RotatingHamiltonian ham = to_rotating_frame(spec);
    CHECK((ham.matrix - ham.matrix.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(ham.matrix(0, 2) == Complex(1.0, 0.75));
    CHECK(ham.matrix(2, 0) == Complex(1.0, -0.75));
}

TEST_CASE("two-level edge case") {
    const SystemSpec spec = parse_system(R"({
      "mode": "rotating",
      "detunings": {"1": 0.0},
      "transitions": [{"from":1,"to":2,"amplitude":[0.3,-0.4]}]
    })");
    const RotatingHamiltonian ham = to_rotating_frame(spec);
    REQUIRE(ham.matrix.rows() == 2);
    CHECK(ham.matrix(0, 0) == Complex(0.0, 0.0));
    CHECK(ham.matrix(0, 1) == Complex(0.3, -0.4));
}

TEST_CASE("round trip: diagonal reproduces rotating detunings exactly") {
    const SystemSpec spec = parse_system(R"({
      "mode": "rotating",
      "detunings": {"1": 0.123456789, "2": -3.75, "3": 1e-7},
      "transitions": [{"from":1,"to":4,"amplitude":[1,0]}]
    })");
    const RotatingHamiltonian ham = to_rotating_frame(spec);
    for (int r = 1; r <= 3; ++r) {
        CHECK(ham.matrix(4 - r, 4 - r).real() == -spec.detunings.at(r));
    }
}

TEST_CASE("lab and rotating routes agree elementwise") {
    const SystemSpec lab = parse_system(delta_lab(1.0).c_str());
    // detunings computed with the same expression the reduction uses
    const double d13 = 10.0 - 0.0 - 9.5;
    const double d23 = 10.0 - 1.0 - 8.5;
    SystemSpec rotating;
    rotating.mode = SpecMode::rotating;
    rotating.levels = 3;
    rotating.detunings = {{1, d13}, {2, d23}};
    rotating.transitions = {{1, 3, {1.0, 0.0}, {}}, {2, 3, {1.0, 0.0}, {}},
                            {1, 2, {0.5, 0.0}, {}}};
    const RotatingHamiltonian a = to_rotating_frame(lab);
    const RotatingHamiltonian b = to_rotating_frame(rotating);
    CHECK((a.matrix - b.matrix).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lab reduction failures") {
    SUBCASE("inconsistent triangle") {
        const SystemSpec spec = parse_system(delta_lab(0.7).c_str());
        try {
            to_rotating_frame(spec);
            FAIL_CHECK("expected InconsistentDetunings");
        } catch (const Error& e) {
            CHECK(e.kind() == "InconsistentDetunings");
            CHECK(std::string(e.what()).find("(1,2,3)") != std::string::npos);
        }
    }
    SUBCASE("level without a frame-fixing drive") {
        const SystemSpec spec = parse_system(R"({
          "mode": "lab",
          "levels": [{"id":1,"energy":0.0},{"id":2,"energy":1.0},{"id":3,"energy":10.0}],
          "transitions": [
            {"from":2,"to":3,"amplitude":[1.0,0.0],"drive_frequency":8.5},
            {"from":1,"to":2,"amplitude":[1.0,0.0],"drive_frequency":1.0}
          ]
        })");
        try {
            to_rotating_frame(spec);
            FAIL_CHECK("expected MissingDetuning");
        } catch (const Error& e) {
            CHECK(e.kind() == "MissingDetuning");
        }
    }
}
