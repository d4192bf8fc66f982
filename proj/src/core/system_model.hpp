// system_model.hpp — lab/rotating system descriptions and the rotating-frame reduction.

#pragma once

#include "core/types.hpp"

#include <map>
#include <optional>
#include <vector>

namespace darkmap {

enum class SpecMode { lab, rotating };

// One transition |j> <-> |j'> with j < j'. A zero amplitude marks a forbidden
// transition: it is kept in the description but imposes no resonance constraint.
struct TransitionSpec {
    int from = 0;
    int to = 0;
    Complex amplitude{0.0, 0.0};
    std::optional<double> drive_frequency;  // lab mode only
};

struct SystemSpec {
    SpecMode mode = SpecMode::rotating;
    int levels = 0;                           // N >= 2
    std::vector<double> energies;             // lab mode, E_j at index j-1
    std::map<int, double> detunings;          // rotating mode, r -> detuning of |r> against |N>
    std::vector<TransitionSpec> transitions;  // unique unordered pairs
    std::vector<int> upper_hint;              // optional "upper" field from the document
};

// Residual of the drive-frequency consistency condition on the triangle (r, r', N).
struct ResonanceViolation {
    int r = 0;
    int r_prime = 0;
    int top = 0;
    double residual = 0.0;  // delta_rN - delta_r'N - delta_rr'
};

// Time-independent Hermitian matrix over bare states in descending label order
// (|N>, |N-1>, ..., |1>).
struct RotatingHamiltonian {
    Matrix matrix;
    std::vector<int> basis_order;
};

double default_consistency_tol(const SystemSpec& spec);

SystemSpec parse_system(const std::string& json_text);

std::vector<ResonanceViolation> validate_loop_resonance(const SystemSpec& spec,
                                                        double tol_consistency);

RotatingHamiltonian to_rotating_frame(const SystemSpec& spec);

}  // namespace darkmap
