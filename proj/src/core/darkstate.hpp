// darkstate.hpp — per-block SVD rank/null-space analysis of the dressed
// coupling matrix, the recursive bright/dark construction for proportional
// columns, and the projector-based subspace comparison.

#pragma once

#include "core/dressing.hpp"
#include "core/types.hpp"

#include <vector>

namespace darkmap {

struct BlockAnalysis {
    int block_index = 0;
    IndexRange range;                     // dressed lower indices of the block
    double omega = 0.0;                   // block eigenvalue
    int rank = 0;
    std::vector<double> singular_values;  // descending, min(N_u, dim) entries
    std::vector<int> zero_columns;        // block-local columns below the rank cutoff
    Matrix bright;                        // dim x rank, block coordinates
    Matrix dark;                          // dim x (dim - rank), ascending singular value
};

struct DarkStateReport {
    int n_upper = 0;
    int n_lower = 0;
    std::vector<int> upper_order;
    std::vector<int> lower_order;
    std::vector<BlockAnalysis> blocks;
    int total_dark = 0;
    Matrix dark_dressed;     // N_l x total_dark, zero outside each block
    Matrix dark_bare_lower;  // N_l x total_dark, coefficients over bare lower states
    Matrix dark_bare_full;   // (N_u + N_l) x total_dark, exact zeros on upper rows
    RealVector dark_omegas;  // block eigenvalue per dark column
    Tolerances tolerances;
};

DarkStateReport analyze(const DressedSystem& dressed, const Tolerances& tol);

// Re-derive the bare-basis forms from the dressed-basis vectors. analyze()
// applies this already; exposed for reports whose dressed vectors were
// produced or edited elsewhere.
void to_bare_basis(DarkStateReport& report, const Matrix& s_lower);

// Orthonormal basis of {v : block * v = 0} at the relative cutoff; columns
// ordered by ascending singular value.
Matrix null_space(const Matrix& block, double tol_rank);

// Column proportionality data: column j (1-based j >= 2) equals ratios[j-2]
// times the reference column. running_norms[k] = sqrt(1 + sum |ratios[<=k]|^2).
struct ProportionalColumns {
    int reference = 0;
    std::vector<Complex> ratios;
    std::vector<double> running_norms;
};

ProportionalColumns proportional_columns(const Matrix& block, double tol_rank);

struct BrightDark {
    Vector bright;
    Matrix dark;  // one column per dark state, construction order
};

BrightDark recursive_bright_dark(const ProportionalColumns& ratios);

// Spectral norm of the difference of the orthogonal projectors onto the two
// column spans; 0 iff the spans are equal.
double subspace_distance(const Matrix& a, const Matrix& b);

}  // namespace darkmap
