// dressing.hpp — diagonalization of the two submatrices, the transformed
// coupling block, and degeneracy grouping of the dressed lower states.

#pragma once

#include "core/partition.hpp"
#include "core/types.hpp"

#include <vector>

namespace darkmap {

// unitary * M * unitary^dagger = diag(values), values ascending. Each
// eigenvector's global phase is fixed so that its largest-magnitude component
// is real and positive (ties broken by lowest index), which makes repeated
// runs on identical input bitwise identical.
struct EigenDecomposition {
    RealVector values;
    Matrix unitary;
};

EigenDecomposition hermitian_eigendecompose(const Matrix& m);

// Half-open index range [begin, end) into an ascending eigenvalue sequence.
struct IndexRange {
    int begin = 0;
    int end = 0;
    int size() const { return end - begin; }
};

// Single-linkage clustering: consecutive values join one block iff their gap
// is at most tol_degeneracy * max(1, |median|).
std::vector<IndexRange> group_degenerate(const RealVector& ascending_values,
                                         double tol_degeneracy);

struct DressedSystem {
    Matrix s_upper;                  // unitary, row convention as above
    Matrix s_lower;
    RealVector delta;                // dressed upper eigenvalues
    RealVector omega;                // dressed lower eigenvalues
    Matrix coupling;                 // S_u c S_l^dagger
    std::vector<IndexRange> blocks;  // degenerate groups over omega
    std::vector<int> upper_order;    // bare labels, descending
    std::vector<int> lower_order;
};

DressedSystem dress(const BlockHamiltonian& block, const Tolerances& tol);

}  // namespace darkmap
