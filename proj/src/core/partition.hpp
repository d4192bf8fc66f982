// partition.hpp — upper/lower split of the rotating-frame Hamiltonian.

#pragma once

#include "core/system_model.hpp"
#include "core/types.hpp"

#include <span>
#include <vector>

namespace darkmap {

// Both sets in descending label order; the upper set is the target subspace
// to decouple from, not a statement about physical energies.
struct Partition {
    std::vector<int> upper;
    std::vector<int> lower;
};

Partition make_partition(int levels, std::span<const int> upper_ids);

// [[H_u, c], [c^dagger, H_l]] over (upper descending, lower descending).
struct BlockHamiltonian {
    Matrix h_upper;
    Matrix h_lower;
    Matrix coupling;  // upper rows, lower columns
    std::vector<int> upper_order;
    std::vector<int> lower_order;
};

BlockHamiltonian split(const RotatingHamiltonian& ham, const Partition& partition);

Matrix assemble_full(const BlockHamiltonian& block);

}  // namespace darkmap
