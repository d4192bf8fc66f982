#include "core/partition.hpp"

#include <algorithm>
#include <set>

namespace darkmap {

Partition make_partition(int levels, std::span<const int> upper_ids) {
    if (upper_ids.empty()) {
        throw Error(ErrorCode::validation, "EmptyUpper", "the upper set must not be empty");
    }
    std::set<int> upper;
    for (int id : upper_ids) {
        if (id < 1 || id > levels) {
            throw Error(ErrorCode::validation, "UnknownLevel",
                        "level " + std::to_string(id) + " outside 1.." + std::to_string(levels));
        }
        if (!upper.insert(id).second) {
            throw Error(ErrorCode::validation, "DuplicateLevel",
                        "level " + std::to_string(id) + " listed twice in the upper set");
        }
    }
    const int n_lower = levels - static_cast<int>(upper.size());
    if (n_lower < 2) {
        throw Error(ErrorCode::validation, "LowerTooSmall",
                    "the lower subspace must keep at least two states (has " +
                        std::to_string(n_lower) + ")");
    }
    Partition partition;
    for (int id = levels; id >= 1; --id) {
        if (upper.count(id)) {
            partition.upper.push_back(id);
        } else {
            partition.lower.push_back(id);
        }
    }
    return partition;
}

BlockHamiltonian split(const RotatingHamiltonian& ham, const Partition& partition) {
    const int n = static_cast<int>(ham.basis_order.size());
    std::vector<int> position(static_cast<size_t>(n) + 1, -1);
    for (int k = 0; k < n; ++k) {
        position[static_cast<size_t>(ham.basis_order[static_cast<size_t>(k)])] = k;
    }
    auto gather = [&](const std::vector<int>& labels) {
        std::vector<int> idx;
        idx.reserve(labels.size());
        for (int label : labels) {
            const int pos = position[static_cast<size_t>(label)];
            if (pos < 0) {
                throw Error(ErrorCode::argument, "UnknownLevel",
                            "level " + std::to_string(label) + " not in the basis");
            }
            idx.push_back(pos);
        }
        return idx;
    };
    const std::vector<int> iu = gather(partition.upper);
    const std::vector<int> il = gather(partition.lower);
    const int nu = static_cast<int>(iu.size());
    const int nl = static_cast<int>(il.size());

    BlockHamiltonian block;
    block.upper_order = partition.upper;
    block.lower_order = partition.lower;
    block.h_upper.resize(nu, nu);
    block.h_lower.resize(nl, nl);
    block.coupling.resize(nu, nl);
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nu; ++j) block.h_upper(i, j) = ham.matrix(iu[i], iu[j]);
        for (int j = 0; j < nl; ++j) block.coupling(i, j) = ham.matrix(iu[i], il[j]);
    }
    for (int i = 0; i < nl; ++i) {
        for (int j = 0; j < nl; ++j) block.h_lower(i, j) = ham.matrix(il[i], il[j]);
    }
    return block;
}

Matrix assemble_full(const BlockHamiltonian& block) {
    const int nu = static_cast<int>(block.h_upper.rows());
    const int nl = static_cast<int>(block.h_lower.rows());
    Matrix full(nu + nl, nu + nl);
    full.topLeftCorner(nu, nu) = block.h_upper;
    full.topRightCorner(nu, nl) = block.coupling;
    full.bottomLeftCorner(nl, nu) = block.coupling.adjoint();
    full.bottomRightCorner(nl, nl) = block.h_lower;
    return full;
}

}  // namespace darkmap
