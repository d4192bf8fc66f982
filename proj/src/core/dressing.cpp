#include "core/dressing.hpp"

#include <cmath>

namespace darkmap {

namespace {

// Largest-magnitude component made real and positive; first maximum wins.
void fix_column_phase(Eigen::Ref<Vector> column) {
    int best = 0;
    double best_abs = std::abs(column(0));
    for (int i = 1; i < column.size(); ++i) {
        const double a = std::abs(column(i));
        if (a > best_abs) {
            best_abs = a;
            best = i;
        }
    }
    if (best_abs == 0.0) return;
    column *= std::conj(column(best)) / best_abs;
    column(best) = Complex(std::abs(column(best)), 0.0);
}

}  // namespace

EigenDecomposition hermitian_eigendecompose(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorCode::argument, "DimensionMismatch",
                    "eigendecomposition requires a nonempty square matrix");
    }
    const double scale = m.cwiseAbs().maxCoeff();
    const double asymmetry = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asymmetry > 1e-12 * scale) {
        throw Error(ErrorCode::validation, "NonHermitianInput",
                    "matrix deviates from Hermitian by " + std::to_string(asymmetry));
    }
    const Matrix symmetrized = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::numeric, "ConvergenceFailure",
                    "Hermitian eigensolver did not converge");
    }
    Matrix vectors = solver.eigenvectors();  // columns, eigenvalues ascending
    for (int k = 0; k < vectors.cols(); ++k) fix_column_phase(vectors.col(k));

    EigenDecomposition out;
    out.values = solver.eigenvalues();
    out.unitary = vectors.adjoint();
    return out;
}

std::vector<IndexRange> group_degenerate(const RealVector& ascending_values,
                                         double tol_degeneracy) {
    const int n = static_cast<int>(ascending_values.size());
    std::vector<IndexRange> blocks;
    if (n == 0) return blocks;
    for (int i = 1; i < n; ++i) {
        if (ascending_values(i) < ascending_values(i - 1)) {
            throw Error(ErrorCode::argument, "DimensionMismatch",
                        "eigenvalues must be ascending");
        }
    }
    const double median = std::abs(ascending_values((n - 1) / 2));
    const double gap_limit = tol_degeneracy * std::max(1.0, median);
    int begin = 0;
    for (int i = 1; i < n; ++i) {
        if (ascending_values(i) - ascending_values(i - 1) > gap_limit) {
            blocks.push_back({begin, i});
            begin = i;
        }
    }
    blocks.push_back({begin, n});
    return blocks;
}

DressedSystem dress(const BlockHamiltonian& block, const Tolerances& tol) {
    const EigenDecomposition upper = hermitian_eigendecompose(block.h_upper);
    const EigenDecomposition lower = hermitian_eigendecompose(block.h_lower);

    DressedSystem dressed;
    dressed.s_upper = upper.unitary;
    dressed.s_lower = lower.unitary;
    dressed.delta = upper.values;
    dressed.omega = lower.values;
    dressed.coupling = upper.unitary * block.coupling * lower.unitary.adjoint();
    dressed.blocks = group_degenerate(lower.values, tol.degeneracy);
    dressed.upper_order = block.upper_order;
    dressed.lower_order = block.lower_order;
    return dressed;
}

}  // namespace darkmap
