#include "core/darkstate.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace darkmap {

namespace {

constexpr double kRankFloor = 1e-300;  // avoids a zero cutoff when C vanishes entirely

void fix_phase(Eigen::Ref<Vector> column) {
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

double largest_singular_value(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

// Rank and right singular vectors of one block at a fixed absolute cutoff.
BlockAnalysis analyze_block(const Matrix& block, double cutoff) {
    const int dim = static_cast<int>(block.cols());
    Eigen::JacobiSVD<Matrix> svd(block, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;

    BlockAnalysis analysis;
    analysis.rank = rank;
    analysis.singular_values.assign(sv.data(), sv.data() + sv.size());
    analysis.bright = svd.matrixV().leftCols(rank);
    analysis.dark.resize(dim, dim - rank);
    for (int k = 0; k < dim - rank; ++k) {
        analysis.dark.col(k) = svd.matrixV().col(dim - 1 - k);
        fix_phase(analysis.dark.col(k));
    }
    for (int j = 0; j < dim; ++j) {
        if (block.rows() == 0 || block.col(j).cwiseAbs().maxCoeff() <= cutoff) {
            analysis.zero_columns.push_back(j);
        }
    }
    return analysis;
}

}  // namespace

DarkStateReport analyze(const DressedSystem& dressed, const Tolerances& tol) {
    const int n_upper = static_cast<int>(dressed.coupling.rows());
    const int n_lower = static_cast<int>(dressed.coupling.cols());
    const double cutoff =
        tol.rank * std::max(largest_singular_value(dressed.coupling), kRankFloor);

    DarkStateReport report;
    report.n_upper = n_upper;
    report.n_lower = n_lower;
    report.upper_order = dressed.upper_order;
    report.lower_order = dressed.lower_order;
    report.tolerances = tol;

    int total_dark = 0;
    for (size_t k = 0; k < dressed.blocks.size(); ++k) {
        const IndexRange range = dressed.blocks[k];
        BlockAnalysis analysis =
            analyze_block(dressed.coupling.middleCols(range.begin, range.size()), cutoff);
        analysis.block_index = static_cast<int>(k);
        analysis.range = range;
        analysis.omega = dressed.omega.segment(range.begin, range.size()).mean();
        total_dark += range.size() - analysis.rank;
        report.blocks.push_back(std::move(analysis));
    }

    report.total_dark = total_dark;
    report.dark_dressed = Matrix::Zero(n_lower, total_dark);
    report.dark_omegas.resize(total_dark);
    int column = 0;
    for (const auto& analysis : report.blocks) {
        for (int k = 0; k < analysis.dark.cols(); ++k, ++column) {
            report.dark_dressed.block(analysis.range.begin, column, analysis.range.size(), 1) =
                analysis.dark.col(k);
            report.dark_omegas(column) = analysis.omega;
        }
    }
    to_bare_basis(report, dressed.s_lower);
    return report;
}

void to_bare_basis(DarkStateReport& report, const Matrix& s_lower) {
    if (s_lower.rows() != report.n_lower || s_lower.cols() != report.n_lower) {
        throw Error(ErrorCode::argument, "DimensionMismatch",
                    "the lower unitary must match the lower dimension");
    }
    report.dark_bare_lower = s_lower.adjoint() * report.dark_dressed;
    report.dark_bare_full = Matrix::Zero(report.n_upper + report.n_lower, report.total_dark);
    report.dark_bare_full.bottomRows(report.n_lower) = report.dark_bare_lower;
}

Matrix null_space(const Matrix& block, double tol_rank) {
    if (block.cols() == 0) {
        throw Error(ErrorCode::argument, "DimensionMismatch",
                    "null space requires at least one column");
    }
    const double cutoff = tol_rank * std::max(largest_singular_value(block), kRankFloor);
    return analyze_block(block, cutoff).dark;
}

ProportionalColumns proportional_columns(const Matrix& block, double tol_rank) {
    const int cols = static_cast<int>(block.cols());
    if (cols < 1 || block.rows() < 1) {
        throw Error(ErrorCode::argument, "DimensionMismatch",
                    "proportionality needs a nonempty block");
    }
    const Vector reference = block.col(0);
    const double ref_norm2 = reference.squaredNorm();
    double scale = 0.0;
    for (int j = 0; j < cols; ++j) scale = std::max(scale, block.col(j).norm());
    if (ref_norm2 == 0.0) {
        if (scale > 0.0) {
            throw Error(ErrorCode::validation, "NotProportional",
                        "reference column is zero but the block is not");
        }
        throw Error(ErrorCode::validation, "NotProportional", "block is identically zero");
    }
    const double limit = std::max(tol_rank, 1e-12) * scale;

    ProportionalColumns out;
    out.reference = 0;
    double norm2 = 1.0;
    for (int j = 1; j < cols; ++j) {
        const Complex ratio = reference.dot(block.col(j)) / ref_norm2;
        const double residual = (block.col(j) - ratio * reference).norm();
        if (residual > limit) {
            throw Error(ErrorCode::validation, "NotProportional",
                        "column " + std::to_string(j + 1) +
                            " is not proportional to the reference (residual " +
                            std::to_string(residual) + ")");
        }
        out.ratios.push_back(ratio);
        norm2 += std::norm(ratio);
        out.running_norms.push_back(std::sqrt(norm2));
    }
    return out;
}

BrightDark recursive_bright_dark(const ProportionalColumns& ratios) {
    const int dim = static_cast<int>(ratios.ratios.size()) + 1;
    BrightDark out;
    out.dark.resize(dim, dim - 1);

    Vector bright = Vector::Zero(dim);
    bright(0) = 1.0;  // |B_0> = |L_1>
    double norm_prev = 1.0;
    for (int j = 1; j < dim; ++j) {
        const Complex lambda = ratios.ratios[static_cast<size_t>(j - 1)];
        const double norm_j = ratios.running_norms[static_cast<size_t>(j - 1)];
        Vector basis_j = Vector::Zero(dim);
        basis_j(j) = 1.0;  // |L_{j+1}>
        out.dark.col(j - 1) = (lambda * bright - norm_prev * basis_j) / norm_j;
        bright = (norm_prev * bright + std::conj(lambda) * basis_j) / norm_j;
        norm_prev = norm_j;
    }
    out.bright = bright;
    return out;
}

double subspace_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) {
        throw Error(ErrorCode::argument, "DimensionMismatch",
                    "subspace comparison requires equal ambient dimensions");
    }
    if (a.rows() == 0) return 0.0;
    return largest_singular_value(a * a.adjoint() - b * b.adjoint());
}

}  // namespace darkmap
