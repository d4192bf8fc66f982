#include "core/catalog.hpp"

#include "core/darkstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace darkmap::catalog {

namespace {

[[noreturn]] void bad_params(const std::string& msg) {
    throw Error(ErrorCode::validation, "BadKindParameters", msg);
}

bool near_zero(double value, double scale) { return value <= 1e-12 * std::max(scale, 1e-12); }

bool near_zero(const Complex& z, double scale) { return near_zero(std::abs(z), scale); }

void add_transition(SystemSpec& spec, int from, int to, const Complex& amplitude) {
    if (std::abs(amplitude) == 0.0) return;
    spec.transitions.push_back({from, to, amplitude, std::nullopt});
}

// Null-space basis of a single coupling row by the recursive bright/dark
// construction, pivoted on the first nonzero entry.
Matrix row_null_basis(const Vector& row) {
    const int dim = static_cast<int>(row.size());
    const double scale = row.cwiseAbs().maxCoeff();
    if (scale == 0.0) return Matrix::Identity(dim, dim);
    int pivot = 0;
    while (pivot < dim && near_zero(row(pivot), scale)) ++pivot;
    if (pivot == dim) return Matrix::Identity(dim, dim);
    if (dim == 1) return Matrix(1, 0);

    std::vector<int> order;  // pivot first, then the rest
    order.push_back(pivot);
    for (int i = 0; i < dim; ++i) {
        if (i != pivot) order.push_back(i);
    }
    ProportionalColumns ratios;
    ratios.reference = 0;
    double norm2 = 1.0;
    for (int k = 1; k < dim; ++k) {
        const Complex lambda = row(order[static_cast<size_t>(k)]) / row(pivot);
        ratios.ratios.push_back(lambda);
        norm2 += std::norm(lambda);
        ratios.running_norms.push_back(std::sqrt(norm2));
    }
    const Matrix permuted = recursive_bright_dark(ratios).dark;
    Matrix basis = Matrix::Zero(dim, dim - 1);
    for (int k = 0; k < dim; ++k) {
        basis.row(order[static_cast<size_t>(k)]) = permuted.row(k);
    }
    return basis;
}

// Dark vectors of a degenerate pair coupled through two columns: the full
// pair when both columns vanish, one vector when they are linearly
// dependent, none otherwise.
Matrix pair_null(const Vector& col1, const Vector& col2) {
    const double n1 = col1.norm();
    const double n2 = col2.norm();
    const double scale = std::max(n1, n2);
    if (scale == 0.0) return Matrix::Identity(2, 2);
    Matrix basis(2, 1);
    if (n1 >= n2) {
        const Complex gamma = col1.dot(col2) / (n1 * n1);
        if (!near_zero((col2 - gamma * col1).norm(), scale)) return Matrix(2, 0);
        const double norm = std::sqrt(1.0 + std::norm(gamma));
        basis(0, 0) = gamma / norm;
        basis(1, 0) = Complex(-1.0, 0.0) / norm;
    } else {
        const Complex lambda = col2.dot(col1) / (n2 * n2);
        if (!near_zero((col1 - lambda * col2).norm(), scale)) return Matrix(2, 0);
        const double norm = std::sqrt(1.0 + std::norm(lambda));
        basis(0, 0) = Complex(1.0, 0.0) / norm;
        basis(1, 0) = -lambda / norm;
    }
    return basis;
}

// Bilinear cross product: annihilates both rows of a 2x3 block without
// conjugation, and vanishes exactly when the rows are dependent.
Vector bilinear_cross(const Vector& a, const Vector& b) {
    Vector v(3);
    v(0) = a(1) * b(2) - a(2) * b(1);
    v(1) = a(2) * b(0) - a(0) * b(2);
    v(2) = a(0) * b(1) - a(1) * b(0);
    return v;
}

Matrix concat_columns(const std::vector<Vector>& columns, int rows) {
    Matrix out(rows, static_cast<int>(columns.size()));
    for (size_t k = 0; k < columns.size(); ++k) out.col(static_cast<int>(k)) = columns[k];
    return out;
}

}  // namespace

// --- three-level ---

CatalogEntry three_level(ThreeLevelKind kind, const ThreeLevelParams& p) {
    const Complex w12 = p.omega12;
    const Complex w13 = p.omega13;
    const Complex w23 = p.omega23;
    switch (kind) {
        case ThreeLevelKind::lambda:
            if (std::abs(w12) != 0.0) bad_params("lambda requires omega12 = 0");
            break;
        case ThreeLevelKind::xi:
            if (std::abs(w13) != 0.0) bad_params("xi requires omega13 = 0");
            break;
        case ThreeLevelKind::vee:
            if (std::abs(w23) != 0.0) bad_params("vee requires omega23 = 0");
            break;
        case ThreeLevelKind::delta:
            break;
    }

    CatalogEntry entry;
    entry.spec.mode = SpecMode::rotating;
    entry.spec.levels = 3;
    entry.spec.detunings = {{1, p.delta13}, {2, p.delta23}};
    add_transition(entry.spec, 1, 2, w12);
    add_transition(entry.spec, 1, 3, w13);
    add_transition(entry.spec, 2, 3, w23);

    const double scale = std::max({std::abs(w12), std::abs(w13), std::abs(w23)});
    std::vector<Vector> darks;

    auto upper_one = [&](int upper_level, const Complex& c_l1, const Complex& c_l2,
                         double lower_gap_zero) {
        entry.upper = {upper_level};
        Vector row(2);
        row << c_l1, c_l2;
        if (lower_gap_zero == 0.0) {
            const Matrix basis = row_null_basis(row);
            for (int k = 0; k < basis.cols(); ++k) darks.push_back(basis.col(k));
        } else {
            if (near_zero(c_l1, scale)) darks.push_back(Vector{{1.0, 0.0}});
            if (near_zero(c_l2, scale)) darks.push_back(Vector{{0.0, 1.0}});
        }
        entry.expected = ExpectedDark{static_cast<int>(darks.size()), concat_columns(darks, 2)};
    };

    switch (kind) {
        case ThreeLevelKind::delta:
        case ThreeLevelKind::lambda: {
            entry.upper = {3};
            if (p.delta13 == p.delta23) {
                if (std::abs(w12) == 0.0) {
                    // degenerate pair, couplings (omega23, omega13) over (|2>, |1>)
                    Vector row(2);
                    row << w23, w13;
                    const Matrix basis = row_null_basis(row);
                    for (int k = 0; k < basis.cols(); ++k) darks.push_back(basis.col(k));
                } else {
                    const double theta = std::arg(w12);
                    const Complex phase = std::polar(1.0, -theta);
                    const Complex c1 = (-w23 + phase * w13) / std::numbers::sqrt2;
                    const Complex c2 = (w23 + phase * w13) / std::numbers::sqrt2;
                    if (near_zero(c1, scale)) {
                        darks.push_back(Vector{{Complex(-1, 0) / std::numbers::sqrt2,
                                                phase / std::numbers::sqrt2}});
                    }
                    if (near_zero(c2, scale)) {
                        darks.push_back(Vector{{Complex(1, 0) / std::numbers::sqrt2,
                                                phase / std::numbers::sqrt2}});
                    }
                }
                entry.expected =
                    ExpectedDark{static_cast<int>(darks.size()), concat_columns(darks, 2)};
            } else if (std::abs(w12) == 0.0) {
                if (near_zero(w23, scale)) darks.push_back(Vector{{1.0, 0.0}});
                if (near_zero(w13, scale)) darks.push_back(Vector{{0.0, 1.0}});
                entry.expected =
                    ExpectedDark{static_cast<int>(darks.size()), concat_columns(darks, 2)};
            }
            // non-degenerate lowers with an internal coupling: no closed form kept
            break;
        }
        case ThreeLevelKind::xi:
            // lowers (|3>, |1>), degenerate iff delta13 = 0
            upper_one(2, std::conj(w23), w12, p.delta13);
            break;
        case ThreeLevelKind::vee:
            // lowers (|3>, |2>), degenerate iff delta23 = 0
            upper_one(1, std::conj(w13), std::conj(w12), p.delta23);
            break;
    }
    if (kind == ThreeLevelKind::lambda) entry.name = "lambda";
    if (kind == ThreeLevelKind::delta) entry.name = "delta";
    if (kind == ThreeLevelKind::xi) entry.name = "xi";
    if (kind == ThreeLevelKind::vee) entry.name = "vee";
    return entry;
}

// --- four-level ---

CatalogEntry four_level_config1(const FourConfig1Params& p) {
    CatalogEntry entry;
    entry.name = "four1";
    entry.upper = {4};
    entry.spec.mode = SpecMode::rotating;
    entry.spec.levels = 4;
    entry.spec.detunings = {{1, p.delta}, {2, p.delta}, {3, p.delta}};
    add_transition(entry.spec, 1, 4, p.omega14);
    add_transition(entry.spec, 2, 4, p.omega24);
    add_transition(entry.spec, 3, 4, p.omega34);
    const Complex w(p.lower_coupling, 0.0);
    add_transition(entry.spec, 1, 2, w);
    add_transition(entry.spec, 1, 3, w);
    add_transition(entry.spec, 2, 3, w);

    const double s2 = std::numbers::sqrt2;
    const double s3 = std::sqrt(3.0);
    const double s6 = std::sqrt(6.0);
    const Complex c1 = (p.omega14 - p.omega34) / s2;
    const Complex c2 = (2.0 * p.omega24 - p.omega34 - p.omega14) / s6;
    const Complex c3 = (p.omega34 + p.omega14 + p.omega24) / s3;
    // dressed lower states over the bare (|3>, |2>, |1>) coordinates
    Matrix l_bare(3, 3);
    l_bare.col(0) << -1.0 / s2, 0.0, 1.0 / s2;
    l_bare.col(1) << -1.0 / s6, 2.0 / s6, -1.0 / s6;
    l_bare.col(2) << 1.0 / s3, 1.0 / s3, 1.0 / s3;

    const double scale = std::max({std::abs(c1), std::abs(c2), std::abs(c3)});
    std::vector<Vector> darks;
    if (p.lower_coupling == 0.0) {
        Vector row(3);
        row << c1, c2, c3;
        const Matrix basis = row_null_basis(row);
        for (int k = 0; k < basis.cols(); ++k) darks.push_back(l_bare * basis.col(k));
    } else {
        Vector row(2);
        row << c1, c2;
        const Matrix basis = row_null_basis(row);
        for (int k = 0; k < basis.cols(); ++k) {
            darks.push_back(l_bare.leftCols(2) * basis.col(k));
        }
        if (near_zero(c3, scale)) darks.push_back(l_bare.col(2));
    }
    entry.expected = ExpectedDark{static_cast<int>(darks.size()), concat_columns(darks, 3)};
    return entry;
}

CatalogEntry four_level_config2(const FourConfig2Params& p) {
    CatalogEntry entry;
    entry.name = "four2";
    entry.upper = {4, 3};
    entry.spec.mode = SpecMode::rotating;
    entry.spec.levels = 4;
    entry.spec.detunings = {{1, p.delta}, {2, p.delta}, {3, p.delta34}};
    add_transition(entry.spec, 1, 2, p.omega12);
    add_transition(entry.spec, 1, 3, p.omega13);
    add_transition(entry.spec, 2, 3, p.omega23);
    add_transition(entry.spec, 1, 4, p.omega14);
    add_transition(entry.spec, 2, 4, p.omega24);

    Vector col1(2), col2(2);  // bare columns over uppers (|4>, |3>)
    col1 << p.omega24, p.omega23;
    col2 << p.omega14, p.omega13;
    std::vector<Vector> darks;
    if (std::abs(p.omega12) == 0.0) {
        const Matrix basis = pair_null(col1, col2);
        for (int k = 0; k < basis.cols(); ++k) darks.push_back(basis.col(k));
    } else {
        const double theta = std::arg(p.omega12);
        const Complex phase = std::polar(1.0, -theta);
        const double scale = std::max(col1.norm(), col2.norm());
        if (near_zero((-col1 + phase * col2).norm(), scale)) {
            darks.push_back(Vector{{Complex(-1, 0) / std::numbers::sqrt2,
                                    phase / std::numbers::sqrt2}});
        }
        if (near_zero((col1 + phase * col2).norm(), scale)) {
            darks.push_back(Vector{{Complex(1, 0) / std::numbers::sqrt2,
                                    phase / std::numbers::sqrt2}});
        }
    }
    entry.expected = ExpectedDark{static_cast<int>(darks.size()), concat_columns(darks, 2)};
    return entry;
}

// --- five-level ---

CatalogEntry five_level_config1(const FiveConfig1Params& p) {
    CatalogEntry entry;
    entry.name = "five1";
    entry.upper = {5};
    entry.spec.mode = SpecMode::rotating;
    entry.spec.levels = 5;
    entry.spec.detunings = {{1, p.delta}, {2, p.delta}, {3, p.delta}, {4, p.delta}};
    add_transition(entry.spec, 1, 5, p.omega15);
    add_transition(entry.spec, 2, 5, p.omega25);
    add_transition(entry.spec, 3, 5, p.omega35);
    add_transition(entry.spec, 4, 5, p.omega45);
    const Complex w1(p.omega1, 0.0);
    const Complex w2(p.omega2, 0.0);
    add_transition(entry.spec, 3, 4, w1);
    add_transition(entry.spec, 2, 4, w1);
    add_transition(entry.spec, 1, 2, w1);
    add_transition(entry.spec, 1, 3, w1);
    add_transition(entry.spec, 2, 3, w2);
    add_transition(entry.spec, 1, 4, w2);

    const double s2 = std::numbers::sqrt2;
    Vector coupling(4);
    coupling << (p.omega15 - p.omega45) / s2, (p.omega25 - p.omega35) / s2,
        (p.omega45 - p.omega35 - p.omega25 + p.omega15) / 2.0,
        (p.omega45 + p.omega35 + p.omega25 + p.omega15) / 2.0;
    // dressed lower states over the bare (|4>, |3>, |2>, |1>) coordinates
    Matrix l_bare(4, 4);
    l_bare.col(0) << -s2 / 2.0, 0.0, 0.0, s2 / 2.0;
    l_bare.col(1) << 0.0, -s2 / 2.0, s2 / 2.0, 0.0;
    l_bare.col(2) << 0.5, -0.5, -0.5, 0.5;
    l_bare.col(3) << 0.5, 0.5, 0.5, 0.5;

    // degeneracy pattern of (-d-w2, -d-w2, -d-2w1+w2, -d+2w1+w2)
    std::vector<std::vector<int>> groups;
    if (p.omega1 == 0.0 && p.omega2 == 0.0) {
        groups = {{0, 1, 2, 3}};
    } else if (p.omega1 == 0.0) {
        groups = {{0, 1}, {2, 3}};
    } else if (p.omega1 == p.omega2) {
        groups = {{0, 1, 2}, {3}};
    } else if (p.omega1 == -p.omega2) {
        groups = {{0, 1, 3}, {2}};
    } else {
        groups = {{0, 1}, {2}, {3}};
    }

    const double scale = coupling.cwiseAbs().maxCoeff();
    std::vector<Vector> darks;
    for (const auto& group : groups) {
        if (group.size() == 1) {
            if (near_zero(coupling(group[0]), scale)) darks.push_back(l_bare.col(group[0]));
            continue;
        }
        Vector row(static_cast<int>(group.size()));
        for (size_t i = 0; i < group.size(); ++i) row(static_cast<int>(i)) = coupling(group[i]);
        const Matrix basis = row_null_basis(row);
        for (int k = 0; k < basis.cols(); ++k) {
            Vector bare = Vector::Zero(4);
            for (size_t i = 0; i < group.size(); ++i) {
                bare += basis(static_cast<int>(i), k) * l_bare.col(group[i]);
            }
            darks.push_back(bare);
        }
    }
    entry.expected = ExpectedDark{static_cast<int>(darks.size()), concat_columns(darks, 4)};
    return entry;
}

CatalogEntry five_level_config2(const FiveConfig2Params& p) {
    CatalogEntry entry;
    entry.name = "five2";
    entry.upper = {5, 4};
    entry.spec.mode = SpecMode::rotating;
    entry.spec.levels = 5;
    entry.spec.detunings = {{1, p.delta}, {2, p.delta}, {3, p.delta}, {4, p.delta45}};
    const Complex w(p.lower_coupling, 0.0);
    add_transition(entry.spec, 1, 2, w);
    add_transition(entry.spec, 1, 3, w);
    add_transition(entry.spec, 2, 3, w);
    add_transition(entry.spec, 3, 5, p.omega35);
    add_transition(entry.spec, 2, 5, p.omega25);
    add_transition(entry.spec, 1, 5, p.omega15);
    add_transition(entry.spec, 3, 4, p.omega34);
    add_transition(entry.spec, 2, 4, p.omega24);
    add_transition(entry.spec, 1, 4, p.omega14);

    const double s2 = std::numbers::sqrt2;
    const double s3 = std::sqrt(3.0);
    const double s6 = std::sqrt(6.0);
    Matrix coupling(2, 3);  // rows: bare uppers (|5>, |4>) against (L1, L2, L3)
    coupling.row(0) << (p.omega15 - p.omega35) / s2,
        (2.0 * p.omega25 - p.omega35 - p.omega15) / s6,
        (p.omega35 + p.omega25 + p.omega15) / s3;
    coupling.row(1) << (p.omega14 - p.omega34) / s2,
        (2.0 * p.omega24 - p.omega34 - p.omega14) / s6,
        (p.omega34 + p.omega24 + p.omega14) / s3;
    Matrix l_bare(3, 3);
    l_bare.col(0) << -1.0 / s2, 0.0, 1.0 / s2;
    l_bare.col(1) << -1.0 / s6, 2.0 / s6, -1.0 / s6;
    l_bare.col(2) << 1.0 / s3, 1.0 / s3, 1.0 / s3;

    const double scale = coupling.cwiseAbs().maxCoeff();
    std::vector<Vector> darks;
    if (p.lower_coupling == 0.0) {
        const Vector cross =
            bilinear_cross(coupling.row(0).transpose(), coupling.row(1).transpose());
        if (!near_zero(cross.norm(), scale * scale)) {
            darks.push_back(l_bare * (cross / cross.norm()));
        } else {
            const Vector row = coupling.row(0).norm() >= coupling.row(1).norm()
                                   ? Vector(coupling.row(0).transpose())
                                   : Vector(coupling.row(1).transpose());
            const Matrix basis = row_null_basis(row);
            for (int k = 0; k < basis.cols(); ++k) darks.push_back(l_bare * basis.col(k));
        }
    } else {
        const Matrix basis = pair_null(coupling.col(0), coupling.col(1));
        for (int k = 0; k < basis.cols(); ++k) {
            darks.push_back(l_bare.leftCols(2) * basis.col(k));
        }
        if (near_zero(coupling.col(2).norm(), scale)) darks.push_back(l_bare.col(2));
    }
    entry.expected = ExpectedDark{static_cast<int>(darks.size()), concat_columns(darks, 3)};
    return entry;
}

CatalogEntry five_level_config3(const FiveConfig3Params& p) {
    CatalogEntry entry;
    entry.name = "five3";
    entry.upper = {5, 4, 3};
    entry.spec.mode = SpecMode::rotating;
    entry.spec.levels = 5;
    entry.spec.detunings = {{1, p.delta}, {2, p.delta}, {3, 0.0}, {4, 0.0}};
    const Complex w(p.upper_coupling, 0.0);
    add_transition(entry.spec, 3, 4, w);
    add_transition(entry.spec, 3, 5, w);
    add_transition(entry.spec, 4, 5, w);
    add_transition(entry.spec, 1, 2, p.omega12);
    add_transition(entry.spec, 2, 5, p.omega25);
    add_transition(entry.spec, 1, 5, p.omega15);
    add_transition(entry.spec, 2, 4, p.omega24);
    add_transition(entry.spec, 1, 4, p.omega14);
    add_transition(entry.spec, 2, 3, p.omega23);
    add_transition(entry.spec, 1, 3, p.omega13);

    Vector col1(3), col2(3);  // bare columns over uppers (|5>, |4>, |3>)
    col1 << p.omega25, p.omega24, p.omega23;
    col2 << p.omega15, p.omega14, p.omega13;
    std::vector<Vector> darks;
    if (std::abs(p.omega12) == 0.0) {
        const Matrix basis = pair_null(col1, col2);
        for (int k = 0; k < basis.cols(); ++k) darks.push_back(basis.col(k));
    } else {
        const double theta = std::arg(p.omega12);
        const Complex phase = std::polar(1.0, -theta);
        const double scale = std::max(col1.norm(), col2.norm());
        if (near_zero((-col1 + phase * col2).norm(), scale)) {
            darks.push_back(Vector{{Complex(-1, 0) / std::numbers::sqrt2,
                                    phase / std::numbers::sqrt2}});
        }
        if (near_zero((col1 + phase * col2).norm(), scale)) {
            darks.push_back(Vector{{Complex(1, 0) / std::numbers::sqrt2,
                                    phase / std::numbers::sqrt2}});
        }
    }
    entry.expected = ExpectedDark{static_cast<int>(darks.size()), concat_columns(darks, 2)};
    return entry;
}

// --- N-level configurations ---

CatalogEntry multipod(int levels, const std::vector<double>& detunings,
                      const std::vector<Complex>& couplings) {
    if (levels < 3) bad_params("multipod needs at least three levels");
    const size_t n_lower = static_cast<size_t>(levels - 1);
    if (detunings.size() != n_lower || couplings.size() != n_lower) {
        bad_params("multipod needs " + std::to_string(n_lower) + " detunings and couplings");
    }
    for (const auto& c : couplings) {
        if (std::abs(c) == 0.0) bad_params("multipod couplings must be nonzero");
    }

    CatalogEntry entry;
    entry.name = "multipod";
    entry.upper = {levels};
    entry.spec.mode = SpecMode::rotating;
    entry.spec.levels = levels;
    for (int r = 1; r < levels; ++r) {
        entry.spec.detunings[r] = detunings[static_cast<size_t>(r - 1)];
        add_transition(entry.spec, r, levels, couplings[static_cast<size_t>(r - 1)]);
    }

    // group lower levels by exact detuning equality, descending labels inside
    std::map<double, std::vector<int>> groups;
    for (int r = levels - 1; r >= 1; --r) {
        groups[detunings[static_cast<size_t>(r - 1)]].push_back(r);
    }
    std::vector<Vector> darks;
    for (const auto& [value, members] : groups) {
        (void)value;
        if (members.size() < 2) continue;
        Vector row(static_cast<int>(members.size()));
        for (size_t i = 0; i < members.size(); ++i) {
            row(static_cast<int>(i)) = couplings[static_cast<size_t>(members[i] - 1)];
        }
        const Matrix basis = row_null_basis(row);
        for (int k = 0; k < basis.cols(); ++k) {
            Vector bare = Vector::Zero(levels - 1);
            for (size_t i = 0; i < members.size(); ++i) {
                bare(levels - 1 - members[i]) = basis(static_cast<int>(i), k);
            }
            darks.push_back(bare);
        }
    }
    entry.expected =
        ExpectedDark{static_cast<int>(darks.size()), concat_columns(darks, levels - 1)};
    return entry;
}

CatalogEntry multi_lambda(int levels, double delta1, double delta2,
                          const std::vector<Complex>& to_l1,
                          const std::vector<Complex>& to_l2) {
    if (levels < 4) bad_params("multi_lambda needs at least four levels");
    const size_t n_upper = static_cast<size_t>(levels - 2);
    if (to_l1.size() != n_upper || to_l2.size() != n_upper) {
        bad_params("multi_lambda needs " + std::to_string(n_upper) + " couplings per lower state");
    }

    CatalogEntry entry;
    entry.name = "multi_lambda";
    entry.spec.mode = SpecMode::rotating;
    entry.spec.levels = levels;
    entry.spec.detunings[1] = delta2;
    entry.spec.detunings[2] = delta1;
    for (int r = 3; r < levels; ++r) entry.spec.detunings[r] = 0.0;
    for (int j = 3; j <= levels; ++j) {
        add_transition(entry.spec, 2, j, to_l1[static_cast<size_t>(j - 3)]);
        add_transition(entry.spec, 1, j, to_l2[static_cast<size_t>(j - 3)]);
    }
    for (int j = levels; j >= 3; --j) entry.upper.push_back(j);

    Vector col1(static_cast<int>(n_upper)), col2(static_cast<int>(n_upper));
    for (size_t i = 0; i < n_upper; ++i) {
        // rows run over the uppers in descending label order (|N> first)
        col1(static_cast<int>(i)) = to_l1[n_upper - 1 - i];
        col2(static_cast<int>(i)) = to_l2[n_upper - 1 - i];
    }
    std::vector<Vector> darks;
    if (delta1 == delta2) {
        const Matrix basis = pair_null(col1, col2);
        for (int k = 0; k < basis.cols(); ++k) darks.push_back(basis.col(k));
    } else {
        if (col1.norm() == 0.0) darks.push_back(Vector{{1.0, 0.0}});
        if (col2.norm() == 0.0) darks.push_back(Vector{{0.0, 1.0}});
    }
    entry.expected = ExpectedDark{static_cast<int>(darks.size()), concat_columns(darks, 2)};
    return entry;
}

namespace {

CatalogEntry zigzag_chain(const std::string& name, int levels, int n_upper, double delta,
                          const std::vector<Complex>& zigzag) {
    if (zigzag.size() != static_cast<size_t>(levels - 1)) {
        bad_params(name + " needs " + std::to_string(levels - 1) + " couplings");
    }
    for (const auto& c : zigzag) {
        if (std::abs(c) == 0.0) bad_params(name + " couplings must be nonzero");
    }
    const int n_lower = levels - n_upper;
    CatalogEntry entry;
    entry.name = name;
    entry.spec.mode = SpecMode::rotating;
    entry.spec.levels = levels;
    for (int r = 1; r <= n_lower; ++r) entry.spec.detunings[r] = delta;
    for (int r = n_lower + 1; r < levels; ++r) entry.spec.detunings[r] = 0.0;
    for (int k = levels; k > n_lower; --k) entry.upper.push_back(k);

    // walk the chain: upper u_k = |levels+1-k|, lower l_k = |n_lower+1-k|
    size_t edge = 0;
    if (n_lower == n_upper + 1) {
        for (int k = 1; k <= n_upper; ++k) {
            add_transition(entry.spec, n_lower + 1 - k, levels + 1 - k, zigzag[edge++]);
            add_transition(entry.spec, n_lower - k, levels + 1 - k, zigzag[edge++]);
        }
    } else {
        for (int k = 1; k <= n_lower; ++k) {
            add_transition(entry.spec, n_lower + 1 - k, levels + 1 - k, zigzag[edge++]);
            if (edge == zigzag.size()) break;
            add_transition(entry.spec, n_lower + 1 - k, levels - k, zigzag[edge++]);
        }
    }
    return entry;
}

}  // namespace

CatalogEntry lambda_chain(int levels, double delta, const std::vector<Complex>& zigzag) {
    if (levels < 3 || levels % 2 == 0) bad_params("lambda_chain needs odd N >= 3");
    CatalogEntry entry = zigzag_chain("lambda_chain", levels, (levels - 1) / 2, delta, zigzag);
    const Vector dark = analytic_lambda_chain_dark(levels, zigzag);
    entry.expected = ExpectedDark{1, dark};
    return entry;
}

CatalogEntry n_chain(int levels, double delta, const std::vector<Complex>& zigzag) {
    if (levels < 4 || levels % 2 == 1) bad_params("n_chain needs even N >= 4");
    CatalogEntry entry = zigzag_chain("n_chain", levels, levels / 2, delta, zigzag);
    entry.expected = ExpectedDark{0, Matrix(levels / 2, 0)};
    return entry;
}

CatalogEntry v_chain(int levels, double delta, const std::vector<Complex>& zigzag) {
    if (levels < 5 || levels % 2 == 0) bad_params("v_chain needs odd N >= 5");
    CatalogEntry entry = zigzag_chain("v_chain", levels, (levels + 1) / 2, delta, zigzag);
    entry.expected = ExpectedDark{0, Matrix((levels - 1) / 2, 0)};
    return entry;
}

Vector analytic_lambda_chain_dark(int levels, const std::vector<Complex>& zigzag) {
    if (levels < 3 || levels % 2 == 0) bad_params("the chain closed form needs odd N >= 3");
    if (zigzag.size() != static_cast<size_t>(levels - 1)) {
        bad_params("the chain closed form needs " + std::to_string(levels - 1) + " couplings");
    }
    const int m = (levels - 1) / 2;
    for (int k = 1; k <= m; ++k) {
        if (std::abs(zigzag[static_cast<size_t>(2 * k - 2)]) == 0.0) {
            throw Error(ErrorCode::validation, "ZeroDenominatorCoupling",
                        "chain coupling " + std::to_string(2 * k - 1) + " must be nonzero");
        }
    }
    Vector dark(m + 1);
    dark(m) = 1.0;
    for (int i = m - 1; i >= 0; --i) {
        const Complex numer = zigzag[static_cast<size_t>(2 * i + 1)];  // (l_{i+2}, u_{i+1}) leg
        const Complex denom = zigzag[static_cast<size_t>(2 * i)];      // (l_{i+1}, u_{i+1}) leg
        dark(i) = -(numer / denom) * dark(i + 1);
    }
    dark /= dark.norm();
    return dark;
}

// --- dark-state polariton ---

double DspParams::mixing_angle() const {
    return std::atan2(g * std::sqrt(static_cast<double>(n_atoms)), omega_control);
}

double DspParams::effective_coupling() const {
    return std::sqrt(g * g * static_cast<double>(n_atoms) + omega_control * omega_control);
}

DspMatrix dsp_coupling_matrix(const DspParams& p, bool large_n) {
    const int n = p.n_excitations;
    if (n < 1) bad_params("at least one excitation required");
    if (n > p.n_atoms) {
        throw Error(ErrorCode::validation, "ExcitationExceedsAtoms",
                    "excitation number " + std::to_string(n) + " exceeds the atom number " +
                        std::to_string(p.n_atoms));
    }
    DspMatrix out;
    out.coupling = Matrix::Zero(n, n + 1);
    for (int m = 1; m <= n; ++m) {
        const double atoms = large_n ? static_cast<double>(p.n_atoms)
                                     : static_cast<double>(p.n_atoms - m + 1);
        out.coupling(m - 1, m - 1) = p.g * std::sqrt(atoms) * std::sqrt(double(n - m + 1));
        out.coupling(m - 1, m) = std::sqrt(double(m)) * p.omega_control;
        out.upper_labels.push_back("ac^" + std::to_string(m - 1) + "," + std::to_string(n - m));
    }
    for (int i = 0; i <= n; ++i) {
        out.lower_labels.push_back("c^" + std::to_string(i) + "," + std::to_string(n - i));
    }
    return out;
}

Vector dsp_dark_polariton(int n, double theta) {
    if (n < 1) bad_params("at least one excitation required");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Vector dark(n + 1);
    double binom = 1.0;
    for (int i = 0; i <= n; ++i) {
        dark(i) = std::sqrt(binom) * std::pow(-c, n - i) * std::pow(s, i);
        binom *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    dark /= dark.norm();
    return dark;
}

CatalogEntry dsp(const DspParams& p, bool large_n) {
    if (p.effective_coupling() == 0.0) bad_params("dsp needs a nonzero field or control coupling");
    const DspMatrix matrix = dsp_coupling_matrix(p, large_n);
    const int n = p.n_excitations;
    const int levels = 2 * n + 1;

    CatalogEntry entry;
    entry.name = "dsp";
    entry.spec.mode = SpecMode::rotating;
    entry.spec.levels = levels;
    for (int r = 1; r < levels; ++r) entry.spec.detunings[r] = 0.0;
    for (int k = levels; k > n + 1; --k) entry.upper.push_back(k);
    for (int m = 1; m <= n; ++m) {
        // row m couples |c^{m-1}, n-m+1> (level n+2-m) and |c^m, n-m> (level n+1-m)
        add_transition(entry.spec, n + 2 - m, 2 * n + 2 - m, matrix.coupling(m - 1, m - 1));
        add_transition(entry.spec, n + 1 - m, 2 * n + 2 - m, matrix.coupling(m - 1, m));
    }

    const Vector binomial = dsp_dark_polariton(n, p.mixing_angle());
    if (large_n) {
        entry.expected = ExpectedDark{1, binomial};
    } else {
        entry.expected = ExpectedDark{1, Matrix(n + 1, 0)};
        const double residual = (matrix.coupling * binomial).norm() /
                                std::max(matrix.coupling.cwiseAbs().maxCoeff(), 1e-300);
        std::ostringstream note;
        note << "binomial polariton residual against the exact coupling matrix: " << residual;
        entry.note = note.str();
    }
    return entry;
}

// --- registry ---

namespace {

double get_double(const ParamMap& params, const std::string& key, double fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        size_t pos = 0;
        const double value = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument(it->second);
        return value;
    } catch (const std::exception&) {
        bad_params("parameter " + key + "=" + it->second + " is not a number");
    }
}

int get_int(const ParamMap& params, const std::string& key, int fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        size_t pos = 0;
        const int value = std::stoi(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument(it->second);
        return value;
    } catch (const std::exception&) {
        bad_params("parameter " + key + "=" + it->second + " is not an integer");
    }
}

bool has(const ParamMap& params, const std::string& key) { return params.count(key) > 0; }

std::vector<Complex> parse_couplings(const std::string& text) {
    std::vector<Complex> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            size_t pos = 0;
            out.emplace_back(std::stod(item, &pos), 0.0);
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            bad_params("coupling list entry \"" + item + "\" is not a number");
        }
    }
    return out;
}

std::vector<Complex> chain_couplings(const ParamMap& params, int count,
                                     std::optional<uint64_t> seed) {
    if (has(params, "couplings")) {
        auto list = parse_couplings(params.at("couplings"));
        if (static_cast<int>(list.size()) != count) {
            bad_params("expected " + std::to_string(count) + " couplings, got " +
                       std::to_string(list.size()));
        }
        return list;
    }
    if (seed) {
        std::mt19937_64 rng(*seed);
        return random_nonzero_couplings(rng, count, false);
    }
    std::vector<Complex> list;
    for (int k = 0; k < count; ++k) list.emplace_back(1.0 + 0.3 * k, 0.0);
    return list;
}

}  // namespace

std::vector<Complex> random_nonzero_couplings(std::mt19937_64& rng, int count,
                                              bool complex_phase) {
    std::uniform_real_distribution<double> magnitude(0.25, 2.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::bernoulli_distribution sign(0.5);
    std::vector<Complex> out;
    out.reserve(static_cast<size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double r = magnitude(rng);
        if (complex_phase) {
            out.push_back(std::polar(r, angle(rng)));
        } else {
            out.emplace_back(sign(rng) ? r : -r, 0.0);
        }
    }
    return out;
}

std::vector<std::string> names() {
    return {"delta",    "lambda",       "xi",           "vee",     "four1",
            "four2",    "five1",        "five2",        "five3",   "multipod",
            "multi_lambda", "lambda_chain", "n_chain",  "v_chain", "dsp"};
}

std::string describe() {
    return "delta         three levels, all transitions (omega12, theta, omega13, omega23, delta13, delta23)\n"
           "lambda        three levels, omega12 absent (omega13, omega23, delta)\n"
           "xi            ladder, omega13 absent (omega12, omega23, delta13, delta23)\n"
           "vee           omega23 absent (omega12, omega13, delta13, delta23)\n"
           "four1         one upper, symmetric lower coupling (omega, delta, omega14, omega24, omega34)\n"
           "four2         two uppers, omega34 absent (omega12, theta, omega13, omega23, omega14, omega24, delta, delta34)\n"
           "five1         one upper, two-parameter lower couplings (omega1, omega2, delta, omega45, omega35, omega25, omega15)\n"
           "five2         two uppers, symmetric lower coupling (omega, delta, delta45, omega35, omega25, omega15, omega34, omega24, omega14)\n"
           "five3         three uppers, symmetric upper coupling (omega, delta, omega12, theta, omega25, omega15, omega24, omega14, omega23, omega13)\n"
           "multipod      star graph, one upper (N, delta, degenerate, couplings)\n"
           "multi_lambda  N-2 uppers sharing two lowers (N, delta, gamma, couplings)\n"
           "lambda_chain  zigzag chain, N_l = N_u + 1 (N odd, delta, couplings)\n"
           "n_chain       zigzag chain, N_l = N_u (N even, delta, couplings)\n"
           "v_chain       zigzag chain, N_l = N_u - 1 (N odd, delta, couplings)\n"
           "dsp           collective polariton snapshot (n, atoms, theta | g, omega)\n";
}

CatalogEntry build(const std::string& name, const ParamMap& params, bool large_n,
                   std::optional<uint64_t> seed) {
    if (name == "lambda" || name == "delta" || name == "xi" || name == "vee") {
        ThreeLevelParams p;
        const double common = get_double(params, "delta", 0.3);
        if (name == "lambda") {
            p.omega12 = 0.0;
            p.omega13 = Complex(get_double(params, "omega13", 1.0), 0.0);
            p.omega23 = Complex(get_double(params, "omega23", 2.0), 0.0);
            p.delta13 = get_double(params, "delta13", common);
            p.delta23 = get_double(params, "delta23", common);
            return three_level(ThreeLevelKind::lambda, p);
        }
        if (name == "delta") {
            p.omega12 = std::polar(get_double(params, "omega12", 0.5),
                                   get_double(params, "theta", 0.0));
            p.omega13 = Complex(get_double(params, "omega13", 1.0), 0.0);
            p.omega23 = Complex(get_double(params, "omega23", 1.0), 0.0);
            p.delta13 = get_double(params, "delta13", common);
            p.delta23 = get_double(params, "delta23", common);
            return three_level(ThreeLevelKind::delta, p);
        }
        if (name == "xi") {
            p.omega12 = Complex(get_double(params, "omega12", 1.0), 0.0);
            p.omega13 = 0.0;
            p.omega23 = Complex(get_double(params, "omega23", 2.0), 0.0);
            p.delta13 = get_double(params, "delta13", 0.0);
            p.delta23 = get_double(params, "delta23", 0.4);
            return three_level(ThreeLevelKind::xi, p);
        }
        p.omega12 = Complex(get_double(params, "omega12", 1.0), 0.0);
        p.omega13 = Complex(get_double(params, "omega13", 2.0), 0.0);
        p.omega23 = 0.0;
        p.delta13 = get_double(params, "delta13", 0.4);
        p.delta23 = get_double(params, "delta23", 0.0);
        return three_level(ThreeLevelKind::vee, p);
    }
    if (name == "four1") {
        FourConfig1Params p;
        p.lower_coupling = get_double(params, "omega", 0.5);
        p.delta = get_double(params, "delta", 0.3);
        p.omega14 = Complex(get_double(params, "omega14", 1.0), 0.0);
        p.omega24 = Complex(get_double(params, "omega24", 2.0), 0.0);
        p.omega34 = Complex(get_double(params, "omega34", 3.0), 0.0);
        return four_level_config1(p);
    }
    if (name == "four2") {
        FourConfig2Params p;
        p.omega12 = std::polar(get_double(params, "omega12", 0.0),
                               get_double(params, "theta", 0.0));
        p.omega13 = Complex(get_double(params, "omega13", 1.0), 0.0);
        p.omega23 = Complex(get_double(params, "omega23", 2.0), 0.0);
        p.omega14 = Complex(get_double(params, "omega14", 1.0), 0.0);
        p.omega24 = Complex(get_double(params, "omega24", 2.0), 0.0);
        p.delta = get_double(params, "delta", 0.3);
        p.delta34 = get_double(params, "delta34", 0.7);
        return four_level_config2(p);
    }
    if (name == "five1") {
        FiveConfig1Params p;
        p.omega1 = get_double(params, "omega1", 0.3);
        p.omega2 = get_double(params, "omega2", 0.7);
        p.delta = get_double(params, "delta", 0.4);
        p.omega45 = Complex(get_double(params, "omega45", 1.0), 0.0);
        p.omega35 = Complex(get_double(params, "omega35", 2.0), 0.0);
        p.omega25 = Complex(get_double(params, "omega25", 3.0), 0.0);
        p.omega15 = Complex(get_double(params, "omega15", 5.0), 0.0);
        return five_level_config1(p);
    }
    if (name == "five2") {
        FiveConfig2Params p;
        p.lower_coupling = get_double(params, "omega", 0.5);
        p.delta = get_double(params, "delta", 0.3);
        p.delta45 = get_double(params, "delta45", 0.6);
        p.omega35 = Complex(get_double(params, "omega35", 1.0), 0.0);
        p.omega25 = Complex(get_double(params, "omega25", 1.0), 0.0);
        p.omega15 = Complex(get_double(params, "omega15", 2.0), 0.0);
        p.omega34 = Complex(get_double(params, "omega34", 0.5), 0.0);
        p.omega24 = Complex(get_double(params, "omega24", 0.5), 0.0);
        p.omega14 = Complex(get_double(params, "omega14", 1.0), 0.0);
        return five_level_config2(p);
    }
    if (name == "five3") {
        FiveConfig3Params p;
        p.upper_coupling = get_double(params, "omega", 0.5);
        p.delta = get_double(params, "delta", 0.3);
        p.omega12 = std::polar(get_double(params, "omega12", 0.0),
                               get_double(params, "theta", 0.0));
        p.omega25 = Complex(get_double(params, "omega25", 2.0), 0.0);
        p.omega15 = Complex(get_double(params, "omega15", 1.0), 0.0);
        p.omega24 = Complex(get_double(params, "omega24", 4.0), 0.0);
        p.omega14 = Complex(get_double(params, "omega14", 2.0), 0.0);
        p.omega23 = Complex(get_double(params, "omega23", 6.0), 0.0);
        p.omega13 = Complex(get_double(params, "omega13", 3.0), 0.0);
        return five_level_config3(p);
    }
    if (name == "multipod") {
        const int n = get_int(params, "N", 6);
        if (n < 3) bad_params("multipod needs N >= 3");
        const double delta = get_double(params, "delta", 0.4);
        const int degenerate = get_int(params, "degenerate", n - 1);
        if (degenerate < 1 || degenerate > n - 1) bad_params("degenerate must be in 1..N-1");
        std::vector<double> detunings;
        for (int r = 1; r < n; ++r) {
            detunings.push_back(r <= degenerate ? delta : delta + 0.35 * (r - degenerate));
        }
        return multipod(n, detunings, chain_couplings(params, n - 1, seed));
    }
    if (name == "multi_lambda") {
        const int n = get_int(params, "N", 5);
        if (n < 4) bad_params("multi_lambda needs N >= 4");
        const double delta = get_double(params, "delta", 0.3);
        const double gamma = get_double(params, "gamma", 0.5);
        const auto to_l1 = chain_couplings(params, n - 2, seed);
        std::vector<Complex> to_l2;
        for (const auto& c : to_l1) to_l2.push_back(gamma * c);
        return multi_lambda(n, get_double(params, "delta1", delta),
                            get_double(params, "delta2", delta), to_l1, to_l2);
    }
    if (name == "lambda_chain") {
        const int n = get_int(params, "N", 7);
        return lambda_chain(n, get_double(params, "delta", 0.3),
                            chain_couplings(params, n - 1, seed));
    }
    if (name == "n_chain") {
        const int n = get_int(params, "N", 6);
        return n_chain(n, get_double(params, "delta", 0.3),
                       chain_couplings(params, n - 1, seed));
    }
    if (name == "v_chain") {
        const int n = get_int(params, "N", 7);
        return v_chain(n, get_double(params, "delta", 0.3),
                       chain_couplings(params, n - 1, seed));
    }
    if (name == "dsp") {
        DspParams p;
        p.n_excitations = get_int(params, "n", 2);
        p.n_atoms = get_int(params, "atoms", 1000);
        if (has(params, "theta")) {
            const double theta = get_double(params, "theta", 0.0);
            const double rabi = get_double(params, "rabi", 1.0);
            p.g = rabi * std::sin(theta) / std::sqrt(static_cast<double>(p.n_atoms));
            p.omega_control = rabi * std::cos(theta);
        } else {
            p.g = get_double(params, "g", 0.02);
            p.omega_control = get_double(params, "omega", 0.5);
        }
        return dsp(p, large_n);
    }
    throw Error(ErrorCode::validation, "UnknownCatalogEntry",
                "no catalog entry named \"" + name + "\"");
}

}  // namespace darkmap::catalog
