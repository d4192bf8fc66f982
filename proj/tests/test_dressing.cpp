#include "core/dressing.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cstring>

using namespace darkmap;

TEST_CASE("two-level dressed pair splits by the coupling magnitude") {
    const double delta = 0.4;
    const double mag = 0.75;
    const double theta = 1.1;
    Matrix m(2, 2);
    m << Complex(-delta, 0), std::polar(mag, theta), std::polar(mag, -theta),
        Complex(-delta, 0);
    const EigenDecomposition eig = hermitian_eigendecompose(m);
    CHECK(eig.values(0) == doctest::Approx(-delta - mag).epsilon(1e-14));
    CHECK(eig.values(1) == doctest::Approx(-delta + mag).epsilon(1e-14));
    CHECK((eig.unitary * m * eig.unitary.adjoint() -
           Matrix(eig.values.cast<Complex>().asDiagonal()))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
}

TEST_CASE("equal all-to-all coupling gives the fully symmetric split") {
    const double w = 0.6;
    Matrix m = Matrix::Constant(3, 3, Complex(w, 0.0));
    m.diagonal().setZero();
    const EigenDecomposition eig = hermitian_eigendecompose(m);
    CHECK(eig.values(0) == doctest::Approx(-w).epsilon(1e-13));
    CHECK(eig.values(1) == doctest::Approx(-w).epsilon(1e-13));
    CHECK(eig.values(2) == doctest::Approx(2 * w).epsilon(1e-13));
}

TEST_CASE("diagonal input sorts into a permutation") {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = 2.0;
    m(1, 1) = -1.0;
    m(2, 2) = 0.5;
    const EigenDecomposition eig = hermitian_eigendecompose(m);
    CHECK(eig.values(0) == -1.0);
    CHECK(eig.values(1) == 0.5);
    CHECK(eig.values(2) == 2.0);
    // each row carries a single unit entry
    for (int k = 0; k < 3; ++k) {
        CHECK(eig.unitary.row(k).cwiseAbs().maxCoeff() == doctest::Approx(1.0));
        CHECK(eig.unitary.row(k).cwiseAbs().sum() == doctest::Approx(1.0));
    }
}

TEST_CASE("eigendecomposition guards") {
    Matrix bad(2, 2);
    bad << Complex(0, 0), Complex(1, 0), Complex(2, 0), Complex(0, 0);
    try {
        hermitian_eigendecompose(bad);
        FAIL_CHECK("expected NonHermitianInput");
    } catch (const Error& e) {
        CHECK(e.kind() == "NonHermitianInput");
    }
}

TEST_CASE("unitarity, isospectrality and phase determinism on random matrices") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 25; ++round) {
        std::uniform_int_distribution<int> dims(1, 7);
        const int n = dims(rng);
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) m(i, j) = oracles::random_amplitude(rng, 0.0, 1.0);
        }
        m = Matrix(0.5 * (m + m.adjoint()));
        const EigenDecomposition eig = hermitian_eigendecompose(m);

        CHECK((eig.unitary * eig.unitary.adjoint() - Matrix::Identity(n, n))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-12 * n);
        CHECK((eig.unitary * m * eig.unitary.adjoint() -
               Matrix(eig.values.cast<Complex>().asDiagonal()))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-10 * (1.0 + m.cwiseAbs().maxCoeff()));
        for (int k = 0; k + 1 < n; ++k) CHECK(eig.values(k) <= eig.values(k + 1));

        // largest component of each eigenvector is real and positive
        for (int k = 0; k < n; ++k) {
            const Vector v = eig.unitary.row(k).conjugate().transpose();
            int best = 0;
            for (int i = 1; i < n; ++i) {
                if (std::abs(v(i)) > std::abs(v(best))) best = i;
            }
            CHECK(v(best).imag() == doctest::Approx(0.0).epsilon(1e-15));
            CHECK(v(best).real() > 0.0);
        }

        // bitwise repeatability
        const EigenDecomposition again = hermitian_eigendecompose(m);
        CHECK(std::memcmp(eig.unitary.data(), again.unitary.data(),
                          sizeof(Complex) * static_cast<size_t>(n) * n) == 0);
    }
}

TEST_CASE("degeneracy grouping") {
    const double tol = 1e-8;
    SUBCASE("pair plus singleton") {
        RealVector v(3);
        v << -1.0, -1.0, 0.5;
        const auto blocks = group_degenerate(v, tol);
        REQUIRE(blocks.size() == 2);
        CHECK(blocks[0].begin == 0);
        CHECK(blocks[0].end == 2);
        CHECK(blocks[1].size() == 1);
    }
    SUBCASE("all equal") {
        RealVector v = RealVector::Constant(4, 0.25);
        const auto blocks = group_degenerate(v, tol);
        REQUIRE(blocks.size() == 1);
        CHECK(blocks[0].size() == 4);
    }
    SUBCASE("well separated") {
        RealVector v(4);
        v << 0.0, 1.0, 2.0, 3.0;
        CHECK(group_degenerate(v, tol).size() == 4);
    }
    SUBCASE("ranges partition the index set") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> dist(-2.0, 2.0);
        for (int round = 0; round < 20; ++round) {
            RealVector v(6);
            for (int i = 0; i < 6; ++i) v(i) = dist(rng);
            std::sort(v.data(), v.data() + v.size());
            const auto blocks = group_degenerate(v, tol);
            int at = 0;
            for (const auto& b : blocks) {
                CHECK(b.begin == at);
                CHECK(b.end > b.begin);
                at = b.end;
            }
            CHECK(at == 6);
        }
    }
}

namespace {

BlockHamiltonian lambda_like_block(Complex w12, Complex w13, Complex w23, double delta) {
    SystemSpec spec;
    spec.mode = SpecMode::rotating;
    spec.levels = 3;
    spec.detunings = {{1, delta}, {2, delta}};
    if (std::abs(w12) > 0) spec.transitions.push_back({1, 2, w12, {}});
    spec.transitions.push_back({1, 3, w13, {}});
    spec.transitions.push_back({2, 3, w23, {}});
    return split(to_rotating_frame(spec), make_partition(3, std::array{3}));
}

}  // namespace

TEST_CASE("dressing the coupled three-level pair") {
    const double delta = 0.3;
    const double mag12 = 0.8;
    const double theta = 0.9;
    const Complex w13(1.25, 0.0), w23(0.5, 0.0);
    const BlockHamiltonian block =
        lambda_like_block(std::polar(mag12, theta), w13, w23, delta);
    const DressedSystem dressed = dress(block, Tolerances{});

    CHECK(dressed.omega(0) == doctest::Approx(-delta - mag12).epsilon(1e-13));
    CHECK(dressed.omega(1) == doctest::Approx(-delta + mag12).epsilon(1e-13));
    REQUIRE(dressed.blocks.size() == 2);

    // transformed couplings match the closed form up to a phase per column
    const Complex expect1 = (-w23 + std::polar(1.0, -theta) * w13) / std::numbers::sqrt2;
    const Complex expect2 = (w23 + std::polar(1.0, -theta) * w13) / std::numbers::sqrt2;
    CHECK(std::abs(dressed.coupling(0, 0)) ==
          doctest::Approx(std::abs(expect1)).epsilon(1e-12));
    CHECK(std::abs(dressed.coupling(0, 1)) ==
          doctest::Approx(std::abs(expect2)).epsilon(1e-12));
}

TEST_CASE("dressed couplings of the shared-lower five-level arrangement") {
    // two uppers (|5>, |4>) with no mutual coupling, symmetric lower triple
    SystemSpec spec;
    spec.mode = SpecMode::rotating;
    spec.levels = 5;
    const double delta = 0.3;
    spec.detunings = {{1, delta}, {2, delta}, {3, delta}, {4, 0.6}};
    const double w = 0.5;
    spec.transitions = {{1, 2, {w, 0}, {}}, {1, 3, {w, 0}, {}}, {2, 3, {w, 0}, {}}};
    const Complex w35(1.0, 0), w25(2.0, 0), w15(3.0, 0);
    const Complex w34(0.4, 0), w24(0.9, 0), w14(1.6, 0);
    spec.transitions.push_back({3, 5, w35, {}});
    spec.transitions.push_back({2, 5, w25, {}});
    spec.transitions.push_back({1, 5, w15, {}});
    spec.transitions.push_back({3, 4, w34, {}});
    spec.transitions.push_back({2, 4, w24, {}});
    spec.transitions.push_back({1, 4, w14, {}});

    const BlockHamiltonian block =
        split(to_rotating_frame(spec), make_partition(5, std::array{5, 4}));
    const DressedSystem dressed = dress(block, Tolerances{});

    const double s2 = std::numbers::sqrt2, s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
    Matrix expected(2, 3);
    expected.row(0) << (w15 - w35) / s2, (2.0 * w25 - w35 - w15) / s6, (w35 + w25 + w15) / s3;
    expected.row(1) << (w14 - w34) / s2, (2.0 * w24 - w34 - w14) / s6, (w34 + w24 + w14) / s3;
    // the solver may rotate within the degenerate pair and reorder rows, so
    // compare basis-independent data: the returned factors must reproduce the
    // input block, the degenerate slice must match by singular values, and the
    // isolated third column by norm and overlap with the pair
    CHECK((dressed.s_upper.adjoint() * dressed.coupling * dressed.s_lower - block.coupling)
              .cwiseAbs()
              .maxCoeff() < 1e-13);
    Eigen::JacobiSVD<Matrix> actual_pair(dressed.coupling.leftCols(2));
    Eigen::JacobiSVD<Matrix> expected_pair(expected.leftCols(2));
    CHECK((actual_pair.singularValues() - expected_pair.singularValues())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK(dressed.coupling.col(2).norm() ==
          doctest::Approx(expected.col(2).norm()).epsilon(1e-12));
    CHECK((dressed.coupling.leftCols(2).adjoint() * dressed.coupling.col(2)).norm() ==
          doctest::Approx((expected.leftCols(2).adjoint() * expected.col(2)).norm())
              .epsilon(1e-12));

    CHECK(dressed.omega(0) == doctest::Approx(-delta - w).epsilon(1e-13));
    CHECK(dressed.omega(1) == doctest::Approx(-delta - w).epsilon(1e-13));
    CHECK(dressed.omega(2) == doctest::Approx(-delta + 2 * w).epsilon(1e-13));
    REQUIRE(dressed.blocks.size() == 2);
    CHECK(dressed.blocks[0].size() == 2);
}

TEST_CASE("zero coupling block transforms to zero") {
    BlockHamiltonian block;
    block.h_upper = Matrix::Identity(2, 2);
    block.h_lower = Matrix::Identity(3, 3);
    block.coupling = Matrix::Zero(2, 3);
    block.upper_order = {5, 4};
    block.lower_order = {3, 2, 1};
    const DressedSystem dressed = dress(block, Tolerances{});
    CHECK(dressed.coupling.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dressing invariants on random blocks") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 20; ++round) {
        const auto sys = oracles::random_degenerate_system(rng);
        const BlockHamiltonian block =
            split(to_rotating_frame(sys.spec),
                  make_partition(sys.spec.levels, sys.upper));
        const DressedSystem dressed = dress(block, Tolerances{});

        // unitary factors
        const int nu = static_cast<int>(block.h_upper.rows());
        const int nl = static_cast<int>(block.h_lower.rows());
        CHECK((dressed.s_upper * dressed.s_upper.adjoint() - Matrix::Identity(nu, nu))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-12 * nu);
        CHECK((dressed.s_lower * dressed.s_lower.adjoint() - Matrix::Identity(nl, nl))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-12 * nl);

        // Frobenius norm of the coupling block is preserved
        CHECK(dressed.coupling.norm() ==
              doctest::Approx(block.coupling.norm()).epsilon(1e-10));

        // the assembled dressed matrix is isospectral with the input block
        Matrix assembled = Matrix::Zero(nu + nl, nu + nl);
        assembled.topLeftCorner(nu, nu) = dressed.delta.cast<Complex>().asDiagonal();
        assembled.bottomRightCorner(nl, nl) = dressed.omega.cast<Complex>().asDiagonal();
        assembled.topRightCorner(nu, nl) = dressed.coupling;
        assembled.bottomLeftCorner(nl, nu) = dressed.coupling.adjoint();
        const Matrix full = assemble_full(block);
        const RealVector a = hermitian_eigendecompose(assembled).values;
        const RealVector b = hermitian_eigendecompose(full).values;
        CHECK((a - b).cwiseAbs().maxCoeff() <=
              1e-9 * (1.0 + full.cwiseAbs().maxCoeff()));
    }
}
