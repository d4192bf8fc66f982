#include "core/verifier.hpp"

#include <cmath>

namespace darkmap {

double decoupling_residual(const Matrix& h_full, const Vector& state, int n_upper) {
    if (state.size() != h_full.rows() || n_upper < 0 || n_upper > state.size()) {
        throw Error(ErrorCode::argument, "DimensionMismatch",
                    "state length must match the Hamiltonian dimension");
    }
    if (n_upper == 0) return 0.0;
    return (h_full.topRows(n_upper) * state).cwiseAbs().maxCoeff();
}

Propagator::Propagator(const Matrix& h) : eig_(hermitian_eigendecompose(h)) {}

Vector Propagator::apply(const Vector& state, double t) const {
    Vector modal = eig_.unitary * state;
    for (int k = 0; k < modal.size(); ++k) {
        modal(k) *= std::polar(1.0, -eig_.values(k) * t);
    }
    return eig_.unitary.adjoint() * modal;
}

Vector evolve(const Matrix& h, const Vector& state, double t) {
    return Propagator(h).apply(state, t);
}

std::vector<double> default_time_grid(const Matrix& h, int samples) {
    samples = std::max(samples, 2);
    const double scale = std::max(h.cwiseAbs().maxCoeff(), 1e-12);
    const double span = 20.0 * 2.0 * M_PI / scale;
    std::vector<double> times(static_cast<size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        times[static_cast<size_t>(k)] = span * static_cast<double>(k) / (samples - 1);
    }
    return times;
}

std::vector<EvolutionSample> sample_evolution(const Matrix& h, const Vector& state0,
                                              int n_upper, std::span<const double> times) {
    if (times.empty()) {
        throw Error(ErrorCode::argument, "DimensionMismatch", "times must not be empty");
    }
    const Propagator propagator(h);
    std::vector<EvolutionSample> samples;
    samples.reserve(times.size());
    for (double t : times) {
        EvolutionSample sample;
        sample.time = t;
        sample.state = propagator.apply(state0, t);
        sample.upper_population = sample.state.head(n_upper).squaredNorm();
        samples.push_back(std::move(sample));
    }
    return samples;
}

VerificationResult leakage_scan(const Matrix& h_full, const Matrix& dark_full_columns,
                                const RealVector& dark_omegas, int n_upper,
                                std::span<const double> times, double tol_residual) {
    if (times.empty()) {
        throw Error(ErrorCode::argument, "DimensionMismatch", "times must not be empty");
    }
    const double guard = tol_residual * (1.0 + h_full.cwiseAbs().maxCoeff());
    const Propagator propagator(h_full);

    VerificationResult result;
    for (int k = 0; k < dark_full_columns.cols(); ++k) {
        const Vector state = dark_full_columns.col(k);
        StateVerification v;
        v.decoupling = decoupling_residual(h_full, state, n_upper);
        v.eigen_residual = (h_full * state - dark_omegas(k) * state).norm();
        for (double t : times) {
            v.max_leakage =
                std::max(v.max_leakage, propagator.apply(state, t).head(n_upper).squaredNorm());
        }
        if (v.decoupling > guard || v.eigen_residual > guard || v.max_leakage > tol_residual) {
            result.pass = false;
        }
        result.states.push_back(v);
    }
    return result;
}

}  // namespace darkmap
