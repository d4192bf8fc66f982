// verifier.hpp — decoupling residuals and exact unitary time evolution used to
// check reported dark states independently of the analysis path.

#pragma once

#include "core/darkstate.hpp"
#include "core/types.hpp"

#include <span>
#include <vector>

namespace darkmap {

// Largest magnitude that H * state leaves on the upper rows (the first
// n_upper coordinates of the partitioned basis).
double decoupling_residual(const Matrix& h_full, const Vector& state, int n_upper);

// Exact propagator through the Hermitian eigenbasis: amplitudes pick up
// phases exp(-i E_k t), so unitarity holds to machine accuracy at any t.
class Propagator {
public:
    explicit Propagator(const Matrix& h);
    Vector apply(const Vector& state, double t) const;

private:
    EigenDecomposition eig_;
};

Vector evolve(const Matrix& h, const Vector& state, double t);

// 64 samples spanning twenty periods of the fastest scale in H.
std::vector<double> default_time_grid(const Matrix& h, int samples = 64);

struct EvolutionSample {
    double time = 0.0;
    Vector state;
    double upper_population = 0.0;  // sum of |amplitude|^2 over the upper rows
};

std::vector<EvolutionSample> sample_evolution(const Matrix& h, const Vector& state0,
                                              int n_upper, std::span<const double> times);

struct StateVerification {
    double decoupling = 0.0;
    double eigen_residual = 0.0;  // ||H d - omega d||
    double max_leakage = 0.0;     // peak upper-subspace population over the scan
};

struct VerificationResult {
    std::vector<StateVerification> states;
    bool pass = true;
};

VerificationResult leakage_scan(const Matrix& h_full, const Matrix& dark_full_columns,
                                const RealVector& dark_omegas, int n_upper,
                                std::span<const double> times, double tol_residual);

}  // namespace darkmap
