// types.hpp — shared scalar/matrix aliases, tolerances, and the error taxonomy.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace darkmap {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// All frequencies are angular, hbar = 1.
struct Tolerances {
    double degeneracy = 1e-8;  // relative eigenvalue clustering, guarded by max(1, |median|)
    double rank = 1e-10;       // singular-value cutoff relative to the largest singular value
    double residual = 1e-9;    // verification threshold (residuals and leakage)
};

enum class ErrorCode {
    schema,      // malformed document
    validation,  // well-formed but semantically invalid input
    numeric,     // solver failure
    io,          // file access
    argument,    // bad in-process argument (null handle, dimension mismatch)
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), code_(code), kind_(std::move(kind)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& kind() const noexcept { return kind_; }

private:
    ErrorCode code_;
    std::string kind_;
};

}  // namespace darkmap
