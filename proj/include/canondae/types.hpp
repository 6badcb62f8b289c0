#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace canondae {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Numeric tolerances used throughout the library.
struct Tolerances {
    double structural = 1e-12;  // Hermiticity / unitarity defects
    double singular = 1e-10;    // relative singular-value cutoff for invertibility
    double circle = 1e-8;       // ||mu| - 1| cutoff for unit-circle classification
};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};
struct RejectsNonSkew : Error {
    using Error::Error;
};
struct RejectsZero : Error {
    using Error::Error;
};
struct SingularBlock : Error {
    double smallest_singular_value;
    SingularBlock(const std::string& msg, double smin)
        : Error(msg), smallest_singular_value(smin) {}
};
struct SingularA22 : Error {
    int layer;
    Complex lambda;
    SingularA22(int layer_, Complex lambda_)
        : Error("pencil 22-block singular on layer " + std::to_string(layer_)),
          layer(layer_),
          lambda(lambda_) {}
};
struct InvalidMode : Error {
    using Error::Error;
};
struct RealShiftRejected : Error {
    using Error::Error;
};
struct InitialNotInRange : Error {
    using Error::Error;
};
struct UnsupportedFunctionClass : Error {
    using Error::Error;
};
struct RangeInvalid : Error {
    using Error::Error;
};
struct InvalidTensor : Error {
    using Error::Error;
};
struct DegenerateW : Error {
    using Error::Error;
};
struct NonFiniteGenerator : Error {
    using Error::Error;
};
struct GridMisaligned : Error {
    using Error::Error;
};
struct EigensolverFailure : Error {
    using Error::Error;
};

/// Largest and smallest singular values of a (possibly non-square) matrix.
struct SingularRange {
    double smax = 0.0;
    double smin = 0.0;
};

SingularRange singular_range(const Matrix& a);

/// Invertibility test: smin > tol * smax and smax > 0.
bool is_invertible(const Matrix& a, double tol_sing = 1e-10);

double spectral_norm(const Matrix& a);

bool matrix_is_finite(const Matrix& a);

}  // namespace canondae
