#pragma once

#include <optional>
#include <vector>

#include "canondae/reduction.hpp"

namespace canondae {

/// Fundamental-solution transfer of the reduced ODE over one period.
struct Monodromy {
    Complex lambda;
    double period = 0.0;
    Matrix M;
    double condition = 0.0;
};

/// exp(dt * A_k) for 0 < dt <= thickness of layer k.
Matrix layer_transfer(const ReducedGenerator& gen, int layer, double dt);

/// Transfer matrix Phi(a -> b) of the reduced ODE, a <= b, periodic layers.
Matrix transfer(const ReducedGenerator& gen, double a, double b);

Monodromy monodromy(const ReducedGenerator& gen);

/// Sampled solution of the inhomogeneous IVP, with the tangential derivative
/// retained so the DAE residual can be formed without numerical
/// differentiation.
struct IvpSolution {
    std::vector<double> t;
    std::vector<Vector> f;       // assembled n-vectors
    std::vector<Vector> f1;      // tangential components
    std::vector<Vector> f1dot;   // d/dt of the tangential components
    std::vector<int> layer;      // layer index each sample was evaluated in
                                 // (boundary samples use a one-sided limit)
    std::vector<double> tau;     // layer-local coordinate of each sample,
                                 // consistent with the one-sided layer choice
};

/// Solve J f' + (H - zW) f = W g on [t0, t1] with (Jf)(t0) = f0, f0 in ran J.
/// g is a per-layer constant/exponential source (layer-local time) or null for
/// the homogeneous problem. Variation of constants with closed-form integrals.
IvpSolution solve_ivp(const LayeredCoefficients& coeffs,
                      const CanonicalSplitting& splitting, Complex z,
                      const PiecewiseExpFunction* g, double t0, double t1,
                      const Vector& f0, int samples_per_layer = 16,
                      double tol_sing = 1e-10);

/// Max-norm of J f' + (H - zW) f - W g over the sampled trajectory.
double max_dae_residual(const LayeredCoefficients& coeffs,
                        const CanonicalSplitting& splitting, Complex z,
                        const PiecewiseExpFunction* g, const IvpSolution& sol);

}  // namespace canondae
