#pragma once

#include <vector>

#include "canondae/spectral.hpp"

namespace canondae {

/// Bianisotropic constitutive tensor M = [[eps, xi],[zeta, mu]] with
/// zeta = xi* derived, validated Hermitian positive definite.
struct MaterialTensor {
    Matrix eps;  // 3x3
    Matrix xi;   // 3x3
    Matrix mu;   // 3x3

    Matrix zeta() const { return xi.adjoint(); }
    Matrix assembled() const;
    /// Throws InvalidTensor on shape/Hermiticity defects, DegenerateW when M
    /// is not positive definite.
    void validate(double tol_struct = 1e-12) const;

    static MaterialTensor isotropic(double n_refractive);
    static MaterialTensor vacuum() { return isotropic(1.0); }
};

enum class MaxwellMode { Eigenfrequency, Disorder, Lossy };

MaxwellMode parse_maxwell_mode(const std::string& s);
std::string to_string(MaxwellMode mode);

/// Layered 1D photonic-crystal problem. In eigenfrequency mode each layer
/// carries its constitutive tensor and the spectral parameter is
/// lambda = omega/c (c = 1 internally). Disorder mode layers carry the
/// background (eps0, mu0) and disorder (eps1, mu1) tensors at fixed omega;
/// lossy mode layers carry complex (eps, mu) whose Hermitian and
/// anti-Hermitian parts form H and W at fixed omega.
struct MaxwellProblem {
    struct LayerSpec {
        double thickness = 0.0;
        MaterialTensor material;             // eigenfrequency
        Matrix eps0, eps1, mu0, mu1;         // disorder
        Matrix eps_complex, mu_complex;      // lossy
    };
    double period = 0.0;
    std::vector<LayerSpec> layers;
    double k1 = 0.0, k2 = 0.0;
    MaxwellMode mode = MaxwellMode::Eigenfrequency;
    double omega = 0.0;  // disorder / lossy modes
};

/// The fixed 6x6 Maxwell derivative coefficient J = i^{-1} [[0,-e3x],[e3x,0]].
Matrix maxwell_J();
/// The explicit permutation V with V^{-1} f = (E1, E2, H1, H2, E3, H3).
Matrix maxwell_V();
/// The 6x6 transverse-wavevector block [[0, kx],[-kx, 0]].
Matrix kperp_block(double k1, double k2);

struct MaxwellAssembly {
    SkewHermitian J;
    LayeredCoefficients coeffs;
    CanonicalSplitting splitting;
};

MaxwellAssembly assemble(const MaxwellProblem& problem,
                         double tol_struct = 1e-12);

/// Band scan in lambda = omega/c with a light-line marker per grid point
/// (lambda >= |kperp| holds on or above the vacuum light line).
struct MaxwellBands {
    BandScan scan;
    double kperp_norm = 0.0;
    std::vector<bool> above_light_line;
};

MaxwellBands band_structure(const MaxwellProblem& problem, double lambda_min,
                            double lambda_max, int num,
                            double tol_circle = 1e-8, double tol_sing = 1e-10,
                            int threads = 1);

}  // namespace canondae
