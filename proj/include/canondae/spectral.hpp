#pragma once

#include <optional>
#include <vector>

#include "canondae/propagation.hpp"

namespace canondae {

/// Eigenvalues of a monodromy matrix classified against the unit circle.
struct FloquetSet {
    Complex lambda;
    double period = 0.0;
    std::vector<Complex> multipliers;
    std::vector<bool> on_circle;
    // arg(mu)/d in (-pi/d, pi/d] for on-circle multipliers, empty otherwise.
    std::vector<std::optional<double>> bloch_wavenumbers;
    int propagating_count() const {
        int c = 0;
        for (bool b : on_circle) c += b ? 1 : 0;
        return c;
    }
};

FloquetSet floquet(const Monodromy& m, double tol_circle = 1e-8);

struct BandEdge {
    double lambda = 0.0;
    int count_below = 0;
    int count_above = 0;
};

/// Uniform scan of propagating-mode counts over real lambda with bisected
/// edges. Grid points where the reduction is singular are flagged (count -1)
/// and excluded from edge detection.
struct BandScan {
    double lambda_min = 0.0, lambda_max = 0.0;
    int n1 = 0;
    std::vector<double> grid;
    std::vector<int> propagating;  // -1 at flagged points
    std::vector<FloquetSet> sets;  // empty multipliers at flagged points
    std::vector<BandEdge> edges;
    std::vector<double> flagged;
};

BandScan band_scan(const LayeredCoefficients& coeffs,
                   const CanonicalSplitting& splitting, double lambda_min,
                   double lambda_max, int num, double tol_circle = 1e-8,
                   double tol_sing = 1e-10, int threads = 1);

/// Sufficient-condition certificate for an infinite-multiplicity eigenvalue:
/// a nontrivial per-layer kernel of the stacked normal-block map. Absence of
/// a certificate is "none found", not a proof that lambda is not an
/// eigenvalue.
struct PointSpectrumFinding {
    double lambda = 0.0;
    std::vector<int> layer_kernel_dims;
    bool certified = false;
    int witness_layer = -1;
    Vector witness_f2;  // empty when no certificate
};

PointSpectrumFinding point_spectrum(const LayeredCoefficients& coeffs,
                                    const CanonicalSplitting& splitting,
                                    double lambda);

/// Dimension of the solution space of the homogeneous DAE on one compact
/// period: rank J, checked against invertibility of the monodromy.
int kernel_dimension_one_period(const LayeredCoefficients& coeffs,
                                const CanonicalSplitting& splitting,
                                Complex lambda, double tol_sing = 1e-10);

}  // namespace canondae
