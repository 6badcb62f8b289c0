#pragma once

#include <vector>

#include "canondae/coefficients.hpp"

namespace canondae {

/// Schur complement of a 2x2-block matrix with respect to one diagonal block.
/// which = 22 gives A11 - A12 A22^{-1} A21; which = 11 gives
/// A22 - A21 A11^{-1} A12.
Matrix schur_complement(const Matrix& A11, const Matrix& A12, const Matrix& A21,
                        const Matrix& A22, int which, double tol_sing = 1e-10);

/// Per-layer data of the reduced first-order ODE at a fixed shift.
///
/// On layer k the tangential components satisfy f1' = A f1 + J11^{-1} F and the
/// normal components are recovered as f2 = A22inv (W21 g1 + W22 g2) + R f1.
struct ReducedGenerator {
    struct LayerData {
        double thickness;
        Matrix S;       // Schur complement of the pencil w.r.t. its 22-block
        Matrix A;       // -J11^{-1} S, the ODE generator
        Matrix R;       // -A22^{-1} A21, algebraic recovery of f2 from f1
        Matrix A22inv;  // inverse of the pencil 22-block
        Matrix K;       // A12 A22^{-1}, used to form the reduced source
        Matrix W11, W12, W21, W22;
    };
    Complex lambda;
    double period = 0.0;
    int n1 = 0, n2 = 0;
    Matrix J11;
    std::vector<LayerData> layers;

    double layer_start(int k) const;
    int layer_at(double t) const;
};

/// DAE -> ODE reduction. Throws SingularA22 identifying the first layer where
/// the pencil 22-block fails to be invertible.
ReducedGenerator reduce(const BlockPencil& pencil, const CanonicalSplitting& splitting,
                        double tol_sing = 1e-10);

/// Algebraic recovery of the normal components along a sampled trajectory.
/// Sample times must align with the periodic layer tiling; g may be empty for
/// the homogeneous problem.
std::vector<Vector> recover_normal(const ReducedGenerator& gen,
                                   const std::vector<double>& t,
                                   const std::vector<Vector>& f1,
                                   const std::vector<Vector>& wg2 = {});

}  // namespace canondae
