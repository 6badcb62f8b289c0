#pragma once

#include <utility>

#include "canondae/types.hpp"

namespace canondae {

/// Constant skew-Hermitian coefficient of the derivative term.
///
/// Construction validates J* = -J within tol and rejects J = 0.
class SkewHermitian {
public:
    explicit SkewHermitian(Matrix entries, double tol_struct = 1e-12);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Matrix& entries() const { return entries_; }

private:
    Matrix entries_;
};

/// Structural splitting of C^n into ran J (+) ker J.
///
/// V = [orthonormal basis of ran J | orthonormal basis of ker J], so that
/// V^{-1} J V = blkdiag(J11, 0) with J11 invertible skew-Hermitian.
struct CanonicalSplitting {
    Matrix V;      // n x n unitary
    int n1 = 0;    // rank J
    int n2 = 0;    // nullity J
    Matrix J11;    // n1 x n1, invertible, skew-Hermitian
    Matrix Jplus;  // Moore-Penrose pseudoinverse of J
    Matrix P;      // orthogonal projection onto ran J (= J+J = JJ+)
};

/// Build the splitting from an eigendecomposition of the Hermitian matrix iJ.
///
/// Rank is decided by thresholding eigenvalue magnitudes at n * tol * max.
/// Column order inside the ran-J basis is descending |eigenvalue of iJ| with a
/// deterministic phase normalization, so repeated runs give the same V.
/// If J is invertible (n2 = 0) the splitting degenerates to V = I.
CanonicalSplitting build_splitting(const SkewHermitian& J, double tol_struct = 1e-12);

/// Build a splitting from a caller-supplied unitary V (e.g. an explicit
/// permutation). Validates that V is unitary and block-diagonalizes J.
CanonicalSplitting splitting_from_unitary(const SkewHermitian& J, const Matrix& V,
                                          double tol_struct = 1e-12);

/// Moore-Penrose pseudoinverse of a skew-Hermitian matrix.
Matrix pseudoinverse(const SkewHermitian& J, double tol_struct = 1e-12);

/// Split f into tangential (ran J) and normal (ker J) coordinates: V [f1;f2] = f.
std::pair<Vector, Vector> project_tangential(const CanonicalSplitting& splitting,
                                             const Vector& f);

}  // namespace canondae
