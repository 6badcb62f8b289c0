#pragma once

#include <random>

#include <Eigen/QR>

#include "canondae/coefficients.hpp"

namespace canondae::testing {

using Rng = std::mt19937_64;

inline Matrix random_ginibre(Rng& rng, int rows, int cols) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = Complex(nd(rng), nd(rng));
    return m;
}

inline Matrix random_unitary(Rng& rng, int n) {
    const Matrix g = random_ginibre(rng, n, n);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix column phases so the distribution is Haar.
    for (int c = 0; c < n; ++c) {
        const Complex d = r(c, c);
        if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
    }
    return q;
}

inline Matrix random_hermitian(Rng& rng, int n) {
    const Matrix g = random_ginibre(rng, n, n);
    return 0.5 * (g + g.adjoint());
}

inline Matrix random_positive_definite(Rng& rng, int n) {
    const Matrix g = random_ginibre(rng, n, n);
    return g * g.adjoint() + 0.5 * Matrix::Identity(n, n);
}

/// Random skew-Hermitian matrix of prescribed rank (Q blkdiag(K, 0) Q*).
inline Matrix random_skew_hermitian(Rng& rng, int n, int rank) {
    Matrix k;
    do {
        const Matrix g = random_ginibre(rng, rank, rank);
        k = 0.5 * (g - g.adjoint());
    } while (rank > 0 && singular_range(k).smin < 0.25);
    Matrix full = Matrix::Zero(n, n);
    full.topLeftCorner(rank, rank) = k;
    const Matrix q = random_unitary(rng, n);
    Matrix j = q * full * q.adjoint();
    return 0.5 * (j - j.adjoint());  // symmetrize round-off
}

inline LayeredCoefficients random_stack(Rng& rng, int n, int layer_count,
                                        double period = 1.0) {
    std::uniform_real_distribution<double> ud(0.5, 1.5);
    std::vector<double> weights;
    double total = 0.0;
    for (int k = 0; k < layer_count; ++k) {
        weights.push_back(ud(rng));
        total += weights.back();
    }
    std::vector<Layer> layers;
    for (int k = 0; k < layer_count; ++k)
        layers.emplace_back(period * weights[k] / total, random_hermitian(rng, n),
                            random_positive_definite(rng, n));
    return LayeredCoefficients(period, std::move(layers));
}

inline PiecewiseExpFunction random_source(Rng& rng, int n, int layer_count,
                                          bool exponential = true) {
    std::normal_distribution<double> nd(0.0, 1.0);
    PiecewiseExpFunction f;
    for (int k = 0; k < layer_count; ++k) {
        PiecewiseExpFunction::Segment seg;
        seg.c = Vector(n);
        for (int i = 0; i < n; ++i) seg.c(i) = Complex(nd(rng), nd(rng));
        seg.mu = exponential ? Complex(0.3 * nd(rng), 0.3 * nd(rng))
                             : Complex(0.0, 0.0);
        f.segments.push_back(std::move(seg));
    }
    return f;
}

}  // namespace canondae::testing
