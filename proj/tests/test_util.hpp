#pragma once

#include <doctest.h>

#include "canondae/canonical.hpp"
#include "canondae/testing.hpp"

namespace testutil {

using namespace canondae;

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

/// The 2x2 rank-1 reference problem: J = i diag(1, 0), H = 0, W = I, d = 1.
struct ScalarDae {
    SkewHermitian J;
    CanonicalSplitting splitting;
    LayeredCoefficients coeffs;

    static ScalarDae make() {
        Matrix j = Matrix::Zero(2, 2);
        j(0, 0) = Complex(0.0, 1.0);
        SkewHermitian sj(j);
        CanonicalSplitting sp = build_splitting(sj);
        std::vector<Layer> layers;
        layers.emplace_back(1.0, Matrix::Zero(2, 2), Matrix::Identity(2, 2));
        return ScalarDae{std::move(sj), std::move(sp),
                         LayeredCoefficients(1.0, std::move(layers))};
    }
};

/// A random stack paired with a random rank-deficient J of matching size.
struct RandomProblem {
    SkewHermitian J;
    CanonicalSplitting splitting;
    LayeredCoefficients coeffs;

    static RandomProblem make(canondae::testing::Rng& rng, int n, int rank,
                              int layer_count) {
        SkewHermitian j(canondae::testing::random_skew_hermitian(rng, n, rank));
        CanonicalSplitting sp = build_splitting(j);
        return RandomProblem{std::move(j), std::move(sp),
                             canondae::testing::random_stack(rng, n, layer_count)};
    }
};

}  // namespace testutil
