#pragma once

#include <vector>

#include "canondae/canonical.hpp"
#include "canondae/types.hpp"

namespace canondae {

/// One homogeneous slab [t_k, t_{k+1}) with constant Hermitian H and
/// positive definite Hermitian W.
class Layer {
public:
    Layer(double thickness, Matrix H, Matrix W, double tol_struct = 1e-12);

    double thickness() const { return thickness_; }
    const Matrix& H() const { return H_; }
    const Matrix& W() const { return W_; }
    int dim() const { return static_cast<int>(H_.rows()); }

private:
    double thickness_;
    Matrix H_, W_;
};

/// d-periodic piecewise-constant coefficient pair (H, W).
class LayeredCoefficients {
public:
    LayeredCoefficients(double period, std::vector<Layer> layers);

    double period() const { return period_; }
    const std::vector<Layer>& layers() const { return layers_; }
    int dim() const { return layers_.front().dim(); }
    int layer_count() const { return static_cast<int>(layers_.size()); }

    /// Start of layer k within the fundamental cell [0, d).
    double layer_start(int k) const;
    /// Layer index containing t (reduced mod d; t = d maps to layer 0).
    int layer_at(double t) const;

private:
    double period_;
    std::vector<Layer> layers_;
    std::vector<double> starts_;
};

/// Per-layer structural diagnostics for the coefficient hypotheses.
struct ValidationReport {
    struct LayerEntry {
        double hermiticity_defect_H;  // ||H - H*||_max
        double hermiticity_defect_W;
        double min_eigenvalue_W;
        bool pass;
        Vector witness;  // eigenvector for min eigenvalue of W when failing
    };
    std::vector<LayerEntry> layers;
    bool overall = true;
};

ValidationReport validate(const LayeredCoefficients& coeffs, double tol_struct = 1e-12);

/// Blocks of V^{-1}(H - zW)V and V^{-1}WV per layer, conformal to the splitting.
struct BlockPencil {
    struct LayerBlocks {
        double thickness;
        Matrix A11, A12, A21, A22;  // of V^{-1}(H - zW)V
        Matrix W11, W12, W21, W22;  // of V^{-1}WV
    };
    Complex z;
    double period;
    int n1 = 0, n2 = 0;
    std::vector<LayerBlocks> layers;
};

BlockPencil shift_pencil(const LayeredCoefficients& coeffs,
                         const CanonicalSplitting& splitting, Complex z);

/// Function class supported in closed form: one segment per layer, each of the
/// form c * exp(mu * tau) with tau the layer-local coordinate. mu = 0 gives a
/// per-layer constant.
struct PiecewiseExpFunction {
    struct Segment {
        Vector c;
        Complex mu{0.0, 0.0};
    };
    std::vector<Segment> segments;

    Vector eval(const LayeredCoefficients& coeffs, double t) const;
};

/// Integral over one period of <W(t) f(t), f(t)> (the squared weighted norm).
double weighted_norm_period(const LayeredCoefficients& coeffs,
                            const PiecewiseExpFunction& f);

}  // namespace canondae
