#include "canondae/coefficients.hpp"

#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

namespace canondae {

Layer::Layer(double thickness, Matrix H, Matrix W, double tol_struct)
    : thickness_(thickness), H_(std::move(H)), W_(std::move(W)) {
    if (thickness_ <= 0.0) throw RangeInvalid("layer thickness must be positive");
    if (H_.rows() != H_.cols() || W_.rows() != W_.cols() || H_.rows() != W_.rows())
        throw ShapeMismatch("H and W must be square matrices of equal dimension");
    const double hdef = (H_ - H_.adjoint()).cwiseAbs().maxCoeff();
    if (hdef > tol_struct)
        throw RejectsNonSkew("H is not Hermitian (defect " + std::to_string(hdef) + ")");
    const double wdef = (W_ - W_.adjoint()).cwiseAbs().maxCoeff();
    if (wdef > tol_struct)
        throw RejectsNonSkew("W is not Hermitian (defect " + std::to_string(wdef) + ")");
    // Hard violations are rejected here; a zero eigenvalue (boundary of
    // positive definiteness) is left for validate() to report with a witness.
    Eigen::SelfAdjointEigenSolver<Matrix> es(W_, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, W_.cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < -tol_struct * scale)
        throw DegenerateW("W is not positive semidefinite (min eigenvalue " +
                          std::to_string(es.eigenvalues().minCoeff()) + ")");
}

LayeredCoefficients::LayeredCoefficients(double period, std::vector<Layer> layers)
    : period_(period), layers_(std::move(layers)) {
    if (period_ <= 0.0) throw RangeInvalid("period must be positive");
    if (layers_.empty()) throw ShapeMismatch("at least one layer required");
    const int n = layers_.front().dim();
    double sum = 0.0;
    starts_.reserve(layers_.size());
    for (const auto& l : layers_) {
        if (l.dim() != n) throw ShapeMismatch("layers must share one dimension");
        starts_.push_back(sum);
        sum += l.thickness();
    }
    if (std::abs(sum - period_) > 1e-12 * period_)
        throw RangeInvalid("layer thicknesses must sum to the period");
}

double LayeredCoefficients::layer_start(int k) const { return starts_.at(k); }

int LayeredCoefficients::layer_at(double t) const {
    double loc = std::fmod(t, period_);
    if (loc < 0.0) loc += period_;
    // t = d wraps to layer 0 via fmod; half-open [t_k, t_{k+1}) convention.
    for (int k = layer_count() - 1; k > 0; --k)
        if (loc >= starts_[k]) return k;
    return 0;
}

ValidationReport validate(const LayeredCoefficients& coeffs, double tol_struct) {
    ValidationReport rep;
    for (const auto& l : coeffs.layers()) {
        ValidationReport::LayerEntry e;
        e.hermiticity_defect_H = (l.H() - l.H().adjoint()).cwiseAbs().maxCoeff();
        e.hermiticity_defect_W = (l.W() - l.W().adjoint()).cwiseAbs().maxCoeff();
        Eigen::SelfAdjointEigenSolver<Matrix> es(l.W());
        int imin = 0;
        es.eigenvalues().minCoeff(&imin);
        e.min_eigenvalue_W = es.eigenvalues()(imin);
        e.pass = e.hermiticity_defect_H <= tol_struct &&
                 e.hermiticity_defect_W <= tol_struct && e.min_eigenvalue_W > 0.0;
        if (!e.pass) e.witness = es.eigenvectors().col(imin);
        rep.overall = rep.overall && e.pass;
        rep.layers.push_back(std::move(e));
    }
    return rep;
}

BlockPencil shift_pencil(const LayeredCoefficients& coeffs,
                         const CanonicalSplitting& splitting, Complex z) {
    if (coeffs.dim() != splitting.V.rows())
        throw ShapeMismatch("coefficients and splitting dimensions differ");
    BlockPencil p;
    p.z = z;
    p.period = coeffs.period();
    p.n1 = splitting.n1;
    p.n2 = splitting.n2;
    const int n1 = p.n1, n2 = p.n2;
    for (const auto& l : coeffs.layers()) {
        const Matrix A = splitting.V.adjoint() * (l.H() - z * l.W()) * splitting.V;
        const Matrix W = splitting.V.adjoint() * l.W() * splitting.V;
        BlockPencil::LayerBlocks b;
        b.thickness = l.thickness();
        b.A11 = A.topLeftCorner(n1, n1);
        b.A12 = A.topRightCorner(n1, n2);
        b.A21 = A.bottomLeftCorner(n2, n1);
        b.A22 = A.bottomRightCorner(n2, n2);
        b.W11 = W.topLeftCorner(n1, n1);
        b.W12 = W.topRightCorner(n1, n2);
        b.W21 = W.bottomLeftCorner(n2, n1);
        b.W22 = W.bottomRightCorner(n2, n2);
        p.layers.push_back(std::move(b));
    }
    return p;
}

Vector PiecewiseExpFunction::eval(const LayeredCoefficients& coeffs, double t) const {
    if (segments.size() != static_cast<size_t>(coeffs.layer_count()))
        throw UnsupportedFunctionClass("one segment per layer required");
    const int k = coeffs.layer_at(t);
    double loc = std::fmod(t, coeffs.period());
    if (loc < 0.0) loc += coeffs.period();
    const double tau = loc - coeffs.layer_start(k);
    return segments[k].c * std::exp(segments[k].mu * tau);
}

double weighted_norm_period(const LayeredCoefficients& coeffs,
                            const PiecewiseExpFunction& f) {
    if (f.segments.size() != static_cast<size_t>(coeffs.layer_count()))
        throw UnsupportedFunctionClass("one segment per layer required");
    double total = 0.0;
    for (int k = 0; k < coeffs.layer_count(); ++k) {
        const auto& seg = f.segments[k];
        const auto& l = coeffs.layers()[k];
        if (seg.c.size() != l.dim()) throw ShapeMismatch("segment vector length");
        const double quad = (seg.c.adjoint() * l.W() * seg.c)(0, 0).real();
        const double a = 2.0 * seg.mu.real();
        const double tk = l.thickness();
        // int_0^tk e^{a tau} dtau, exact
        const double weight =
            std::abs(a) < 1e-300 ? tk : (std::expm1(a * tk) / a);
        total += quad * weight;
    }
    return total;
}

}  // namespace canondae
