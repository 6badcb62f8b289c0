#include "canondae/propagation.hpp"

#include <cmath>

#include "canondae/expm.hpp"

namespace canondae {

namespace {

double mod_period(double t, double d) {
    double loc = std::fmod(t, d);
    if (loc < 0.0) loc += d;
    return loc;
}

}  // namespace

Matrix layer_transfer(const ReducedGenerator& gen, int layer, double dt) {
    if (layer < 0 || layer >= static_cast<int>(gen.layers.size()))
        throw RangeInvalid("layer index out of range");
    const auto& ld = gen.layers[layer];
    if (dt <= 0.0 || dt > ld.thickness * (1.0 + 1e-12))
        throw RangeInvalid("dt must lie in (0, layer thickness]");
    return expm(dt * ld.A);
}

Matrix transfer(const ReducedGenerator& gen, double a, double b) {
    if (b < a) throw RangeInvalid("transfer requires a <= b");
    const double d = gen.period;
    const double eps = 1e-13 * std::max(d, b - a);
    Matrix phi = Matrix::Identity(gen.n1, gen.n1);
    double t = a;
    while (t < b - eps) {
        const int k = gen.layer_at(t + eps);
        const double loc = mod_period(t + eps, d) - eps;
        const double to_boundary = gen.layer_start(k) + gen.layers[k].thickness - loc;
        const double step = std::min(b - t, to_boundary);
        phi = expm(step * gen.layers[k].A) * phi;
        t += step;
    }
    return phi;
}

Monodromy monodromy(const ReducedGenerator& gen) {
    Monodromy m;
    m.lambda = gen.lambda;
    m.period = gen.period;
    m.M = Matrix::Identity(gen.n1, gen.n1);
    for (const auto& ld : gen.layers) m.M = expm(ld.thickness * ld.A) * m.M;
    const auto sr = singular_range(m.M);
    m.condition = sr.smin > 0.0 ? sr.smax / sr.smin : 0.0;
    return m;
}

IvpSolution solve_ivp(const LayeredCoefficients& coeffs,
                      const CanonicalSplitting& splitting, Complex z,
                      const PiecewiseExpFunction* g, double t0, double t1,
                      const Vector& f0, int samples_per_layer,
                      double tol_sing) {
    if (t1 <= t0) throw RangeInvalid("t1 must exceed t0");
    if (samples_per_layer < 1) throw RangeInvalid("samples_per_layer must be >= 1");
    if (f0.size() != coeffs.dim()) throw ShapeMismatch("f0 has wrong length");

    const double f0norm = f0.norm();
    if (f0norm > 0.0 &&
        ((Matrix::Identity(coeffs.dim(), coeffs.dim()) - splitting.P) * f0).norm() >
            1e-10 * f0norm)
        throw InitialNotInRange("f0 is not in ran J");

    const BlockPencil pencil = shift_pencil(coeffs, splitting, z);
    const ReducedGenerator gen = reduce(pencil, splitting, tol_sing);
    const int n1 = gen.n1;
    const Matrix J11inv = gen.J11.partialPivLu().inverse();
    const double d = gen.period;

    // Per-layer reduced source F = (W g)_1 - K (W g)_2 and the 2-block (W g)_2,
    // both scalar exponentials in the layer-local coordinate.
    struct SourceData {
        Vector Fvec;   // coefficient of e^{mu tau} in the reduced source
        Vector wg2;    // coefficient of e^{mu tau} in (W g)_2
        Complex mu;
    };
    std::vector<SourceData> src;
    if (g) {
        if (g->segments.size() != static_cast<size_t>(coeffs.layer_count()))
            throw UnsupportedFunctionClass("one source segment per layer required");
        for (int k = 0; k < coeffs.layer_count(); ++k) {
            const auto& seg = g->segments[k];
            if (seg.c.size() != coeffs.dim())
                throw ShapeMismatch("source segment has wrong length");
            const Vector w = splitting.V.adjoint() * seg.c;
            const Vector c1 = w.head(n1), c2 = w.tail(gen.n2);
            const auto& ld = gen.layers[k];
            SourceData s;
            s.wg2 = ld.W21 * c1 + ld.W22 * c2;
            s.Fvec = ld.W11 * c1 + ld.W12 * c2 - ld.K * s.wg2;
            s.mu = seg.mu;
            src.push_back(std::move(s));
        }
    }

    // Sample schedule: layer boundaries between t0 and t1 plus uniform
    // subdivisions, so every propagation step stays inside one layer.
    const double eps = 1e-12 * std::max(d, t1 - t0);
    std::vector<double> knots{t0};
    double t = t0;
    while (t < t1 - eps) {
        const int k = coeffs.layer_at(t + eps);
        const double loc = mod_period(t + eps, d) - eps;
        const double to_boundary =
            coeffs.layer_start(k) + coeffs.layers()[k].thickness() - loc;
        t = std::min(t1, t + to_boundary);
        knots.push_back(t);
    }

    IvpSolution sol;
    Vector f1 = gen.J11.partialPivLu().solve((splitting.V.adjoint() * f0).head(n1));

    auto record = [&](double ts, const Vector& f1s) {
        // One-sided layer choice at boundaries: interior/left endpoints take
        // the right limit, the final endpoint takes the left limit. The local
        // coordinate is computed with the same shift so it stays in
        // [0, thickness] even when knots carry period-boundary round-off.
        const double shift = ts < t1 ? eps : -eps;
        const int k = coeffs.layer_at(ts + shift);
        const auto& ld = gen.layers[k];
        double tau = mod_period(ts + shift, d) - shift - coeffs.layer_start(k);
        if (tau < 0.0) tau = 0.0;
        Vector f1dot = ld.A * f1s;
        Vector f2 = ld.R * f1s;
        if (g) {
            const Complex ph = std::exp(src[k].mu * tau);
            f1dot += J11inv * (src[k].Fvec * ph);
            f2 += ld.A22inv * (src[k].wg2 * ph);
        }
        Vector full(coeffs.dim());
        full.head(n1) = f1s;
        full.tail(gen.n2) = f2;
        sol.t.push_back(ts);
        sol.f.push_back(splitting.V * full);
        sol.f1.push_back(f1s);
        sol.f1dot.push_back(std::move(f1dot));
        sol.layer.push_back(k);
        sol.tau.push_back(tau);
    };

    record(t0, f1);
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
        const double ka = knots[i], kb = knots[i + 1];
        const int k = coeffs.layer_at(0.5 * (ka + kb));
        const auto& ld = gen.layers[k];
        double ta = ka;
        for (int j = 1; j <= samples_per_layer; ++j) {
            const double tb = ka + (kb - ka) * j / samples_per_layer;
            const double h = tb - ta;
            if (g) {
                const double tau_a = std::max(
                    0.0, mod_period(ta + eps, d) - eps - coeffs.layer_start(k));
                Matrix aug = Matrix::Zero(n1 + 1, n1 + 1);
                aug.topLeftCorner(n1, n1) = ld.A;
                aug.topRightCorner(n1, 1) =
                    J11inv * (src[k].Fvec * std::exp(src[k].mu * tau_a));
                aug(n1, n1) = src[k].mu;
                Vector state(n1 + 1);
                state.head(n1) = f1;
                state(n1) = 1.0;
                f1 = (expm(h * aug) * state).head(n1);
            } else {
                f1 = expm(h * ld.A) * f1;
            }
            record(tb, f1);
            ta = tb;
        }
    }
    return sol;
}

double max_dae_residual(const LayeredCoefficients& coeffs,
                        const CanonicalSplitting& splitting, Complex z,
                        const PiecewiseExpFunction* g, const IvpSolution& sol) {
    const int n1 = splitting.n1;
    // J = V blkdiag(J11, 0) V*, so J f' = V [J11 f1dot; 0].
    double worst = 0.0;
    for (size_t i = 0; i < sol.t.size(); ++i) {
        const double ts = sol.t[i];
        // Coefficients are only defined a.e.; boundary samples must be judged
        // in the same (one-sided) layer the solution was evaluated in.
        const int k = i < sol.layer.size() ? sol.layer[i] : coeffs.layer_at(ts);
        const auto& l = coeffs.layers()[k];
        Vector blocked = Vector::Zero(coeffs.dim());
        blocked.head(n1) = splitting.J11 * sol.f1dot[i];
        Vector r = splitting.V * blocked + (l.H() - z * l.W()) * sol.f[i];
        if (g) {
            double tau;
            if (i < sol.tau.size()) {
                tau = sol.tau[i];
            } else {
                double loc = std::fmod(ts, coeffs.period());
                if (loc < 0.0) loc += coeffs.period();
                tau = loc - coeffs.layer_start(k);
                // Wrap genuinely negative offsets (right endpoint judged in
                // the left-limit layer); clamp boundary round-off to 0.
                const double beps = 1e-9 * coeffs.period();
                if (tau < -beps)
                    tau += coeffs.period();
                else if (tau < 0.0)
                    tau = 0.0;
            }
            const auto& seg = g->segments[k];
            r -= l.W() * (seg.c * std::exp(seg.mu * tau));
        }
        worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace canondae
