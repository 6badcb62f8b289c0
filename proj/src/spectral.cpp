#include "canondae/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <Eigen/Eigenvalues>

namespace canondae {

FloquetSet floquet(const Monodromy& m, double tol_circle) {
    if (!m.M.allFinite()) throw NonFiniteGenerator("monodromy has non-finite entries");
    FloquetSet fs;
    fs.lambda = m.lambda;
    fs.period = m.period;
    if (m.M.rows() == 0) return fs;

    Eigen::ComplexEigenSolver<Matrix> es(m.M, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw EigensolverFailure("monodromy eigensolver did not converge");

    std::vector<Complex> mus(es.eigenvalues().data(),
                             es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(mus.begin(), mus.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    for (const Complex& mu : mus) {
        const bool on = std::abs(std::abs(mu) - 1.0) <= tol_circle;
        fs.multipliers.push_back(mu);
        fs.on_circle.push_back(on);
        if (on)
            fs.bloch_wavenumbers.emplace_back(std::arg(mu) / m.period);
        else
            fs.bloch_wavenumbers.emplace_back(std::nullopt);
    }
    return fs;
}

namespace {

FloquetSet scan_point(const LayeredCoefficients& coeffs,
                      const CanonicalSplitting& splitting, double lambda,
                      double tol_circle, double tol_sing) {
    const BlockPencil pencil = shift_pencil(coeffs, splitting, Complex(lambda, 0.0));
    const ReducedGenerator gen = reduce(pencil, splitting, tol_sing);
    return floquet(monodromy(gen), tol_circle);
}

}  // namespace

BandScan band_scan(const LayeredCoefficients& coeffs,
                   const CanonicalSplitting& splitting, double lambda_min,
                   double lambda_max, int num, double tol_circle,
                   double tol_sing, int threads) {
    if (num < 2) throw RangeInvalid("band scan needs at least 2 grid points");
    if (!(lambda_max > lambda_min))
        throw RangeInvalid("band scan needs lambda_max > lambda_min");

    BandScan scan;
    scan.lambda_min = lambda_min;
    scan.lambda_max = lambda_max;
    scan.n1 = splitting.n1;
    scan.grid.resize(num);
    scan.propagating.assign(num, -1);
    scan.sets.resize(num);
    for (int i = 0; i < num; ++i)
        scan.grid[i] =
            lambda_min + (lambda_max - lambda_min) * i / double(num - 1);

    auto eval = [&](int i) {
        try {
            scan.sets[i] =
                scan_point(coeffs, splitting, scan.grid[i], tol_circle, tol_sing);
            scan.propagating[i] = scan.sets[i].propagating_count();
        } catch (const SingularA22&) {
            scan.sets[i].lambda = scan.grid[i];
            scan.sets[i].period = coeffs.period();
            scan.propagating[i] = -1;
        }
    };

    const int nthreads = std::max(1, std::min(threads, num));
    if (nthreads == 1) {
        for (int i = 0; i < num; ++i) eval(i);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < nthreads; ++w)
            pool.emplace_back([&, w] {
                for (int i = w; i < num; i += nthreads) eval(i);
            });
        for (auto& th : pool) th.join();
    }

    for (int i = 0; i < num; ++i)
        if (scan.propagating[i] < 0) scan.flagged.push_back(scan.grid[i]);

    // Bisect each count change between adjacent non-flagged grid points.
    const double tol_edge = 1e-10 * (lambda_max - lambda_min);
    for (int i = 0; i + 1 < num; ++i) {
        const int clo = scan.propagating[i], chi = scan.propagating[i + 1];
        if (clo < 0 || chi < 0 || clo == chi) continue;
        double lo = scan.grid[i], hi = scan.grid[i + 1];
        int lo_count = clo;
        bool ok = true;
        while (hi - lo > tol_edge) {
            const double mid = 0.5 * (lo + hi);
            int cmid;
            try {
                cmid = scan_point(coeffs, splitting, mid, tol_circle, tol_sing)
                           .propagating_count();
            } catch (const SingularA22&) {
                scan.flagged.push_back(mid);
                ok = false;
                break;
            }
            if (cmid == lo_count)
                lo = mid;
            else
                hi = mid;
        }
        if (ok) scan.edges.push_back({0.5 * (lo + hi), clo, chi});
    }
    return scan;
}

PointSpectrumFinding point_spectrum(const LayeredCoefficients& coeffs,
                                    const CanonicalSplitting& splitting,
                                    double lambda) {
    PointSpectrumFinding out;
    out.lambda = lambda;
    const int n1 = splitting.n1;
    const int n2 = splitting.n2;
    const int n = n1 + n2;
    for (int k = 0; k < coeffs.layer_count(); ++k) {
        if (n2 == 0) {
            out.layer_kernel_dims.push_back(0);
            continue;
        }
        const auto& l = coeffs.layers()[k];
        const Matrix pencil =
            splitting.V.adjoint() * (l.H() - Complex(lambda, 0.0) * l.W()) *
            splitting.V;
        Matrix stacked(n, n2);
        stacked.topRows(n1) = pencil.topRightCorner(n1, n2);
        stacked.bottomRows(n2) = pencil.bottomRightCorner(n2, n2);
        Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
        const double smax = svd.singularValues().size() > 0
                                ? svd.singularValues()(0)
                                : 0.0;
        const double thresh = std::max(n, 1) * std::max(smax, 1.0) * 1e-12;
        int dim = 0;
        for (int j = 0; j < svd.singularValues().size(); ++j)
            if (svd.singularValues()(j) <= thresh) ++dim;
        dim += n2 - static_cast<int>(svd.singularValues().size());
        out.layer_kernel_dims.push_back(dim);
        if (dim > 0 && !out.certified) {
            out.certified = true;
            out.witness_layer = k;
            out.witness_f2 = svd.matrixV().col(n2 - 1);
        }
    }
    return out;
}

int kernel_dimension_one_period(const LayeredCoefficients& coeffs,
                                const CanonicalSplitting& splitting,
                                Complex lambda, double tol_sing) {
    const BlockPencil pencil = shift_pencil(coeffs, splitting, lambda);
    const ReducedGenerator gen = reduce(pencil, splitting, tol_sing);
    const Monodromy m = monodromy(gen);
    const auto sr = singular_range(m.M);
    if (!(sr.smax > 0.0 && sr.smin > tol_sing * sr.smax) && gen.n1 > 0)
        throw EigensolverFailure("monodromy numerically singular");
    return gen.n1;
}

}  // namespace canondae
