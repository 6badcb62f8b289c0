#include "canondae/maxwell.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace canondae;
using testutil::max_abs_diff;

namespace {

MaxwellProblem two_layer(double na, double nb, double da, double db) {
    MaxwellProblem p;
    p.period = da + db;
    MaxwellProblem::LayerSpec a, b;
    a.thickness = da;
    a.material = MaterialTensor::isotropic(na);
    b.thickness = db;
    b.material = MaterialTensor::isotropic(nb);
    p.layers = {a, b};
    return p;
}

}  // namespace

TEST_CASE("the fixed J matrix: entries, rank, pseudoinverse") {
    const Matrix j = maxwell_J();
    // Entrywise: J = i^{-1} [[0, -e3x],[e3x, 0]] has only +-i entries.
    Matrix expected = Matrix::Zero(6, 6);
    const Complex i(0.0, 1.0);
    // -e3x / i block (rows 0-2, cols 3-5)
    expected(0, 4) = -i;
    expected(1, 3) = i;
    // e3x / i block (rows 3-5, cols 0-2)
    expected(3, 1) = i;
    expected(4, 0) = -i;
    CHECK(max_abs_diff(j, expected) == 0.0);

    SkewHermitian sj(j);
    const CanonicalSplitting sp = build_splitting(sj);
    CHECK(sp.n1 == 4);
    CHECK(sp.n2 == 2);
    CHECK(max_abs_diff(pseudoinverse(sj), -j) <= 1e-12);
}

TEST_CASE("material tensor validation") {
    MaterialTensor vac = MaterialTensor::vacuum();
    vac.validate();
    CHECK(max_abs_diff(vac.assembled(), Matrix::Identity(6, 6)) == 0.0);

    MaterialTensor bad = vac;
    bad.eps(0, 1) = 1.0;  // breaks Hermiticity
    CHECK_THROWS_AS(bad.validate(), InvalidTensor);

    MaterialTensor indefinite = vac;
    indefinite.eps = -Matrix::Identity(3, 3);
    CHECK_THROWS_AS(indefinite.validate(), DegenerateW);

    // Strong magnetoelectric coupling destroys positive definiteness.
    MaterialTensor coupled = vac;
    coupled.xi = 2.0 * Matrix::Identity(3, 3);
    CHECK_THROWS_AS(coupled.validate(), DegenerateW);
    CHECK(max_abs_diff(coupled.zeta(), coupled.xi.adjoint()) == 0.0);
}

TEST_CASE("eigenfrequency assembly: H from kperp, W from M") {
    MaxwellProblem p = two_layer(1.0, 2.0, 0.5, 0.5);
    p.k1 = 0.7;
    p.k2 = -0.3;
    const MaxwellAssembly built = assemble(p);

    const Matrix h = built.coeffs.layers()[0].H();
    CHECK(max_abs_diff(h, kperp_block(p.k1, p.k2)) == 0.0);
    CHECK(std::abs(h(0, 5) - Complex(p.k2)) == 0.0);
    CHECK(std::abs(h(1, 5) - Complex(-p.k1)) == 0.0);
    CHECK(max_abs_diff(h, h.adjoint()) == 0.0);
    // The normal-normal entry of kperp-cross vanishes: H22 block is zero.
    CHECK(std::abs(h(2, 2)) == 0.0);
    CHECK(std::abs(h(5, 5)) == 0.0);

    // Two isotropic layers: W = blkdiag(n^2 I, I).
    Matrix w_expected = Matrix::Identity(6, 6);
    w_expected.topLeftCorner(3, 3) *= 4.0;
    CHECK(max_abs_diff(built.coeffs.layers()[1].W(), w_expected) == 0.0);

    // Splitting comes from the explicit permutation.
    CHECK(max_abs_diff(built.splitting.V, maxwell_V()) == 0.0);
}

TEST_CASE("normal incidence gives H = 0") {
    MaxwellProblem p = two_layer(1.0, 2.0, 0.5, 0.5);
    const MaxwellAssembly built = assemble(p);
    CHECK(built.coeffs.layers()[0].H().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("assembly validates thicknesses and tensors") {
    MaxwellProblem p = two_layer(1.0, 2.0, 0.5, 0.5);
    p.period = 2.0;  // no longer matches the layer sum
    CHECK_THROWS_AS(assemble(p), RangeInvalid);

    MaxwellProblem empty;
    empty.period = 1.0;
    CHECK_THROWS_AS(assemble(empty), InvalidTensor);
}

TEST_CASE("vacuum normal incidence: multipliers e^{+-i lambda d}, no gaps") {
    MaxwellProblem p;
    p.period = 1.0;
    MaxwellProblem::LayerSpec l;
    l.thickness = 1.0;
    l.material = MaterialTensor::vacuum();
    p.layers = {l};
    const MaxwellBands mb = band_structure(p, 0.1, 5.0, 50);
    CHECK(mb.scan.edges.empty());
    CHECK(mb.scan.flagged.empty());
    for (int c : mb.scan.propagating) CHECK(c == 4);
    for (bool above : mb.above_light_line) CHECK(above);

    // Doubly degenerate conjugate pair at each lambda.
    const MaxwellAssembly built = assemble(p);
    const double lambda = 1.3;
    const FloquetSet fs = floquet(monodromy(
        reduce(shift_pencil(built.coeffs, built.splitting, lambda),
               built.splitting)));
    int plus = 0, minus = 0;
    for (const Complex& mu : fs.multipliers) {
        if (std::abs(mu - std::exp(Complex(0.0, lambda))) <= 1e-10) ++plus;
        if (std::abs(mu - std::exp(Complex(0.0, -lambda))) <= 1e-10) ++minus;
    }
    CHECK(plus == 2);
    CHECK(minus == 2);
}

TEST_CASE("quarter-wave gap edges against the analytic trace oracle") {
    MaxwellProblem p = two_layer(1.0, 2.0, 2.0 / 3.0, 1.0 / 3.0);
    const MaxwellBands mb = band_structure(p, 0.5, 3.5, 121, 1e-8, 1e-10, 2);
    const oracles::TwoLayerTrace trace{1.0, 2.0, 2.0 / 3.0, 1.0 / 3.0};
    const auto [lo, hi] = trace.first_gap(0.5, 3.5);
    REQUIRE(mb.scan.edges.size() >= 2);
    CHECK(std::abs(mb.scan.edges[0].lambda - lo) <= 1e-8);
    CHECK(std::abs(mb.scan.edges[1].lambda - hi) <= 1e-8);
}

TEST_CASE("small biisotropic coupling shifts band edges continuously") {
    MaxwellProblem p = two_layer(1.0, 2.0, 2.0 / 3.0, 1.0 / 3.0);
    const MaxwellBands base = band_structure(p, 1.5, 3.2, 69);

    MaxwellProblem q = p;
    const double kappa = 1e-6;
    for (auto& l : q.layers)
        l.material.xi = Complex(0.0, kappa) * Matrix::Identity(3, 3);
    const MaxwellBands shifted = band_structure(q, 1.5, 3.2, 69);

    REQUIRE(base.scan.edges.size() == shifted.scan.edges.size());
    for (size_t i = 0; i < base.scan.edges.size(); ++i)
        CHECK(std::abs(base.scan.edges[i].lambda - shifted.scan.edges[i].lambda) <=
              1e-4);
}

TEST_CASE("disorder mode assembles the documented H and W") {
    MaxwellProblem p;
    p.period = 1.0;
    p.mode = MaxwellMode::Disorder;
    p.omega = 2.0;
    p.k1 = 0.4;
    MaxwellProblem::LayerSpec l;
    l.thickness = 1.0;
    l.eps0 = 2.0 * Matrix::Identity(3, 3);
    l.mu0 = Matrix::Identity(3, 3);
    l.eps1 = 0.5 * Matrix::Identity(3, 3);
    l.mu1 = 0.25 * Matrix::Identity(3, 3);
    p.layers = {l};
    const MaxwellAssembly built = assemble(p);

    Matrix h_expected = kperp_block(0.4, 0.0);
    h_expected.topLeftCorner(3, 3) -= 2.0 * l.eps0;
    h_expected.bottomRightCorner(3, 3) -= 2.0 * l.mu0;
    CHECK(max_abs_diff(built.coeffs.layers()[0].H(), h_expected) == 0.0);

    Matrix w_expected = Matrix::Zero(6, 6);
    w_expected.topLeftCorner(3, 3) = 2.0 * l.eps1;
    w_expected.bottomRightCorner(3, 3) = 2.0 * l.mu1;
    CHECK(max_abs_diff(built.coeffs.layers()[0].W(), w_expected) == 0.0);

    // Degenerate disorder weight is refused.
    MaxwellProblem bad = p;
    bad.layers[0].mu1 = Matrix::Zero(3, 3);
    CHECK_THROWS_AS(assemble(bad), DegenerateW);
}

TEST_CASE("lossy mode splits complex tensors and validates positivity") {
    MaxwellProblem p;
    p.period = 1.0;
    p.mode = MaxwellMode::Lossy;
    p.omega = 1.5;
    MaxwellProblem::LayerSpec l;
    l.thickness = 1.0;
    const Complex i(0.0, 1.0);
    l.eps_complex = (2.0 + 0.3 * i) * Matrix::Identity(3, 3);
    l.mu_complex = (1.0 + 0.1 * i) * Matrix::Identity(3, 3);
    p.layers = {l};
    const MaxwellAssembly built = assemble(p);

    Matrix h_expected = Matrix::Zero(6, 6);
    h_expected.topLeftCorner(3, 3) = -1.5 * 2.0 * Matrix::Identity(3, 3);
    h_expected.bottomRightCorner(3, 3) = -1.5 * 1.0 * Matrix::Identity(3, 3);
    CHECK(max_abs_diff(built.coeffs.layers()[0].H(), h_expected) <= 1e-15);

    Matrix w_expected = Matrix::Zero(6, 6);
    w_expected.topLeftCorner(3, 3) = 1.5 * 0.3 * Matrix::Identity(3, 3);
    w_expected.bottomRightCorner(3, 3) = 1.5 * 0.1 * Matrix::Identity(3, 3);
    CHECK(max_abs_diff(built.coeffs.layers()[0].W(), w_expected) <= 1e-15);

    // A lossless layer (real tensors) has Im parts zero: refused.
    MaxwellProblem lossless = p;
    lossless.layers[0].eps_complex = 2.0 * Matrix::Identity(3, 3);
    lossless.layers[0].mu_complex = Matrix::Identity(3, 3);
    CHECK_THROWS_AS(assemble(lossless), DegenerateW);

    // band_structure is only defined for the eigenfrequency mode.
    CHECK_THROWS_AS(band_structure(p, 0.1, 1.0, 5), InvalidMode);
}

TEST_CASE("light line marker tracks the transverse wavenumber") {
    MaxwellProblem p = two_layer(1.0, 2.0, 0.5, 0.5);
    p.k1 = 1.5;
    const MaxwellBands mb = band_structure(p, 0.5, 2.5, 5);
    for (size_t i = 0; i < mb.scan.grid.size(); ++i)
        CHECK(mb.above_light_line[i] == (mb.scan.grid[i] >= 1.5));
}
