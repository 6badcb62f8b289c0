#include "canondae/reduction.hpp"
#include "test_util.hpp"

using namespace canondae;
using testutil::max_abs_diff;

TEST_CASE("schur_complement orientation and errors") {
    Matrix a11(1, 1), a12(1, 1), a21(1, 1), a22(1, 1);
    a11 << 4.0;
    a12 << 2.0;
    a21 << 3.0;
    a22 << 2.0;
    const Matrix s22 = schur_complement(a11, a12, a21, a22, 22, 1e-10);
    CHECK(std::abs(s22(0, 0) - Complex(1.0)) <= 1e-14);  // 4 - 2*3/2
    const Matrix s11 = schur_complement(a11, a12, a21, a22, 11, 1e-10);
    CHECK(std::abs(s11(0, 0) - Complex(0.5)) <= 1e-14);  // 2 - 3*2/4

    CHECK_THROWS_AS(
        schur_complement(a11, a12, a21, Matrix::Zero(1, 1), 22, 1e-10),
        SingularBlock);
    CHECK_THROWS_AS(schur_complement(a11, a12, a21, a22, 12, 1e-10), InvalidMode);
}

TEST_CASE("scalar example reduces to the generator -i*lambda") {
    const auto dae = testutil::ScalarDae::make();
    const double lambda = 1.7;
    const ReducedGenerator gen =
        reduce(shift_pencil(dae.coeffs, dae.splitting, lambda), dae.splitting);
    REQUIRE(gen.layers.size() == 1);
    CHECK(gen.n1 == 1);
    CHECK(gen.n2 == 1);
    // S = A11 (A12 = A21 = 0), A = -J11^{-1} S = -(1/i)(-lambda) = -i lambda.
    CHECK(std::abs(gen.layers[0].S(0, 0) - Complex(-lambda)) <= 1e-14);
    CHECK(std::abs(gen.layers[0].A(0, 0) - Complex(0.0, -lambda)) <= 1e-14);
    CHECK(gen.layers[0].R.cwiseAbs().maxCoeff() <= 1e-14);

    // The reduction is singular exactly at lambda = 0.
    CHECK_THROWS_AS(
        reduce(shift_pencil(dae.coeffs, dae.splitting, 0.0), dae.splitting),
        SingularA22);
    try {
        reduce(shift_pencil(dae.coeffs, dae.splitting, 0.0), dae.splitting);
    } catch (const SingularA22& e) {
        CHECK(e.layer == 0);
        CHECK(std::abs(e.lambda) == 0.0);
    }
}

TEST_CASE("invertible J reduces to the full ODE") {
    Matrix jm(2, 2);
    jm << 0.0, 1.0, -1.0, 0.0;
    SkewHermitian j(jm);
    const CanonicalSplitting sp = build_splitting(j);
    const auto dae = testutil::ScalarDae::make();
    const double lambda = 0.9;
    const ReducedGenerator gen =
        reduce(shift_pencil(dae.coeffs, sp, lambda), sp);
    CHECK(gen.n2 == 0);
    CHECK(max_abs_diff(gen.layers[0].S, -lambda * Matrix::Identity(2, 2)) <= 1e-14);
    const Matrix expected = -jm.inverse() * (-lambda * Matrix::Identity(2, 2));
    CHECK(max_abs_diff(gen.layers[0].A, expected) <= 1e-14);
}

TEST_CASE("reduced generator reproduces the eliminated block equations") {
    // For the homogeneous DAE the second block row reads
    // A21 f1 + A22 f2 = 0, so f2 = -A22^{-1} A21 f1 = R f1, and the first row
    // becomes J11 f1' + (A11 - A12 A22^{-1} A21) f1 = 0.
    testing::Rng rng(53);
    for (int trial = 0; trial < 25; ++trial) {
        const auto prob = testutil::RandomProblem::make(rng, 6, 4, 2);
        const Complex z(0.3, 0.9);
        const BlockPencil pencil = shift_pencil(prob.coeffs, prob.splitting, z);
        ReducedGenerator gen;
        try {
            gen = reduce(pencil, prob.splitting);
        } catch (const SingularA22&) {
            continue;
        }
        for (size_t k = 0; k < gen.layers.size(); ++k) {
            const auto& b = pencil.layers[k];
            const auto& ld = gen.layers[k];
            CHECK(max_abs_diff(b.A22 * ld.R, -b.A21) <= 1e-8);
            CHECK(max_abs_diff(ld.S, b.A11 + b.A12 * ld.R) <= 1e-8);
            CHECK(max_abs_diff(prob.splitting.J11 * ld.A, -ld.S) <= 1e-8);
            CHECK(max_abs_diff(ld.K * b.A22, b.A12) <= 1e-8);
        }
    }
}

TEST_CASE("Loewner ordering of the weight Schur complement") {
    // 0 <= W/W22 <= W11 for the blocks of the positive definite V^{-1}WV.
    testing::Rng rng(59);
    for (int trial = 0; trial < 25; ++trial) {
        const auto prob = testutil::RandomProblem::make(rng, 5, 3, 2);
        const BlockPencil pencil = shift_pencil(prob.coeffs, prob.splitting, 0.0);
        for (const auto& b : pencil.layers) {
            const Matrix schur =
                schur_complement(b.W11, b.W12, b.W21, b.W22, 22, 1e-12);
            Eigen::SelfAdjointEigenSolver<Matrix> lo(0.5 * (schur + schur.adjoint()));
            CHECK(lo.eigenvalues().minCoeff() >= -1e-10);
            const Matrix diff = b.W11 - schur;
            Eigen::SelfAdjointEigenSolver<Matrix> hi(0.5 * (diff + diff.adjoint()));
            CHECK(hi.eigenvalues().minCoeff() >= -1e-10);
        }
    }
}

TEST_CASE("recover_normal maps sampled tangential data") {
    const auto dae = testutil::ScalarDae::make();
    const double lambda = 1.0;
    const ReducedGenerator gen =
        reduce(shift_pencil(dae.coeffs, dae.splitting, lambda), dae.splitting);
    std::vector<double> t{0.0, 0.25, 0.5};
    std::vector<Vector> f1(3, Vector::Ones(1));
    const auto f2 = recover_normal(gen, t, f1);
    REQUIRE(f2.size() == 3);
    for (const auto& v : f2) CHECK(v.cwiseAbs().maxCoeff() <= 1e-14);

    std::vector<Vector> short_f1(2, Vector::Ones(1));
    CHECK_THROWS_AS(recover_normal(gen, t, short_f1), GridMisaligned);
}
