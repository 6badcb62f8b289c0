#include "canondae/maxwell.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace canondae {

namespace {

const Complex kI(0.0, 1.0);

bool hermitian_within(const Matrix& a, double tol) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, a.cwiseAbs().maxCoeff());
}

double min_eigenvalue_hermitian(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    return es.eigenvalues().minCoeff();
}

Matrix hermitian_part(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

Matrix antihermitian_part_over_i(const Matrix& a) {
    return (a - a.adjoint()) / (2.0 * kI);
}

void require_3x3(const Matrix& a, const char* name) {
    if (a.rows() != 3 || a.cols() != 3)
        throw InvalidTensor(std::string(name) + " must be 3x3");
}

Matrix blkdiag6(const Matrix& top, const Matrix& bottom) {
    Matrix m = Matrix::Zero(6, 6);
    m.topLeftCorner(3, 3) = top;
    m.bottomRightCorner(3, 3) = bottom;
    return m;
}

}  // namespace

Matrix MaterialTensor::assembled() const {
    Matrix m(6, 6);
    m.topLeftCorner(3, 3) = eps;
    m.topRightCorner(3, 3) = xi;
    m.bottomLeftCorner(3, 3) = zeta();
    m.bottomRightCorner(3, 3) = mu;
    return m;
}

void MaterialTensor::validate(double tol_struct) const {
    require_3x3(eps, "eps");
    require_3x3(xi, "xi");
    require_3x3(mu, "mu");
    if (!hermitian_within(eps, tol_struct) || !hermitian_within(mu, tol_struct))
        throw InvalidTensor("eps and mu must be Hermitian");
    const Matrix m = assembled();
    if (min_eigenvalue_hermitian(m) <= 0.0)
        throw DegenerateW("constitutive tensor M is not positive definite");
}

MaterialTensor MaterialTensor::isotropic(double n_refractive) {
    MaterialTensor t;
    t.eps = n_refractive * n_refractive * Matrix::Identity(3, 3);
    t.xi = Matrix::Zero(3, 3);
    t.mu = Matrix::Identity(3, 3);
    return t;
}

MaxwellMode parse_maxwell_mode(const std::string& s) {
    if (s == "eigenfrequency") return MaxwellMode::Eigenfrequency;
    if (s == "disorder") return MaxwellMode::Disorder;
    if (s == "lossy") return MaxwellMode::Lossy;
    throw InvalidMode("unknown maxwell mode: " + s);
}

std::string to_string(MaxwellMode mode) {
    switch (mode) {
        case MaxwellMode::Eigenfrequency: return "eigenfrequency";
        case MaxwellMode::Disorder: return "disorder";
        case MaxwellMode::Lossy: return "lossy";
    }
    return "?";
}

Matrix maxwell_J() {
    Matrix e3x = Matrix::Zero(3, 3);
    e3x(0, 1) = -1.0;
    e3x(1, 0) = 1.0;
    Matrix j = Matrix::Zero(6, 6);
    j.topRightCorner(3, 3) = -e3x / kI;
    j.bottomLeftCorner(3, 3) = e3x / kI;
    return j;
}

Matrix maxwell_V() {
    Matrix v = Matrix::Zero(6, 6);
    v(0, 0) = 1.0;
    v(1, 1) = 1.0;
    v(2, 4) = 1.0;
    v(3, 2) = 1.0;
    v(4, 3) = 1.0;
    v(5, 5) = 1.0;
    return v;
}

Matrix kperp_block(double k1, double k2) {
    Matrix kx = Matrix::Zero(3, 3);
    kx(0, 2) = k2;
    kx(1, 2) = -k1;
    kx(2, 0) = -k2;
    kx(2, 1) = k1;
    Matrix h = Matrix::Zero(6, 6);
    h.topRightCorner(3, 3) = kx;
    h.bottomLeftCorner(3, 3) = -kx;
    return h;
}

MaxwellAssembly assemble(const MaxwellProblem& problem, double tol_struct) {
    if (problem.layers.empty()) throw InvalidTensor("problem has no layers");
    double total = 0.0;
    for (const auto& l : problem.layers) {
        if (l.thickness <= 0.0) throw RangeInvalid("layer thickness must be positive");
        total += l.thickness;
    }
    if (std::abs(total - problem.period) > tol_struct * std::max(1.0, problem.period))
        throw RangeInvalid("layer thicknesses must sum to the period");
    if (problem.mode != MaxwellMode::Eigenfrequency && problem.omega <= 0.0)
        throw RangeInvalid("disorder/lossy modes require omega > 0");

    const Matrix kblock = kperp_block(problem.k1, problem.k2);
    std::vector<Layer> layers;
    for (const auto& l : problem.layers) {
        Matrix h, w;
        switch (problem.mode) {
            case MaxwellMode::Eigenfrequency: {
                l.material.validate(tol_struct);
                h = kblock;
                w = l.material.assembled();
                break;
            }
            case MaxwellMode::Disorder: {
                require_3x3(l.eps0, "eps0");
                require_3x3(l.eps1, "eps1");
                require_3x3(l.mu0, "mu0");
                require_3x3(l.mu1, "mu1");
                if (!hermitian_within(l.eps0, tol_struct) ||
                    !hermitian_within(l.mu0, tol_struct) ||
                    !hermitian_within(l.eps1, tol_struct) ||
                    !hermitian_within(l.mu1, tol_struct))
                    throw InvalidTensor("disorder tensors must be Hermitian");
                h = kblock - problem.omega * blkdiag6(l.eps0, l.mu0);
                w = problem.omega * blkdiag6(l.eps1, l.mu1);
                if (min_eigenvalue_hermitian(w) <= 0.0)
                    throw DegenerateW(
                        "disorder weight blkdiag(eps1, mu1) is not positive "
                        "definite; the framework requires W > 0 a.e.");
                break;
            }
            case MaxwellMode::Lossy: {
                require_3x3(l.eps_complex, "eps");
                require_3x3(l.mu_complex, "mu");
                const Matrix re_eps = hermitian_part(l.eps_complex);
                const Matrix re_mu = hermitian_part(l.mu_complex);
                const Matrix im_eps = antihermitian_part_over_i(l.eps_complex);
                const Matrix im_mu = antihermitian_part_over_i(l.mu_complex);
                h = kblock - problem.omega * blkdiag6(re_eps, re_mu);
                w = problem.omega * blkdiag6(im_eps, im_mu);
                if (min_eigenvalue_hermitian(w) <= 0.0)
                    throw DegenerateW(
                        "lossy weight blkdiag(Im eps, Im mu) is not positive "
                        "definite (e.g. a lossless layer); the framework "
                        "requires W > 0 a.e.");
                break;
            }
        }
        layers.emplace_back(l.thickness, std::move(h), std::move(w), tol_struct);
    }

    SkewHermitian j(maxwell_J(), tol_struct);
    CanonicalSplitting splitting = splitting_from_unitary(j, maxwell_V(), tol_struct);
    return MaxwellAssembly{std::move(j),
                           LayeredCoefficients(problem.period, std::move(layers)),
                           std::move(splitting)};
}

MaxwellBands band_structure(const MaxwellProblem& problem, double lambda_min,
                            double lambda_max, int num, double tol_circle,
                            double tol_sing, int threads) {
    if (problem.mode != MaxwellMode::Eigenfrequency)
        throw InvalidMode("band_structure requires eigenfrequency mode");
    const MaxwellAssembly built = assemble(problem);
    MaxwellBands out;
    out.scan = band_scan(built.coeffs, built.splitting, lambda_min, lambda_max,
                         num, tol_circle, tol_sing, threads);
    out.kperp_norm = std::hypot(problem.k1, problem.k2);
    for (double l : out.scan.grid)
        out.above_light_line.push_back(l >= out.kperp_norm);
    return out;
}

}  // namespace canondae
