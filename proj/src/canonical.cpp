#include "canondae/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

namespace canondae {

namespace {

// Multiply the column by a unimodular scalar so its first significant entry is
// real positive. Keeps the basis choice reproducible across runs.
void normalize_phase(Eigen::Ref<Vector> v) {
    const double scale = v.cwiseAbs().maxCoeff();
    if (scale == 0.0) return;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-8 * scale) {
            v *= std::conj(v(i)) / std::abs(v(i));
            return;
        }
    }
}

bool lex_less(const Vector& a, const Vector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
        if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
    }
    return false;
}

}  // namespace

SkewHermitian::SkewHermitian(Matrix entries, double tol_struct)
    : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
        throw ShapeMismatch("J must be square and nonempty");
    const double defect = (entries_.adjoint() + entries_).cwiseAbs().maxCoeff();
    if (defect > tol_struct)
        throw RejectsNonSkew("J* != -J (max defect " + std::to_string(defect) + ")");
    if (entries_.cwiseAbs().maxCoeff() <= tol_struct)
        throw RejectsZero("J = 0");
}

CanonicalSplitting build_splitting(const SkewHermitian& J, double tol_struct) {
    const int n = J.dim();
    const Matrix K = Complex(0, 1) * J.entries();  // iJ is Hermitian

    Eigen::SelfAdjointEigenSolver<Matrix> es(K);
    const Eigen::VectorXd evals = es.eigenvalues();
    Matrix evecs = es.eigenvectors();
    for (int j = 0; j < n; ++j) normalize_phase(evecs.col(j));

    const double sigma_max = evals.cwiseAbs().maxCoeff();
    const double thr = n * tol_struct * sigma_max;

    std::vector<int> ran_idx, ker_idx;
    for (int j = 0; j < n; ++j)
        (std::abs(evals(j)) > thr ? ran_idx : ker_idx).push_back(j);

    CanonicalSplitting sp;
    sp.n1 = static_cast<int>(ran_idx.size());
    sp.n2 = n - sp.n1;

    if (sp.n2 == 0) {
        sp.V = Matrix::Identity(n, n);
        sp.J11 = J.entries();
        sp.Jplus = J.entries().inverse();
        sp.P = Matrix::Identity(n, n);
        return sp;
    }

    std::sort(ran_idx.begin(), ran_idx.end(), [&](int a, int b) {
        const double ma = std::abs(evals(a)), mb = std::abs(evals(b));
        if (ma != mb) return ma > mb;
        return lex_less(evecs.col(a), evecs.col(b));
    });
    std::sort(ker_idx.begin(), ker_idx.end(),
              [&](int a, int b) { return lex_less(evecs.col(a), evecs.col(b)); });

    sp.V.resize(n, n);
    int c = 0;
    for (int j : ran_idx) sp.V.col(c++) = evecs.col(j);
    for (int j : ker_idx) sp.V.col(c++) = evecs.col(j);

    const Matrix blocked = sp.V.adjoint() * J.entries() * sp.V;
    sp.J11 = blocked.topLeftCorner(sp.n1, sp.n1);

    Matrix inner = Matrix::Zero(n, n);
    inner.topLeftCorner(sp.n1, sp.n1) = sp.J11.inverse();
    sp.Jplus = sp.V * inner * sp.V.adjoint();
    sp.P = sp.Jplus * J.entries();
    // Symmetrize round-off: P is Hermitian by construction of V.
    sp.P = (sp.P + sp.P.adjoint().eval()) / 2.0;
    return sp;
}

CanonicalSplitting splitting_from_unitary(const SkewHermitian& J, const Matrix& V,
                                          double tol_struct) {
    const int n = J.dim();
    if (V.rows() != n || V.cols() != n) throw ShapeMismatch("V has wrong shape");
    const double udef = (V.adjoint() * V - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (udef > 10 * n * tol_struct)
        throw ShapeMismatch("V is not unitary (defect " + std::to_string(udef) + ")");

    const Matrix blocked = V.adjoint() * J.entries() * V;
    // n1 = number of leading rows/cols carrying the invertible block.
    Eigen::JacobiSVD<Matrix> svd(J.entries());
    const auto& s = svd.singularValues();
    int n1 = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > n * tol_struct * s(0)) ++n1;

    CanonicalSplitting sp;
    sp.V = V;
    sp.n1 = n1;
    sp.n2 = n - n1;
    sp.J11 = blocked.topLeftCorner(n1, n1);
    const double offdef =
        std::max({blocked.topRightCorner(n1, n - n1).cwiseAbs().maxCoeff(),
                  blocked.bottomLeftCorner(n - n1, n1).cwiseAbs().maxCoeff(),
                  blocked.bottomRightCorner(n - n1, n - n1).cwiseAbs().maxCoeff()});
    if (sp.n2 > 0 && offdef > 10 * n * tol_struct)
        throw ShapeMismatch("V does not block-diagonalize J");
    if (!is_invertible(sp.J11)) throw ShapeMismatch("J11 block is singular under V");

    Matrix inner = Matrix::Zero(n, n);
    inner.topLeftCorner(n1, n1) = sp.J11.inverse();
    sp.Jplus = sp.V * inner * sp.V.adjoint();
    sp.P = sp.Jplus * J.entries();
    sp.P = (sp.P + sp.P.adjoint().eval()) / 2.0;
    return sp;
}

Matrix pseudoinverse(const SkewHermitian& J, double tol_struct) {
    return build_splitting(J, tol_struct).Jplus;
}

std::pair<Vector, Vector> project_tangential(const CanonicalSplitting& splitting,
                                             const Vector& f) {
    if (f.size() != splitting.V.rows()) throw ShapeMismatch("vector has wrong length");
    const Vector w = splitting.V.adjoint() * f;
    return {w.head(splitting.n1), w.tail(splitting.n2)};
}

}  // namespace canondae
