#include "canondae/types.hpp"

#include <Eigen/SVD>

namespace canondae {

SingularRange singular_range(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return {0.0, 0.0};
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto& s = svd.singularValues();
    return {s(0), s(s.size() - 1)};
}

bool is_invertible(const Matrix& a, double tol_sing) {
    if (a.rows() != a.cols()) return false;
    if (a.rows() == 0) return true;  // empty matrix acts as identity on {0}
    auto sr = singular_range(a);
    return sr.smax > 0.0 && sr.smin > tol_sing * sr.smax;
}

double spectral_norm(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    return singular_range(a).smax;
}

bool matrix_is_finite(const Matrix& a) {
    return a.allFinite();
}

}  // namespace canondae
