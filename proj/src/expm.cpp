#include "canondae/expm.hpp"

#include <cmath>

namespace canondae {

// Pade-13 scaling and squaring (Higham 2005). theta_13 is the largest norm for
// which the degree-13 approximant meets double-precision accuracy unscaled.
Matrix expm(const Matrix& a) {
    if (a.rows() != a.cols()) throw ShapeMismatch("expm requires a square matrix");
    if (!a.allFinite()) throw NonFiniteGenerator("expm input has non-finite entries");
    const Eigen::Index n = a.rows();
    if (n == 0) return Matrix(0, 0);

    static const double b[] = {64764752532480000.0, 32382376266240000.0,
                               7771770303897600.0,  1187353796428800.0,
                               129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,
                               1323241920.0,        40840800.0,
                               960960.0,            16380.0,
                               182.0,               1.0};
    const double theta13 = 5.371920351148152;

    const double nrm = spectral_norm(a);
    int s = 0;
    Matrix A = a;
    if (nrm > theta13) {
        s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
        A /= std::pow(2.0, s);
    }

    const Matrix I = Matrix::Identity(n, n);
    const Matrix A2 = A * A;
    const Matrix A4 = A2 * A2;
    const Matrix A6 = A4 * A2;

    const Matrix U =
        A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 +
             b[3] * A2 + b[1] * I);
    const Matrix V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 +
                     b[4] * A4 + b[2] * A2 + b[0] * I;

    Matrix F = (V - U).partialPivLu().solve(V + U);
    for (int i = 0; i < s; ++i) F = F * F;
    return F;
}

}  // namespace canondae
