#include "canondae/reduction.hpp"

#include <cmath>

namespace canondae {

Matrix schur_complement(const Matrix& A11, const Matrix& A12, const Matrix& A21,
                        const Matrix& A22, int which, double tol_sing) {
    if (which == 22) {
        if (A22.rows() == 0) return A11;
        const auto sr = singular_range(A22);
        if (!(sr.smax > 0.0 && sr.smin > tol_sing * sr.smax))
            throw SingularBlock("22-block singular", sr.smin);
        return A11 - A12 * A22.partialPivLu().solve(A21);
    }
    if (which == 11) {
        if (A11.rows() == 0) return A22;
        const auto sr = singular_range(A11);
        if (!(sr.smax > 0.0 && sr.smin > tol_sing * sr.smax))
            throw SingularBlock("11-block singular", sr.smin);
        return A22 - A21 * A11.partialPivLu().solve(A12);
    }
    throw InvalidMode("which must be 11 or 22");
}

double ReducedGenerator::layer_start(int k) const {
    double s = 0.0;
    for (int j = 0; j < k; ++j) s += layers[j].thickness;
    return s;
}

int ReducedGenerator::layer_at(double t) const {
    double loc = std::fmod(t, period);
    if (loc < 0.0) loc += period;
    double s = 0.0;
    for (int k = 0; k < static_cast<int>(layers.size()); ++k) {
        s += layers[k].thickness;
        if (loc < s) return k;
    }
    return 0;  // t == period wraps
}

ReducedGenerator reduce(const BlockPencil& pencil, const CanonicalSplitting& splitting,
                        double tol_sing) {
    ReducedGenerator gen;
    gen.lambda = pencil.z;
    gen.period = pencil.period;
    gen.n1 = pencil.n1;
    gen.n2 = pencil.n2;
    gen.J11 = splitting.J11;
    const Matrix J11inv = splitting.J11.partialPivLu().inverse();

    for (int k = 0; k < static_cast<int>(pencil.layers.size()); ++k) {
        const auto& b = pencil.layers[k];
        ReducedGenerator::LayerData ld;
        ld.thickness = b.thickness;
        if (pencil.n2 > 0) {
            const auto sr = singular_range(b.A22);
            if (!(sr.smax > 0.0 && sr.smin > tol_sing * sr.smax))
                throw SingularA22(k, pencil.z);
            ld.A22inv = b.A22.partialPivLu().inverse();
            ld.K = b.A12 * ld.A22inv;
            ld.S = b.A11 - ld.K * b.A21;
            ld.R = -ld.A22inv * b.A21;
        } else {
            ld.A22inv = Matrix(0, 0);
            ld.K = Matrix(pencil.n1, 0);
            ld.S = b.A11;
            ld.R = Matrix(0, pencil.n1);
        }
        ld.A = -J11inv * ld.S;
        ld.W11 = b.W11;
        ld.W12 = b.W12;
        ld.W21 = b.W21;
        ld.W22 = b.W22;
        gen.layers.push_back(std::move(ld));
    }
    return gen;
}

std::vector<Vector> recover_normal(const ReducedGenerator& gen,
                                   const std::vector<double>& t,
                                   const std::vector<Vector>& f1,
                                   const std::vector<Vector>& wg2) {
    if (t.size() != f1.size() || (!wg2.empty() && wg2.size() != t.size()))
        throw GridMisaligned("trajectory sample counts differ");
    std::vector<Vector> f2;
    f2.reserve(t.size());
    for (size_t i = 0; i < t.size(); ++i) {
        const auto& ld = gen.layers[gen.layer_at(t[i])];
        Vector v = ld.R * f1[i];
        if (!wg2.empty()) v += ld.A22inv * wg2[i];
        f2.push_back(std::move(v));
    }
    return f2;
}

}  // namespace canondae
