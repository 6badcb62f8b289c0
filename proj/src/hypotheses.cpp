#include "canondae/hypotheses.hpp"

#include <Eigen/SVD>

namespace canondae {

Index1Mode parse_index1_mode(const std::string& s) {
    if (s == "definition") return Index1Mode::Definition;
    if (s == "simplified") return Index1Mode::Simplified;
    if (s == "pencil" || s == "pencil_equivalent") return Index1Mode::PencilEquivalent;
    if (s == "sufficient") return Index1Mode::Sufficient;
    throw InvalidMode("unknown mode: " + s);
}

std::string to_string(Index1Mode m) {
    switch (m) {
        case Index1Mode::Definition: return "definition";
        case Index1Mode::Simplified: return "simplified";
        case Index1Mode::PencilEquivalent: return "pencil_equivalent";
        case Index1Mode::Sufficient: return "sufficient";
    }
    return "?";
}

namespace {

// Per-layer invertibility of blocks[k], witnessed by the smallest singular value.
Index1Report::Condition invertibility_condition(const std::string& label,
                                                const std::vector<Matrix>& blocks,
                                                double tol_sing) {
    Index1Report::Condition c;
    c.label = label;
    for (int k = 0; k < static_cast<int>(blocks.size()); ++k) {
        const auto sr = singular_range(blocks[k]);
        if (!(sr.smax > 0.0 && sr.smin > tol_sing * sr.smax)) {
            c.pass = false;
            c.witness_layer = k;
            c.witness_smin = sr.smin;
            c.witness_block = blocks[k];
            return c;
        }
    }
    return c;
}

Index1Report::Condition trivial_condition(const std::string& label) {
    Index1Report::Condition c;
    c.label = label;
    c.pass = true;
    return c;
}

}  // namespace

Index1Report check_index1(const LayeredCoefficients& coeffs,
                          const CanonicalSplitting& splitting, Complex z0,
                          Index1Mode mode, double tol_sing) {
    Index1Report rep;
    rep.z0 = z0;
    rep.mode = mode;

    const BlockPencil pencil = shift_pencil(coeffs, splitting, z0);

    if (splitting.n2 == 0) {
        // det J != 0: the hypotheses only require local integrability of H and
        // W, automatic for piecewise-constant layers.
        rep.conditions.push_back(
            trivial_condition("H,W locally integrable (piecewise-constant)"));
        rep.overall = true;
        return rep;
    }

    std::vector<Matrix> a22, w22;
    a22.reserve(pencil.layers.size());
    for (const auto& l : pencil.layers) {
        a22.push_back(l.A22);
        w22.push_back(l.W22);
    }

    switch (mode) {
        case Index1Mode::Definition:
        case Index1Mode::Simplified: {
            auto inv = invertibility_condition(
                mode == Index1Mode::Definition
                    ? "(H-z0W)_22 invertible per layer"
                    : "(H-z0W)_22 invertible and weighted resolvent bounded per layer",
                a22, tol_sing);
            const bool ok = inv.pass;
            rep.conditions.push_back(std::move(inv));
            if (ok)
                rep.conditions.push_back(trivial_condition(
                    "Schur data and weighted blocks finite (piecewise-constant)"));
            break;
        }
        case Index1Mode::PencilEquivalent: {
            rep.conditions.push_back(
                trivial_condition("W_11 integrable over one period"));
            // (H - z0 W)_22 = H_22 - z0 W_22 entrywise, so the equivalent
            // conditions reduce to the same per-layer invertibility.
            rep.conditions.push_back(invertibility_condition(
                "H_22 - z0 W_22 invertible per layer", a22, tol_sing));
            break;
        }
        case Index1Mode::Sufficient: {
            auto inv = invertibility_condition("W_22 invertible per layer", w22,
                                               tol_sing);
            const bool ok = inv.pass;
            rep.conditions.push_back(std::move(inv));
            if (ok)
                rep.conditions.push_back(trivial_condition(
                    "H_11, W_11, H_12 W_22^{-1} H_21 integrable over one period"));
            break;
        }
    }

    rep.overall = true;
    for (const auto& c : rep.conditions) rep.overall = rep.overall && c.pass;
    return rep;
}

SelfAdjointCertificate certify_self_adjoint(const LayeredCoefficients& coeffs,
                                            const CanonicalSplitting& splitting,
                                            Complex z0, double tol_sing) {
    if (z0.imag() == 0.0)
        throw RealShiftRejected("self-adjointness requires a nonreal shift z0");

    SelfAdjointCertificate cert;
    cert.z0 = z0;
    const auto report = validate(coeffs);
    cert.hermitian_H = report.overall;
    cert.index1 = check_index1(coeffs, splitting, z0, Index1Mode::Definition, tol_sing);
    cert.sufficient =
        check_index1(coeffs, splitting, z0, Index1Mode::Sufficient, tol_sing);

    const bool ok = cert.hermitian_H && cert.index1.overall;
    cert.self_adjoint = ok;
    cert.essentially_self_adjoint_minimal = ok;
    cert.no_finite_multiplicity_eigenvalues = ok;
    return cert;
}

bool dual_pencil_consistency(const LayeredCoefficients& coeffs,
                             const CanonicalSplitting& splitting, Complex z0,
                             double tol_sing) {
    // (H - z0 W)* = H - conj(z0) W for Hermitian H, so the adjoint pencil is
    // checked at the conjugate shift on the same stack.
    const auto at_z0 =
        check_index1(coeffs, splitting, z0, Index1Mode::Definition, tol_sing);
    const auto at_conj = check_index1(coeffs, splitting, std::conj(z0),
                                      Index1Mode::Definition, tol_sing);
    return at_z0.overall == at_conj.overall;
}

}  // namespace canondae
