#pragma once

#include <string>
#include <vector>

#include "canondae/coefficients.hpp"

namespace canondae {

enum class Index1Mode { Definition, Simplified, PencilEquivalent, Sufficient };

Index1Mode parse_index1_mode(const std::string& s);
std::string to_string(Index1Mode m);

/// Verdict of the local index-1 hypothesis check at one shift.
///
/// With piecewise-constant layers every integrability membership is a finite
/// per-layer matrix, so the substantive content is per-layer invertibility of
/// the designated block; the remaining conditions are recorded as trivially
/// satisfied for traceability.
struct Index1Report {
    Complex z0;
    Index1Mode mode = Index1Mode::Definition;
    struct Condition {
        std::string label;
        bool pass = true;
        int witness_layer = -1;            // layer where the condition fails
        double witness_smin = 0.0;         // smallest singular value there
        Matrix witness_block;              // the offending block
    };
    std::vector<Condition> conditions;
    bool overall = true;
};

Index1Report check_index1(const LayeredCoefficients& coeffs,
                          const CanonicalSplitting& splitting, Complex z0,
                          Index1Mode mode, double tol_sing = 1e-10);

/// Record of the self-adjointness conclusion for the maximal operator.
struct SelfAdjointCertificate {
    Complex z0;
    bool hermitian_H = false;
    Index1Report index1;            // definition-mode report at z0
    Index1Report sufficient;        // sufficient-mode report (simpler hypotheses)
    bool self_adjoint = false;
    bool essentially_self_adjoint_minimal = false;
    bool no_finite_multiplicity_eigenvalues = false;
};

/// Requires a nonreal shift; throws RealShiftRejected otherwise.
SelfAdjointCertificate certify_self_adjoint(const LayeredCoefficients& coeffs,
                                            const CanonicalSplitting& splitting,
                                            Complex z0 = Complex(0.0, 1.0),
                                            double tol_sing = 1e-10);

/// Consistency self-test: the check at z0 for H - z0 W agrees with the check
/// at conj(z0) for the adjoint pencil.
bool dual_pencil_consistency(const LayeredCoefficients& coeffs,
                             const CanonicalSplitting& splitting, Complex z0,
                             double tol_sing = 1e-10);

}  // namespace canondae
