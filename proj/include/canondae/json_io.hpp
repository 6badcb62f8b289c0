#pragma once

#include <string>

#include <json.hpp>

#include "canondae/hypotheses.hpp"
#include "canondae/maxwell.hpp"

namespace canondae::io {

using nlohmann::json;

// Complex scalars are [re, im] pairs; a bare number is accepted as a real.
Complex parse_complex(const json& j);
json complex_json(Complex z);

Matrix parse_matrix(const json& j, const std::string& name);
json matrix_json(const Matrix& m);

Vector parse_vector(const json& j, const std::string& name);
json vector_json(const Vector& v);

/// Stack file: { "period": d, "n": n, "layers": [ { "thickness": t,
/// "H": [[...]], "W": [[...]] } ], "J": [[...]] }. "J" is optional; loaders
/// that need the derivative coefficient require it.
struct StackData {
    double period = 0.0;
    Matrix J;  // 0x0 when the file has no "J"
    std::vector<Layer> layers;

    bool has_J() const { return J.rows() > 0; }
    LayeredCoefficients coefficients() const {
        return LayeredCoefficients(period, layers);
    }
};

StackData load_stack(const std::string& path);
StackData parse_stack(const json& j);

/// Materials file: { "period": d, "mode": "eigenfrequency", "layers":
/// [ { "thickness": t, "eps": 3x3, "mu": 3x3, "xi": 3x3 } ] }. Disorder mode
/// layers use eps0/eps1/mu0/mu1 and a top-level "omega"; lossy mode layers
/// use complex eps/mu with a top-level "omega".
MaxwellProblem load_materials(const std::string& path, double k1, double k2);

Vector load_vector_file(const std::string& path);

json index1_json(const Index1Report& r);
json certificate_json(const SelfAdjointCertificate& c);
json point_spectrum_json(const PointSpectrumFinding& f);
json monodromy_json(const Monodromy& m, const FloquetSet& fs);

/// Round-trip-safe decimal formatting (17 significant digits, '.' decimal).
std::string fmt(double x);

}  // namespace canondae::io
