#include "canondae/json_io.hpp"

#include <cstdio>
#include <fstream>

namespace canondae::io {

namespace {

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

}  // namespace

Complex parse_complex(const json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    throw Error("complex value must be a number or an [re, im] pair");
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Matrix parse_matrix(const json& j, const std::string& name) {
    if (!j.is_array() || j.empty())
        throw Error(name + " must be a non-empty nested array");
    const size_t rows = j.size();
    const size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) throw Error(name + " rows must be non-empty arrays");
    Matrix m(rows, cols);
    for (size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw Error(name + " rows have inconsistent lengths");
        for (size_t c = 0; c < cols; ++c) m(r, c) = parse_complex(j[r][c]);
    }
    return m;
}

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(complex_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Vector parse_vector(const json& j, const std::string& name) {
    if (!j.is_array() || j.empty()) throw Error(name + " must be a non-empty array");
    Vector v(j.size());
    for (size_t i = 0; i < j.size(); ++i) v(i) = parse_complex(j[i]);
    return v;
}

json vector_json(const Vector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_json(v(i)));
    return a;
}

StackData parse_stack(const json& j) {
    StackData s;
    s.period = j.at("period").get<double>();
    if (s.period <= 0.0) throw Error("period must be positive");
    const int n = j.contains("n") ? j.at("n").get<int>() : -1;
    for (const auto& lj : j.at("layers")) {
        const double t = lj.at("thickness").get<double>();
        Matrix h = parse_matrix(lj.at("H"), "H");
        Matrix w = parse_matrix(lj.at("W"), "W");
        if (n > 0 && (h.rows() != n || w.rows() != n))
            throw Error("layer matrices do not match declared dimension n");
        s.layers.emplace_back(t, std::move(h), std::move(w));
    }
    if (s.layers.empty()) throw Error("stack has no layers");
    if (j.contains("J")) {
        s.J = parse_matrix(j.at("J"), "J");
        if (n > 0 && s.J.rows() != n)
            throw Error("J does not match declared dimension n");
    }
    return s;
}

StackData load_stack(const std::string& path) { return parse_stack(read_file(path)); }

MaxwellProblem load_materials(const std::string& path, double k1, double k2) {
    const json j = read_file(path);
    MaxwellProblem p;
    p.period = j.at("period").get<double>();
    p.k1 = k1;
    p.k2 = k2;
    p.mode = parse_maxwell_mode(
        j.contains("mode") ? j.at("mode").get<std::string>() : "eigenfrequency");
    if (j.contains("omega")) p.omega = j.at("omega").get<double>();
    for (const auto& lj : j.at("layers")) {
        MaxwellProblem::LayerSpec spec;
        spec.thickness = lj.at("thickness").get<double>();
        switch (p.mode) {
            case MaxwellMode::Eigenfrequency:
                spec.material.eps = parse_matrix(lj.at("eps"), "eps");
                spec.material.mu = parse_matrix(lj.at("mu"), "mu");
                spec.material.xi = lj.contains("xi")
                                       ? parse_matrix(lj.at("xi"), "xi")
                                       : Matrix::Zero(3, 3);
                break;
            case MaxwellMode::Disorder:
                spec.eps0 = parse_matrix(lj.at("eps0"), "eps0");
                spec.eps1 = parse_matrix(lj.at("eps1"), "eps1");
                spec.mu0 = parse_matrix(lj.at("mu0"), "mu0");
                spec.mu1 = parse_matrix(lj.at("mu1"), "mu1");
                break;
            case MaxwellMode::Lossy:
                spec.eps_complex = parse_matrix(lj.at("eps"), "eps");
                spec.mu_complex = parse_matrix(lj.at("mu"), "mu");
                break;
        }
        p.layers.push_back(std::move(spec));
    }
    return p;
}

Vector load_vector_file(const std::string& path) {
    const json j = read_file(path);
    if (j.is_array()) return parse_vector(j, "f0");
    return parse_vector(j.at("f0"), "f0");
}

json index1_json(const Index1Report& r) {
    json out;
    out["z0"] = complex_json(r.z0);
    out["mode"] = to_string(r.mode);
    out["overall"] = r.overall;
    json conds = json::array();
    for (const auto& c : r.conditions) {
        json cj;
        cj["label"] = c.label;
        cj["pass"] = c.pass;
        if (!c.pass) {
            cj["witness_layer"] = c.witness_layer;
            cj["witness_smin"] = c.witness_smin;
            cj["witness_block"] = matrix_json(c.witness_block);
        }
        conds.push_back(std::move(cj));
    }
    out["conditions"] = std::move(conds);
    return out;
}

json certificate_json(const SelfAdjointCertificate& c) {
    json out;
    out["z0"] = complex_json(c.z0);
    out["hermitian_H"] = c.hermitian_H;
    out["index1"] = index1_json(c.index1);
    out["sufficient"] = index1_json(c.sufficient);
    out["self_adjoint"] = c.self_adjoint;
    out["essentially_self_adjoint_minimal"] = c.essentially_self_adjoint_minimal;
    out["no_finite_multiplicity_eigenvalues"] = c.no_finite_multiplicity_eigenvalues;
    return out;
}

json point_spectrum_json(const PointSpectrumFinding& f) {
    json out;
    out["lambda"] = f.lambda;
    out["layer_kernel_dims"] = f.layer_kernel_dims;
    out["certified"] = f.certified;
    out["verdict"] = f.certified
                         ? "infinite-multiplicity eigenvalue certified"
                         : "none found";
    if (f.certified) {
        out["witness_layer"] = f.witness_layer;
        out["witness_f2"] = vector_json(f.witness_f2);
    }
    return out;
}

json monodromy_json(const Monodromy& m, const FloquetSet& fs) {
    json out;
    out["lambda"] = complex_json(m.lambda);
    out["period"] = m.period;
    out["M"] = matrix_json(m.M);
    out["condition"] = m.condition;
    json mult = json::array();
    for (size_t i = 0; i < fs.multipliers.size(); ++i) {
        json mj;
        mj["mu"] = complex_json(fs.multipliers[i]);
        mj["abs"] = std::abs(fs.multipliers[i]);
        mj["on_circle"] = static_cast<bool>(fs.on_circle[i]);
        if (fs.bloch_wavenumbers[i])
            mj["bloch_k"] = *fs.bloch_wavenumbers[i];
        mult.push_back(std::move(mj));
    }
    out["multipliers"] = std::move(mult);
    return out;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace canondae::io
