#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "canondae/json_io.hpp"
#include "canondae/testing.hpp"

namespace {

using namespace canondae;
using io::fmt;
using io::json;

Complex parse_complex_flag(const std::string& s) {
    std::istringstream in(s);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re)) throw Error("bad complex flag, expected \"re,im\": " + s);
    if (in >> comma) {
        if (comma != ',' || !(in >> im))
            throw Error("bad complex flag, expected \"re,im\": " + s);
    }
    return Complex(re, im);
}

struct Options {
    std::string stack_path, materials_path, f0_path, out_path;
    std::string z0 = "0,1";
    std::string lambda = "0,0";
    std::string mode = "definition";
    double lmin = 0.0, lmax = 1.0;
    double t0 = 0.0, t1 = 1.0;
    double k1 = 0.0, k2 = 0.0;
    double lambda_real = 0.0;
    int num = 101;
    int samples = 16;
    int threads = 1;
    unsigned long long seed = 12345;
    double tol_struct = 1e-12;
    double tol_sing = 1e-10;
    double tol_circle = 1e-8;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct LoadedStack {
    LayeredCoefficients coeffs;
    CanonicalSplitting splitting;
};

LoadedStack load_with_splitting(const Options& opt) {
    const io::StackData s = io::load_stack(opt.stack_path);
    if (!s.has_J())
        throw Error("stack file must contain a \"J\" matrix for this command");
    SkewHermitian j(s.J, opt.tol_struct);
    return LoadedStack{s.coefficients(), build_splitting(j, opt.tol_struct)};
}

void write_band_csv(std::ostream& os, const BandScan& scan,
                    const std::vector<bool>* light_line) {
    os << "lambda,count";
    if (light_line) os << ",above_light_line";
    for (int i = 1; i <= scan.n1; ++i) os << ",k" << i;
    for (int i = 1; i <= scan.n1; ++i) os << ",abs_mu" << i;
    os << "\n";
    for (size_t i = 0; i < scan.grid.size(); ++i) {
        os << fmt(scan.grid[i]) << "," << scan.propagating[i];
        if (light_line) os << "," << ((*light_line)[i] ? 1 : 0);
        const FloquetSet& fs = scan.sets[i];
        for (int c = 0; c < scan.n1; ++c) {
            os << ",";
            if (c < static_cast<int>(fs.multipliers.size()) &&
                fs.bloch_wavenumbers[c])
                os << fmt(*fs.bloch_wavenumbers[c]);
        }
        for (int c = 0; c < scan.n1; ++c) {
            os << ",";
            if (c < static_cast<int>(fs.multipliers.size()))
                os << fmt(std::abs(fs.multipliers[c]));
        }
        os << "\n";
    }
    for (const auto& e : scan.edges)
        os << "# edge," << fmt(e.lambda) << "," << e.count_below << ","
           << e.count_above << "\n";
    for (double l : scan.flagged) os << "# flagged," << fmt(l) << "\n";
}

int cmd_validate(const Options& opt) {
    const io::StackData s = io::load_stack(opt.stack_path);
    const ValidationReport rep = validate(s.coefficients(), opt.tol_struct);
    json out;
    out["overall"] = rep.overall;
    json layers = json::array();
    for (const auto& l : rep.layers) {
        json lj;
        lj["hermiticity_defect_H"] = l.hermiticity_defect_H;
        lj["hermiticity_defect_W"] = l.hermiticity_defect_W;
        lj["min_eigenvalue_W"] = l.min_eigenvalue_W;
        lj["pass"] = l.pass;
        if (!l.pass && l.witness.size() > 0) lj["witness"] = io::vector_json(l.witness);
        layers.push_back(std::move(lj));
    }
    out["layers"] = std::move(layers);
    Output o(opt.out_path);
    o.stream() << out.dump(2) << "\n";
    if (!rep.overall) {
        std::cerr << out.dump() << "\n";
        return 2;
    }
    return 0;
}

int cmd_check(const Options& opt) {
    const LoadedStack ls = load_with_splitting(opt);
    const Index1Report rep =
        check_index1(ls.coeffs, ls.splitting, parse_complex_flag(opt.z0),
                     parse_index1_mode(opt.mode), opt.tol_sing);
    const json out = io::index1_json(rep);
    Output o(opt.out_path);
    o.stream() << out.dump(2) << "\n";
    if (!rep.overall) {
        std::cerr << out.dump() << "\n";
        return 2;
    }
    return 0;
}

int cmd_certify(const Options& opt) {
    const LoadedStack ls = load_with_splitting(opt);
    const SelfAdjointCertificate cert = certify_self_adjoint(
        ls.coeffs, ls.splitting, parse_complex_flag(opt.z0), opt.tol_sing);
    const json out = io::certificate_json(cert);
    Output o(opt.out_path);
    o.stream() << out.dump(2) << "\n";
    if (!cert.self_adjoint) {
        std::cerr << out.dump() << "\n";
        return 2;
    }
    return 0;
}

int cmd_monodromy(const Options& opt) {
    const LoadedStack ls = load_with_splitting(opt);
    const Complex z = parse_complex_flag(opt.lambda);
    const ReducedGenerator gen =
        reduce(shift_pencil(ls.coeffs, ls.splitting, z), ls.splitting, opt.tol_sing);
    const Monodromy m = monodromy(gen);
    const FloquetSet fs = floquet(m, opt.tol_circle);
    Output o(opt.out_path);
    o.stream() << io::monodromy_json(m, fs).dump(2) << "\n";
    return 0;
}

int cmd_ivp(const Options& opt) {
    const LoadedStack ls = load_with_splitting(opt);
    const Vector f0 = io::load_vector_file(opt.f0_path);
    const Complex z = parse_complex_flag(opt.lambda);
    const IvpSolution sol =
        solve_ivp(ls.coeffs, ls.splitting, z, nullptr, opt.t0, opt.t1, f0,
                  opt.samples, opt.tol_sing);
    Output o(opt.out_path);
    std::ostream& os = o.stream();
    os << "t";
    for (int c = 1; c <= ls.coeffs.dim(); ++c) os << ",re_f" << c << ",im_f" << c;
    os << "\n";
    for (size_t i = 0; i < sol.t.size(); ++i) {
        os << fmt(sol.t[i]);
        for (Eigen::Index c = 0; c < sol.f[i].size(); ++c)
            os << "," << fmt(sol.f[i](c).real()) << "," << fmt(sol.f[i](c).imag());
        os << "\n";
    }
    return 0;
}

int cmd_bands(const Options& opt) {
    const LoadedStack ls = load_with_splitting(opt);
    const BandScan scan = band_scan(ls.coeffs, ls.splitting, opt.lmin, opt.lmax,
                                    opt.num, opt.tol_circle, opt.tol_sing,
                                    opt.threads);
    Output o(opt.out_path);
    write_band_csv(o.stream(), scan, nullptr);
    return 0;
}

int cmd_pointspec(const Options& opt) {
    const LoadedStack ls = load_with_splitting(opt);
    const PointSpectrumFinding f =
        point_spectrum(ls.coeffs, ls.splitting, opt.lambda_real);
    Output o(opt.out_path);
    o.stream() << io::point_spectrum_json(f).dump(2) << "\n";
    return 0;
}

int cmd_maxwell_bands(const Options& opt) {
    MaxwellProblem problem = io::load_materials(opt.materials_path, opt.k1, opt.k2);
    const MaxwellBands mb =
        band_structure(problem, opt.lmin, opt.lmax, opt.num, opt.tol_circle,
                       opt.tol_sing, opt.threads);
    Output o(opt.out_path);
    write_band_csv(o.stream(), mb.scan, &mb.above_light_line);
    return 0;
}

int cmd_selftest(const Options& opt) {
    testing::Rng rng(opt.seed);
    std::uniform_int_distribution<int> size_dist(2, 8);
    int failures = 0;
    auto report = [&](const char* name, bool ok) {
        std::cout << (ok ? "ok   - " : "FAIL - ") << name << "\n";
        if (!ok) ++failures;
    };

    // Moore-Penrose identities on random rank-deficient skew-Hermitian J.
    {
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const int n = size_dist(rng);
            std::uniform_int_distribution<int> rank_dist(1, n);
            const Matrix j =
                testing::random_skew_hermitian(rng, n, rank_dist(rng));
            SkewHermitian sj(j);
            const Matrix jp = pseudoinverse(sj);
            worst = std::max(worst, (j * jp * j - j).cwiseAbs().maxCoeff());
            worst = std::max(worst, (jp * j * jp - jp).cwiseAbs().maxCoeff());
            worst = std::max(worst,
                             ((jp * j) - (jp * j).adjoint()).cwiseAbs().maxCoeff());
            worst = std::max(worst,
                             ((j * jp) - (j * jp).adjoint()).cwiseAbs().maxCoeff());
        }
        report("pseudoinverse identities", worst <= 1e-10);
    }

    // Monodromy symmetry and multiplier reciprocity on random stacks.
    {
        bool ok = true;
        for (int trial = 0; trial < 20 && ok; ++trial) {
            const int n = size_dist(rng);
            std::uniform_int_distribution<int> rank_dist(1, n);
            const int rank = rank_dist(rng);
            SkewHermitian j(testing::random_skew_hermitian(rng, n, rank));
            const CanonicalSplitting sp = build_splitting(j);
            const LayeredCoefficients coeffs = testing::random_stack(rng, n, 3);
            for (double lam : {-1.3, 0.4, 2.7}) {
                Monodromy m;
                try {
                    m = monodromy(reduce(shift_pencil(coeffs, sp, lam), sp));
                } catch (const SingularA22&) {
                    continue;
                }
                const double defect =
                    (m.M.adjoint() * sp.J11 * m.M - sp.J11).cwiseAbs().maxCoeff();
                if (defect > 1e-9) ok = false;
                FloquetSet fs = floquet(m);
                for (const Complex& mu : fs.multipliers) {
                    const Complex mirror = 1.0 / std::conj(mu);
                    double best = 1e100;
                    for (const Complex& nu : fs.multipliers)
                        best = std::min(best, std::abs(nu - mirror));
                    if (best > 1e-6 * std::max(1.0, std::abs(mirror))) ok = false;
                }
            }
        }
        report("monodromy J11-symmetry and multiplier reciprocity", ok);
    }

    // Scalar reference solution for the 2x2 rank-1 stack.
    {
        Matrix j = Matrix::Zero(2, 2);
        j(0, 0) = Complex(0.0, 1.0);
        SkewHermitian sj(j);
        const CanonicalSplitting sp = build_splitting(sj);
        std::vector<Layer> layers;
        layers.emplace_back(1.0, Matrix::Zero(2, 2), Matrix::Identity(2, 2));
        const LayeredCoefficients coeffs(1.0, std::move(layers));
        bool ok = true;
        for (double lam : {0.3, 1.0, -2.2}) {
            const Monodromy m =
                monodromy(reduce(shift_pencil(coeffs, sp, lam), sp));
            const Complex expected = std::exp(Complex(0.0, -lam));
            if (std::abs(m.M(0, 0) - expected) > 1e-12) ok = false;
        }
        report("scalar monodromy reference", ok);
    }

    std::cout << (failures == 0 ? "selftest passed" : "selftest FAILED") << "\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"canondae: periodic canonical DAE solver and band analyzer"};
    app.require_subcommand(1);

    Options opt;
    if (const char* env = std::getenv("CANONDAE_TOL_CIRCLE"))
        opt.tol_circle = std::atof(env);

    app.add_option("--tol-struct", opt.tol_struct, "structural tolerance");
    app.add_option("--tol-sing", opt.tol_sing, "singularity tolerance");
    app.add_option("--tol-circle", opt.tol_circle, "unit-circle tolerance");
    app.add_option("--threads", opt.threads, "scan parallelism cap");
    app.add_option("--out", opt.out_path, "output file (default stdout)");

    auto add_stack = [&](CLI::App* c) {
        c->add_option("--stack", opt.stack_path, "stack JSON file")->required();
    };

    CLI::App* validate_cmd = app.add_subcommand("validate", "validate stack coefficients");
    add_stack(validate_cmd);

    CLI::App* check_cmd = app.add_subcommand("check", "check local index-1 hypotheses");
    add_stack(check_cmd);
    check_cmd->add_option("--z0", opt.z0, "shift as \"re,im\"");
    check_cmd->add_option("--mode", opt.mode,
                          "definition|simplified|pencil|sufficient");

    CLI::App* certify_cmd = app.add_subcommand("certify", "self-adjointness certificate");
    add_stack(certify_cmd);
    certify_cmd->add_option("--z0", opt.z0, "nonreal shift as \"re,im\"");

    CLI::App* mono_cmd = app.add_subcommand("monodromy", "monodromy matrix and multipliers");
    add_stack(mono_cmd);
    mono_cmd->add_option("--lambda", opt.lambda, "spectral parameter \"re,im\"");

    CLI::App* ivp_cmd = app.add_subcommand("ivp", "solve the initial value problem");
    add_stack(ivp_cmd);
    ivp_cmd->add_option("--lambda", opt.lambda, "spectral parameter \"re,im\"");
    ivp_cmd->add_option("--t0", opt.t0, "start time")->required();
    ivp_cmd->add_option("--t1", opt.t1, "end time")->required();
    ivp_cmd->add_option("--f0", opt.f0_path, "initial vector JSON file")->required();
    ivp_cmd->add_option("--samples", opt.samples, "samples per layer");

    CLI::App* bands_cmd = app.add_subcommand("bands", "band scan over real lambda");
    add_stack(bands_cmd);
    bands_cmd->add_option("--lmin", opt.lmin, "lambda range start")->required();
    bands_cmd->add_option("--lmax", opt.lmax, "lambda range end")->required();
    bands_cmd->add_option("--num", opt.num, "grid points");
    bands_cmd->add_option("--k1", opt.k1, "reserved transverse wavenumber");
    bands_cmd->add_option("--k2", opt.k2, "reserved transverse wavenumber");

    CLI::App* ps_cmd = app.add_subcommand("pointspec", "point-spectrum certificate");
    add_stack(ps_cmd);
    ps_cmd->add_option("--lambda", opt.lambda_real, "real lambda")->required();

    CLI::App* mx_cmd = app.add_subcommand("maxwell-bands", "photonic crystal dispersion");
    mx_cmd->add_option("--materials", opt.materials_path, "materials JSON file")
        ->required();
    mx_cmd->add_option("--k1", opt.k1, "transverse wavenumber k1");
    mx_cmd->add_option("--k2", opt.k2, "transverse wavenumber k2");
    mx_cmd->add_option("--wmin", opt.lmin, "omega range start")->required();
    mx_cmd->add_option("--wmax", opt.lmax, "omega range end")->required();
    mx_cmd->add_option("--num", opt.num, "grid points");

    CLI::App* st_cmd = app.add_subcommand("selftest", "run the invariant suite");
    st_cmd->add_option("--seed", opt.seed, "random seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) return cmd_validate(opt);
        if (check_cmd->parsed()) return cmd_check(opt);
        if (certify_cmd->parsed()) return cmd_certify(opt);
        if (mono_cmd->parsed()) return cmd_monodromy(opt);
        if (ivp_cmd->parsed()) return cmd_ivp(opt);
        if (bands_cmd->parsed()) return cmd_bands(opt);
        if (ps_cmd->parsed()) return cmd_pointspec(opt);
        if (mx_cmd->parsed()) return cmd_maxwell_bands(opt);
        if (st_cmd->parsed()) return cmd_selftest(opt);
    } catch (const canondae::Error& e) {
        canondae::io::json diag;
        diag["error"] = "validation";
        diag["message"] = e.what();
        std::cerr << diag.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
