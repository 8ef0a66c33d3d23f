#include "cli.hpp"

#include "coulomb/errors.hpp"
#include "coulomb/json_io.hpp"
#include "coulomb/laplace.hpp"
#include "coulomb/oracle.hpp"
#include "coulomb/permeability.hpp"
#include "coulomb/spectral.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace coulomb::cli {
namespace {

using json_io::format12;
using json_io::json;
using json_io::to_json;

struct Options {
    double hbar = 1.0, mass = 1.0, kappa = 1.0;
    std::string format = "json";
    std::string out_path;
    double tol = 1e-5;

    std::string named, unitary, uparams, lambda;
    std::optional<double> theta;
    int dim = 0;  // 0: inferred
    double tau_max = 5.0;
    int n_max = 4;

    std::optional<double> energy, y;
    std::string x;
    int level = 1;
    int basis = 0;
    std::string potential, domain;
};

PhysParams params_of(const Options& o) {
    PhysParams p{o.hbar, o.mass, o.kappa};
    p.validate();
    return p;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw DomainError(std::string(what) + ": cannot parse '" + item + "' as a number");
        }
    }
    return out;
}

int dimension_of(const Options& o) {
    if (o.dim != 0) {
        if (o.dim < 1 || o.dim > 3) throw DomainError("--dim must be 1, 2 or 3");
        return o.dim;
    }
    if (!o.lambda.empty()) return 3;
    if (o.theta) return 2;
    return 1;
}

ExtensionSpec extension_of(const Options& o) {
    const int dim = dimension_of(o);
    const int given = !o.named.empty() + !o.unitary.empty() + !o.uparams.empty() +
                      !o.lambda.empty() + static_cast<int>(o.theta.has_value());
    if (given > 1) throw DomainError("give exactly one of --named, --unitary, --uparams, --lambda, --theta");
    if (given == 0) throw DomainError("an extension is required (--named, --unitary, --uparams, --lambda or --theta)");
    if (dim == 1) {
        if (!o.named.empty()) return ExtensionSpec::one_d(named_extension(parse_named_extension(o.named)));
        if (!o.unitary.empty()) return ExtensionSpec::one_d(Unitary2(json_io::parse_matrix(o.unitary)));
        if (!o.uparams.empty()) {
            std::vector<double> v = parse_list(o.uparams, "--uparams");
            if (v.size() != 5) throw DomainError("--uparams takes theta,a_re,a_im,b_re,b_im");
            return ExtensionSpec::one_d(unitary_from_params(v[0], {v[1], v[2]}, {v[3], v[4]}));
        }
        throw DomainError("--lambda and --theta do not apply in 1D");
    }
    if (dim == 2) {
        if (o.theta) return ExtensionSpec::two_d(*o.theta);
        throw DomainError("2D extensions are given by --theta");
    }
    if (!o.lambda.empty()) {
        if (o.lambda == "inf" || o.lambda == "infinity") return ExtensionSpec::three_d(std::nullopt);
        std::vector<double> v = parse_list(o.lambda, "--lambda");
        if (v.size() != 1 || !std::isfinite(v[0])) throw DomainError("--lambda takes a real number or inf");
        return ExtensionSpec::three_d(v[0]);
    }
    if (!o.named.empty() && parse_named_extension(o.named) == NamedExtension::Dirichlet) {
        return ExtensionSpec::three_d(0.0);
    }
    throw DomainError("3D extensions are given by --lambda or --named dirichlet");
}

json header(const std::string& command, const PhysParams& p) {
    json j;
    j["schema"] = json_io::kSchema;
    j["command"] = command;
    j["params"] = {{"hbar", to_json(p.hbar)}, {"mass", to_json(p.mass)}, {"kappa", to_json(p.kappa)}};
    return j;
}

struct Output {
    json doc;
    std::string csv;  // empty when the command has no CSV form
};

void require_json(const Options& o, const char* cmd) {
    if (o.format != "json") throw DomainError(std::string(cmd) + " supports --format json only");
}

Output cmd_spectrum(const Options& o) {
    const PhysParams p = params_of(o);
    const ExtensionSpec ext = extension_of(o);
    std::vector<EigenRecord> levels;
    if (ext.dimension() == 1) {
        levels = solve_spectrum_1d(std::get<OneD>(ext.variant).u, p, o.tau_max);
    } else if (ext.dimension() == 3) {
        const auto& lam = std::get<ThreeD>(ext.variant).lambda;
        if (!lam || *lam != 0.0) throw DomainError("3D spectra are available for the Dirichlet extension (lambda = 0) only");
        levels = dirichlet_spectrum_3d(p, o.n_max);
    } else {
        throw DomainError("2D spectra are not available");
    }
    Output res;
    res.doc = header("spectrum", p);
    res.doc["extension"] = to_json(ext);
    json arr = json::array();
    std::ostringstream csv;
    csv << "n,energy,multiplicity,tau\n";
    int n = 0;
    for (const EigenRecord& rec : levels) {
        ++n;
        json row;
        row["n"] = n;
        const json rj = to_json(rec);
        for (const auto& [k, v] : rj.items()) row[k] = v;
        arr.push_back(row);
        csv << n << ',' << format12(rec.energy) << ',' << rec.multiplicity << ',' << format12(rec.tau) << '\n';
    }
    res.doc["levels"] = arr;
    res.csv = csv.str();
    return res;
}

Output cmd_classify(const Options& o) {
    require_json(o, "classify");
    const ExtensionSpec ext = extension_of(o);
    Output res;
    res.doc = header("classify", params_of(o));
    res.doc["extension"] = to_json(ext);
    if (ext.dimension() == 1) {
        const Unitary2& u = std::get<OneD>(ext.variant).u;
        res.doc["bc"] = to_json(cayley_to_bc(u));
        Eigen::Vector2d sv = boundary_condition_singular_values(u);
        res.doc["bc_singular_values"] = json::array({to_json(sv(0)), to_json(sv(1))});
    } else if (ext.dimension() == 3) {
        res.doc["condition"] = "psi(0+) = lambda psitilde(0+)";
    } else {
        res.doc["condition"] = "theta-family on the l = 0 channel";
    }
    return res;
}

Output cmd_permeability(const Options& o) {
    require_json(o, "permeability");
    const ExtensionSpec ext = extension_of(o);
    if (ext.dimension() != 1) throw DomainError("permeability applies to 1D extensions");
    const Unitary2& u = std::get<OneD>(ext.variant).u;
    Output res;
    res.doc = header("permeability", params_of(o));
    res.doc["extension"] = to_json(ext);
    PermeabilityVerdict v = classify_extension(u);
    const json vj = to_json(v);
    for (const auto& [k, val] : vj.items()) res.doc[k] = val;
    if (v.witness) {
        res.doc["witness_residual"] = to_json(bc_residual(u, *v.witness).norm());
        BCForm bc = cayley_to_bc(u);
        if (bc.a_from_i_plus_u) {
            static const char* names[] = {"zero-coupling", "u=0", "v=0", "general"};
            Table1Value tv = table1_current(*bc.a_from_i_plus_u, *v.witness);
            res.doc["table_row"] = names[static_cast<int>(tv.row)];
            res.doc["table_current"] = to_json(tv.current);
        }
    }
    return res;
}

Output cmd_greens(const Options& o) {
    const PhysParams p = params_of(o);
    if (!o.energy || !o.y || o.x.empty()) throw DomainError("greens needs --energy, --x and --y");
    if (!o.named.empty() || !o.unitary.empty() || !o.uparams.empty()) {
        ExtensionSpec ext = extension_of(o);
        if (ext.dimension() != 1 || !std::get<OneD>(ext.variant).u.matrix().isApprox(Mat2::Identity(), 1e-12)) {
            throw DomainError("greens is available for the 1D Dirichlet extension only");
        }
    }
    std::vector<double> xs = parse_list(o.x, "--x");
    Output res;
    res.doc = header("greens", p);
    res.doc["energy"] = to_json(*o.energy);
    res.doc["y"] = to_json(*o.y);
    json arr = json::array();
    std::ostringstream csv;
    csv << "x,y,g\n";
    for (double x : xs) {
        double g = greens_dirichlet(p, *o.energy, x, *o.y);
        arr.push_back({{"x", to_json(x)}, {"g", to_json(g)}});
        csv << format12(x) << ',' << format12(*o.y) << ',' << format12(g) << '\n';
    }
    res.doc["values"] = arr;
    res.csv = csv.str();
    return res;
}

Output cmd_eval(const Options& o) {
    const PhysParams p = params_of(o);
    Output res;
    res.doc = header("eval", p);
    if (o.x.empty()) {
        require_json(o, "eval --energy");
        if (!o.energy) throw DomainError("eval needs --energy, or --x with an extension");
        TauEnergy te = tau_of_energy(p, *o.energy);
        res.doc["energy"] = to_json(*o.energy);
        res.doc["tau"] = to_json(te.tau);
        try {
            res.doc["omega"] = to_json(omega(p, *o.energy).omega);
        } catch (const PoleError&) {
            res.doc["omega"] = nullptr;
        }
        if (te.tau <= 160.0) {
            RegularizedPair d = w_boundary_pair(p, te.tau);
            res.doc["d0"] = to_json(d.d0);
            res.doc["d1"] = to_json(d.d1);
        }
        return res;
    }
    const ExtensionSpec ext = extension_of(o);
    if (ext.dimension() != 1) throw DomainError("eigenfunction evaluation is available in 1D");
    if (o.level < 1) throw DomainError("--level must be >= 1");
    const double tau_max = std::min(150.0, o.level + 2.0);
    std::vector<EigenRecord> levels = solve_spectrum_1d(std::get<OneD>(ext.variant).u, p, tau_max);
    if (static_cast<int>(levels.size()) < o.level) throw DomainError("--level beyond the computed spectrum");
    const EigenRecord& rec = levels[o.level - 1];
    if (o.basis < 0 || o.basis >= static_cast<int>(rec.basis.size())) throw DomainError("--basis out of range");
    std::vector<double> xs = parse_list(o.x, "--x");
    res.doc["extension"] = to_json(ext);
    res.doc["level"] = o.level;
    res.doc["energy"] = to_json(rec.energy);
    res.doc["coefficients"] = json::array({to_json(rec.basis[o.basis][0]), to_json(rec.basis[o.basis][1])});
    json arr = json::array();
    std::ostringstream csv;
    csv << "x,re,im\n";
    for (double x : xs) {
        cplx v = eigenfunction_eval(rec, rec.basis[o.basis], x);
        arr.push_back({{"x", to_json(x)}, {"value", to_json(v)}});
        csv << format12(x) << ',' << format12(v.real()) << ',' << format12(v.imag()) << '\n';
    }
    res.doc["values"] = arr;
    res.csv = csv.str();
    return res;
}

json check(const std::string& name, double err, double tol) {
    return {{"name", name}, {"passed", err <= tol}, {"max_rel_err", to_json(err)}, {"tol", to_json(tol)}};
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Output cmd_verify(const Options& o, bool& all_passed) {
    require_json(o, "verify");
    const PhysParams p = params_of(o);
    json checks = json::array();

    {
        std::vector<EigenRecord> exact = solve_spectrum_1d(named_extension(NamedExtension::Dirichlet), p, 4.5);
        oracle::HalflineReport h = oracle::shoot_halfline(p, 0, 1, oracle::kDirichlet,
                                                          energy_of_tau(p, 0.5).energy,
                                                          energy_of_tau(p, 4.5).energy);
        double err = h.levels.size() == exact.size() ? 0.0 : INFINITY;
        for (std::size_t k = 0; k < std::min(h.levels.size(), exact.size()); ++k) {
            err = std::max(err, rel(h.levels[k].energy, exact[k].energy));
        }
        checks.push_back(check("dirichlet_1d", err, o.tol));
    }
    for (int l = 0; l <= 2; ++l) {
        oracle::HalflineReport h = oracle::shoot_halfline(p, l, 3, oracle::kDirichlet,
                                                          energy_of_tau(p, 0.5).energy,
                                                          energy_of_tau(p, 4.5).energy);
        double err = static_cast<int>(h.levels.size()) == 4 - l ? 0.0 : INFINITY;
        for (std::size_t k = 0; k < h.levels.size(); ++k) {
            err = std::max(err, rel(h.levels[k].energy, energy_of_tau(p, l + 1.0 + k).energy));
        }
        checks.push_back(check("dirichlet_3d_l" + std::to_string(l), err, o.tol));
    }
    const cplx i1(0.0, 1.0);
    const double r2 = 1.0 / std::sqrt(2.0);
    const std::pair<const char*, Mat2> examples[] = {
        {"example1", i1 * Mat2::Identity()},
        {"example2", (Mat2() << -1.0, 0.0, 0.0, 1.0).finished()},
        {"example3", (Mat2() << i1 * r2, -i1 * r2, i1 * r2, i1 * r2).finished()},
    };
    for (const auto& [name, m] : examples) {
        Unitary2 u(m);
        std::vector<EigenRecord> exact = solve_spectrum_1d(u, p, 4.5);
        oracle::CoupledReport c = oracle::shoot_coupled_1d(u, p, energy_of_tau(p, 0.3).energy,
                                                           energy_of_tau(p, 4.5).energy);
        double err = c.levels.size() == exact.size() ? 0.0 : INFINITY;
        for (std::size_t k = 0; k < std::min(c.levels.size(), exact.size()); ++k) {
            err = std::max(err, rel(c.levels[k].energy, exact[k].energy));
            if (c.levels[k].multiplicity != exact[k].multiplicity) err = INFINITY;
        }
        checks.push_back(check(name, err, o.tol));
    }
    {
        std::vector<ParityEigen> exact = airy_spectrum_1d(p, 8);
        std::vector<oracle::LevelEstimate> ev = oracle::shoot_linear_potential(p, oracle::Parity::Even, 4);
        std::vector<oracle::LevelEstimate> od = oracle::shoot_linear_potential(p, oracle::Parity::Odd, 4);
        double err = 0.0;
        for (int k = 0; k < 4; ++k) {
            err = std::max(err, rel(ev[k].energy, exact[2 * k].energy));
            err = std::max(err, rel(od[k].energy, exact[2 * k + 1].energy));
        }
        checks.push_back(check("airy", err, std::min(o.tol, 1e-6)));
    }
    {
        const int want[] = {2, 1, 1};
        bool ok = true;
        json idx = json::array();
        for (int dim = 1; dim <= 3; ++dim) {
            int got = oracle::deficiency_index(p, dim, true).index;
            idx.push_back(got);
            ok = ok && got == want[dim - 1];
        }
        checks.push_back({{"name", "deficiency_indices"}, {"passed", ok}, {"indices", idx}});
    }
    all_passed = std::all_of(checks.begin(), checks.end(), [](const json& c) { return c["passed"].get<bool>(); });
    Output res;
    res.doc = header("verify", p);
    res.doc["isa"] = kernels::isa_name(kernels::active_isa());
    res.doc["checks"] = checks;
    res.doc["all_passed"] = all_passed;
    return res;
}

Output cmd_laplace(const Options& o) {
    const PhysParams p = params_of(o);
    std::vector<ParityEigen> levels = airy_spectrum_1d(p, o.n_max);
    Output res;
    res.doc = header("laplace-spectrum", p);
    json arr = json::array();
    std::ostringstream csv;
    csv << "n,energy,multiplicity,parity\n";
    for (const ParityEigen& e : levels) {
        arr.push_back(to_json(e));
        csv << e.index << ',' << format12(e.energy) << ',' << e.multiplicity << ',' << to_string(e.parity) << '\n';
    }
    res.doc["levels"] = arr;
    json conv = json::array();
    for (CountingConvention c : {CountingConvention::Overall, CountingConvention::EvenClass, CountingConvention::OddClass}) {
        conv.push_back(to_json(check_convention(p, c, {10, 20, 40, 80})));
    }
    res.doc["asymptotic"] = conv;
    res.csv = csv.str();
    return res;
}

Output cmd_report(const Options& o) {
    require_json(o, "report");
    Output res;
    res.doc["schema"] = json_io::kSchema;
    res.doc["command"] = "report";
    if (!o.potential.empty() || !o.domain.empty()) {
        if (o.potential.empty() || o.domain.empty()) throw DomainError("a query needs both --potential and --domain");
        res.doc["query"] = to_json(query(parse_potential(o.potential), parse_domain(o.domain)));
        return res;
    }
    json rows = json::array();
    for (const SelfAdjointnessRow& r : selfadjointness_report()) rows.push_back(to_json(r));
    res.doc["table"] = rows;
    return res;
}

json error_json(const std::string& kind, const std::string& message) {
    json j;
    j["schema"] = json_io::kSchema;
    j["error"] = {{"kind", kind}, {"message", message}};
    return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Self-adjoint extensions of the Coulomb Hamiltonian", "coulomb"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.add_option("--hbar", o.hbar, "reduced Planck constant");
    app.add_option("--mass", o.mass, "particle mass");
    app.add_option("--kappa", o.kappa, "Coulomb coupling");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", o.out_path, "write output to this file");
    app.add_option("--tol", o.tol, "relative tolerance for verify");

    auto add_extension = [&](CLI::App* sub) {
        sub->add_option("--named", o.named, "dirichlet, neumann-like, periodic, antiperiodic");
        sub->add_option("--unitary", o.unitary, "JSON 2x2 matrix of [re, im]");
        sub->add_option("--uparams", o.uparams, "theta,a_re,a_im,b_re,b_im");
        sub->add_option("--lambda", o.lambda, "3D parameter, real or inf");
        sub->add_option("--theta", o.theta, "2D parameter");
        sub->add_option("--dim", o.dim, "1, 2 or 3");
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "bound states of an extension");
    add_extension(spectrum);
    spectrum->add_option("--tau-max", o.tau_max, "1D: largest tau scanned, in [1, 150]");
    spectrum->add_option("--n-max", o.n_max, "3D: number of shells");
    CLI::App* classify = app.add_subcommand("classify", "boundary-condition form of an extension");
    add_extension(classify);
    CLI::App* perm = app.add_subcommand("permeability", "permeability verdict of a 1D extension");
    add_extension(perm);
    CLI::App* greens = app.add_subcommand("greens", "Dirichlet resolvent kernel");
    add_extension(greens);
    greens->add_option("--energy", o.energy, "negative energy");
    greens->add_option("--x", o.x, "comma-separated points");
    greens->add_option("--y", o.y, "source point");
    CLI::App* eval = app.add_subcommand("eval", "omega(E), or eigenfunction values with --x");
    add_extension(eval);
    eval->add_option("--energy", o.energy, "negative energy");
    eval->add_option("--x", o.x, "comma-separated points");
    eval->add_option("--level", o.level, "1-based level index");
    eval->add_option("--basis", o.basis, "0-based null-vector index");
    CLI::App* verify = app.add_subcommand("verify", "run the oracle suite");
    CLI::App* laplace = app.add_subcommand("laplace-spectrum", "levels of kappa|x| in 1D");
    laplace->add_option("--n-max", o.n_max, "number of levels");
    CLI::App* report = app.add_subcommand("report", "self-adjointness table");
    report->add_option("--potential", o.potential, "V1, V2, V3 or VC");
    report->add_option("--domain", o.domain, "R, R2, R3, R-0, R2-0, R3-0");
    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << error_json("UsageError", e.what()).dump() << '\n' << app.help();
        return kValidation;
    }

    try {
        Output res;
        bool all_passed = true;
        if (spectrum->parsed()) res = cmd_spectrum(o);
        else if (classify->parsed()) res = cmd_classify(o);
        else if (perm->parsed()) res = cmd_permeability(o);
        else if (greens->parsed()) res = cmd_greens(o);
        else if (eval->parsed()) res = cmd_eval(o);
        else if (verify->parsed()) res = cmd_verify(o, all_passed);
        else if (laplace->parsed()) res = cmd_laplace(o);
        else res = cmd_report(o);

        std::string text;
        if (o.format == "csv") {
            if (res.csv.empty()) throw DomainError("this command has no CSV form");
            text = res.csv;
        } else {
            text = res.doc.dump(2) + "\n";
        }
        if (o.out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(o.out_path, std::ios::binary);
            if (!f) throw DomainError("cannot open --out file " + o.out_path);
            f << text;
        }
        return all_passed ? kOk : kCheckFailed;
    } catch (const Error& e) {
        err << error_json(e.kind(), e.what()).dump() << '\n';
        return e.is_validation() ? kValidation : kNumerical;
    }
}

}  // namespace coulomb::cli
