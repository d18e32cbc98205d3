// pkdyn: command-line driver for the para-Kahler surface engine.
//
// Subcommands:
//   verify     property sweep of the structure/curvature identities
//   curvature  grid table of the J-sectional curvature
//   lagrange   Euler-Lagrange flow of a Lagrangian L(x, y)
//   hamilton   para-Hamiltonian flow of a Hamiltonian H(x, y)
//
// Exit status: 0 when every check passed / the flow completed, 1 when a
// check failed or a flow aborted, and a CLI11 usage-error code for bad
// arguments. Output is CSV (default) or JSON with identical numeric
// content; every run with the same arguments and seed is byte-identical.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pk/expr.hpp"
#include "pk/geometry.hpp"
#include "pk/hamiltonian.hpp"
#include "pk/integrator.hpp"
#include "pk/lagrangian.hpp"
#include "pk/sampling.hpp"

using json = nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

struct Report {
    std::string command;
    json parameters = json::object();
    std::vector<std::string> columns;
    std::vector<json> rows;          // arrays matching columns
    json status = json::object();    // includes "status": "..." plus details
};

void write_csv(std::ostream& os, const Report& r) {
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        os << (i ? "," : "") << r.columns[i];
    os << "\n";
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            if (row[i].is_number()) os << fmt17(row[i].get<double>());
            else os << row[i].get<std::string>();
        }
        os << "\n";
    }
    os << "#";
    for (auto it = r.status.begin(); it != r.status.end(); ++it)
        os << " " << it.key() << "=" << (it->is_string() ? it->get<std::string>()
                                                         : it->dump());
    os << "\n";
}

void write_json(std::ostream& os, const Report& r) {
    json doc;
    doc["command"] = r.command;
    doc["version"] = PK_VERSION;
    doc["parameters"] = r.parameters;
    doc["columns"] = r.columns;
    doc["rows"] = r.rows;
    doc["status"] = r.status;
    os << doc.dump(2) << "\n";
}

int emit(const Report& r, const std::string& format, const std::string& out_path) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open output file '" << out_path << "'\n";
            return 2;
        }
        os = &file;
    }
    if (format == "json") write_json(*os, r);
    else write_csv(*os, r);
    return 0;
}

std::optional<pk::Point2> parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return std::nullopt;
    pk::Point2 p;
    try {
        std::size_t used = 0;
        p.x = std::stod(text.substr(0, comma), &used);
        if (used != comma) return std::nullopt;
        const std::string rest = text.substr(comma + 1);
        p.y = std::stod(rest, &used);
        if (used != rest.size()) return std::nullopt;
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return p;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct IdentityCheck {
    std::string name;
    double tolerance;
    double max_residual = 0.0;

    void feed(double r) { max_residual = std::max(max_residual, std::fabs(r)); }
    bool pass() const { return max_residual <= tolerance; }
};

int run_verify(double c, int samples, std::uint64_t seed, const std::string& format,
               const std::string& out_path) {
    const pk::SpaceForm sf(c);
    pk::SampleRng rng(seed);

    IdentityCheck checks[] = {
        {"J_squared_identity", 1e-12},
        {"Jstar_squared_identity", 1e-12},
        {"skew_symmetry", 1e-12},
        {"orthogonality_u_Ju", 1e-12},
        {"nabla_J", 1e-9},
        {"curvature_antisym_XY", 1e-8},
        {"curvature_antisym_ZV", 1e-8},
        {"curvature_J_pair", 1e-8},
        {"curvature_cyclic_sum", 1e-8},
        {"space_form_law", 1e-7},
        {"j_sectional_minus_c", 1e-6},
    };
    auto& [j2, jstar2, skew, orth, nablaJ, asymXY, asymZV, jpair, cyclic, law, jsec] = checks;

    for (int s = 0; s < samples; ++s) {
        const pk::Point2 p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        auto rand_vec = [&] { return pk::Vec2{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)}; };
        const pk::TangentVec u{p, rand_vec()}, v{p, rand_vec()};

        const pk::Mat2 JJ = pk::J_at(p) * pk::J_at(p);
        j2.feed(pk::max_abs_diff(JJ, pk::Mat2::identity()));

        const pk::Cotangent a{p, rand_vec()};
        const pk::Cotangent a2 = pk::Jstar_apply(p, pk::Jstar_apply(p, a));
        jstar2.feed(std::fabs(a2.comp.x - a.comp.x));
        jstar2.feed(std::fabs(a2.comp.y - a.comp.y));

        skew.feed(pk::g_apply(sf, pk::J_apply(u), v) + pk::g_apply(sf, u, pk::J_apply(v)));
        orth.feed(pk::g_apply(sf, u, pk::J_apply(u)));
        nablaJ.feed(pk::nabla_J_norm(sf, p));

        const pk::TangentVec X{p, rand_vec()}, Y{p, rand_vec()}, Z{p, rand_vec()},
            V{p, rand_vec()};
        const double rxyzv = pk::riemann_0_4(sf, p, X, Y, Z, V);
        asymXY.feed(rxyzv + pk::riemann_0_4(sf, p, Y, X, Z, V));
        asymZV.feed(rxyzv + pk::riemann_0_4(sf, p, X, Y, V, Z));
        // Skewness of J gives g(JA,JB) = -g(A,B), so replacing (X,Y) by
        // (JX,JY) flips the sign of R on this manifold.
        jpair.feed(pk::riemann_0_4(sf, p, pk::J_apply(X), pk::J_apply(Y), Z, V) + rxyzv);
        cyclic.feed(rxyzv + pk::riemann_0_4(sf, p, Y, Z, X, V) +
                    pk::riemann_0_4(sf, p, Z, X, Y, V));

        law.feed(pk::space_form_residual(sf, p));

        pk::TangentVec w{p, rand_vec()};
        const pk::Mat2 g = pk::metric_at(sf, p);
        for (int tries = 0; tries < 100; ++tries) {
            const double scale = std::fabs(g.m00) * w.comp.x * w.comp.x +
                                 std::fabs(g.m11) * w.comp.y * w.comp.y;
            if (scale > 0.0 && std::fabs(pk::g_apply(sf, w, w)) > 0.05 * scale) break;
            w.comp = rand_vec();
        }
        jsec.feed(pk::j_sectional_curvature(sf, p, w) - c);
    }

    Report rep;
    rep.command = "verify";
    rep.parameters = {{"c", c}, {"samples", samples}, {"seed", seed}};
    rep.columns = {"identity", "max_residual", "tolerance", "pass"};
    bool all_pass = true;
    std::string first_failure;
    for (const auto& ch : checks) {
        rep.rows.push_back(
            {ch.name, ch.max_residual, ch.tolerance, ch.pass() ? "1" : "0"});
        if (!ch.pass() && all_pass) {
            all_pass = false;
            first_failure = ch.name;
        }
    }
    rep.status["status"] = all_pass ? "pass" : "fail";
    if (!all_pass) rep.status["first_failure"] = first_failure;
    const int io = emit(rep, format, out_path);
    if (io != 0) return io;
    if (!all_pass) std::cerr << "verify: failed identity " << first_failure << "\n";
    return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// curvature
// ---------------------------------------------------------------------------

int run_curvature(double c, int grid, double range, const std::string& format,
                  const std::string& out_path) {
    const pk::SpaceForm sf(c);
    Report rep;
    rep.command = "curvature";
    rep.parameters = {{"c", c}, {"grid", grid}, {"range", range}};
    rep.columns = {"x", "y", "k", "status"};
    bool all_pass = true;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const double x = -range + 2.0 * range * i / (grid - 1);
            const double y = -range + 2.0 * range * j / (grid - 1);
            const pk::Point2 p{x, y};
            json row = {x, y};
            try {
                const double k = pk::j_sectional_curvature(sf, p, {p, {1.0, 0.0}});
                row.push_back(k);
                row.push_back("ok");
                if (std::fabs(k - c) > 1e-6) all_pass = false;
            } catch (const pk::IsotropicVector&) {
                // marked, not dropped; "nan" keeps the cell type stable in
                // both output formats
                row.push_back("nan");
                row.push_back("isotropic");
                all_pass = false;
            } catch (const pk::DegeneratePlane&) {
                row.push_back("nan");
                row.push_back("degenerate");
                all_pass = false;
            }
            rep.rows.push_back(row);
        }
    }
    rep.status["status"] = all_pass ? "pass" : "fail";
    const int io = emit(rep, format, out_path);
    if (io != 0) return io;
    return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// flows
// ---------------------------------------------------------------------------

Report trajectory_report(const std::string& command, const pk::Trajectory& traj) {
    Report rep;
    rep.command = command;
    rep.columns = {"t", "x", "y"};
    for (const auto& name : traj.monitor_names) rep.columns.push_back(name);
    for (const auto& s : traj.samples) {
        json row = {s.t, s.p.x, s.p.y};
        for (double m : s.monitors) row.push_back(m);
        rep.rows.push_back(row);
    }
    if (traj.completed()) {
        rep.status["status"] = "completed";
        rep.status["t_end"] = traj.termination.t;
    } else {
        rep.status["status"] = "aborted";
        rep.status["t"] = traj.termination.t;
        rep.status["reason"] = traj.termination.reason;
    }
    return rep;
}

int run_lagrange(double c, const std::string& L_text, const pk::Point2& p0, double T, double h,
                 const std::string& format, const std::string& out_path) {
    pk::Expr L = pk::parse_expr(L_text);
    pk::LagrangianSystem sys{L, pk::SpaceForm(c)};
    pk::StepperConfig cfg;
    cfg.h = h;
    cfg.t_final = T;
    const pk::Trajectory traj = pk::el_flow(sys, p0, cfg);
    Report rep = trajectory_report("lagrange", traj);
    rep.parameters = {{"c", c}, {"L", L_text}, {"p0", {p0.x, p0.y}}, {"T", T}, {"h", h}};
    const int io = emit(rep, format, out_path);
    if (io != 0) return io;
    if (!traj.completed())
        std::cerr << "lagrange: aborted at t=" << traj.termination.t << ": "
                  << traj.termination.reason << "\n";
    return traj.completed() ? 0 : 1;
}

int run_hamilton(const std::string& H_text, const pk::Point2& p0, double T, double h,
                 const std::string& format, const std::string& out_path) {
    pk::Expr H = pk::parse_expr(H_text);
    pk::HamiltonianSystem sys{H};
    pk::StepperConfig cfg;
    cfg.h = h;
    cfg.t_final = T;
    const pk::Trajectory traj = pk::hamilton_flow(sys, p0, cfg);
    Report rep = trajectory_report("hamilton", traj);
    rep.parameters = {{"H", H_text}, {"p0", {p0.x, p0.y}}, {"T", T}, {"h", h}};
    const int io = emit(rep, format, out_path);
    if (io != 0) return io;
    if (!traj.completed())
        std::cerr << "hamilton: aborted at t=" << traj.termination.t << ": "
                  << traj.termination.reason << "\n";
    return traj.completed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamics and identity checks on the para-Kahler surface model"};
    app.require_subcommand(1);
    // --h is a step-size option below, so help is long-form only.
    app.set_help_flag("--help", "print help");

    std::string format = "csv";
    std::string out_path;

    double c = 4.0;
    int samples = 100;
    std::uint64_t seed = 1;
    int grid = 10;
    double range = 2.0;
    std::string L_text, H_text, p0_text;
    double T = 1.0, h = 1e-3;

    auto* verify = app.add_subcommand("verify", "run the identity property sweep");
    verify->set_help_flag("--help", "print help");
    verify->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    verify->add_option("--out", out_path, "output path (default: stdout)");
    verify->add_option("--c", c, "space form constant (nonzero)")->required();
    verify->add_option("--samples", samples, "number of sample points");
    verify->add_option("--seed", seed, "sampling seed");

    auto* curvature = app.add_subcommand("curvature", "J-sectional curvature on a grid");
    curvature->set_help_flag("--help", "print help");
    curvature->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    curvature->add_option("--out", out_path, "output path (default: stdout)");
    curvature->add_option("--c", c, "space form constant (nonzero)")->required();
    curvature->add_option("--grid", grid, "points per axis (>= 2)");
    curvature->add_option("--range", range, "half-width of the sampled square");

    auto* lagrange = app.add_subcommand("lagrange", "integrate the Euler-Lagrange flow");
    lagrange->set_help_flag("--help", "print help");
    lagrange->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    lagrange->add_option("--out", out_path, "output path (default: stdout)");
    lagrange->add_option("--c", c, "space form constant (nonzero)");
    lagrange->add_option("--L", L_text, "Lagrangian, e.g. \"x^2+y^2\"")->required();
    lagrange->add_option("--p0", p0_text, "start point \"x,y\"")->required();
    lagrange->add_option("--T", T, "final time")->required();
    lagrange->add_option("--h", h, "step size")->required();

    auto* hamilton = app.add_subcommand("hamilton", "integrate the para-Hamiltonian flow");
    hamilton->set_help_flag("--help", "print help");
    hamilton->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    hamilton->add_option("--out", out_path, "output path (default: stdout)");
    hamilton->add_option("--H", H_text, "Hamiltonian, e.g. \"x^2+y^2\"")->required();
    hamilton->add_option("--p0", p0_text, "start point \"x,y\" with |y| above the axis strip")
        ->required();
    hamilton->add_option("--T", T, "final time")->required();
    hamilton->add_option("--h", h, "step size")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(verify) || app.got_subcommand(curvature)) {
            if (c == 0.0) throw CLI::ValidationError("--c", "must be nonzero");
        }
        if (app.got_subcommand(verify)) {
            if (samples < 1) throw CLI::ValidationError("--samples", "must be >= 1");
            return run_verify(c, samples, seed, format, out_path);
        }
        if (app.got_subcommand(curvature)) {
            if (grid < 2) throw CLI::ValidationError("--grid", "must be >= 2");
            if (!(range > 0.0)) throw CLI::ValidationError("--range", "must be > 0");
            return run_curvature(c, grid, range, format, out_path);
        }

        const auto p0 = parse_point(p0_text);
        if (!p0) throw CLI::ValidationError("--p0", "expected \"x,y\"");
        if (!(T > 0.0)) throw CLI::ValidationError("--T", "must be > 0");
        if (!(h > 0.0) || h > T) throw CLI::ValidationError("--h", "must satisfy 0 < h <= T");

        if (app.got_subcommand(lagrange)) {
            if (c == 0.0) throw CLI::ValidationError("--c", "must be nonzero");
            return run_lagrange(c, L_text, *p0, T, h, format, out_path);
        }
        if (std::fabs(p0->y) <= pk::axis_epsilon())
            throw CLI::ValidationError(
                "--p0", "start lies in the axis-singularity strip |y| <= 1e-6 where the "
                        "para-symplectic form degenerates");
        return run_hamilton(H_text, *p0, T, h, format, out_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const pk::SyntaxError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const pk::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
