#include <fraclab/caputo.hpp>
#include <fraclab/csvio.hpp>
#include <fraclab/exactsol.hpp>
#include <fraclab/fdsolver.hpp>
#include <fraclab/regdiag.hpp>
#include <fraclab/runconfig.hpp>
#include <fraclab/scenarios.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

namespace {

using namespace fraclab;

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw config_error("empty numeric list '" + text + "'");
    return out;
}

std::vector<EigenMode> parse_mode_list(const std::string& text) {
    std::vector<EigenMode> modes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t colon = item.find(':');
        int k = std::stoi(item.substr(0, colon));
        double c = colon == std::string::npos ? 1.0 : std::stod(item.substr(colon + 1));
        modes.push_back({k, c});
    }
    if (modes.empty()) throw config_error("empty mode list '" + text + "'");
    return modes;
}

int run_mlf(double alpha, double z, double tol) {
    SeriesEvalConfig cfg;
    cfg.abs_tol = tol;
    std::cout << format_g17(mittag_leffler(alpha, z, cfg)) << '\n';
    return 0;
}

int run_caputo(const std::string& g_id, double delta_v, const std::string& t_list,
               double T, int M, double quad_tol, const std::string& out) {
    FractionalOrder delta(delta_v);
    CatalogFunction cf = catalog_lookup(g_id, delta, T);
    const auto& integrand = delta.ceiling() == 1 ? cf.d1 : cf.d2;

    TimeGrid grid(T, M, 1.0);
    SampledFunction samples = SampledFunction::sample(grid, cf.g);
    SampledFunction discrete = delta.ceiling() == 1
                                   ? l1_operator(samples, delta)
                                   : l2_operator(samples, delta, cf.d1(0.0));

    std::vector<std::vector<double>> rows;
    for (double t : parse_double_list(t_list)) {
        if (!(t > 0.0 && t <= T)) throw config_error("caputo: need 0 < t <= T");
        double quad = caputo_quadrature(integrand, delta, t, quad_tol);
        int node = static_cast<int>(std::lround(t / T * M));
        node = std::max(1, std::min(M, node));
        double analytic = cf.caputo_exact ? cf.caputo_exact(t) : std::nan("");
        rows.push_back({t, quad, discrete.values[static_cast<std::size_t>(node)],
                        grid.node(node), analytic});
    }
    if (out.empty()) {
        std::cout << "t,quadrature,discrete,t_node,analytic\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i)
                std::cout << (i ? "," : "") << format_g17(r[i]);
            std::cout << '\n';
        }
    } else {
        write_csv_atomic(resolve_output_path(out), "t,quadrature,discrete,t_node,analytic",
                         rows);
    }
    return 0;
}

int run_exact(double delta_v, const std::string& modes_text, double T, int nx, int nt,
              const std::string& out) {
    FractionalOrder delta(delta_v);
    ExactProblem p(delta, parse_mode_list(modes_text), T);
    std::vector<std::vector<double>> rows;
    for (int j = 0; j <= nt; ++j) {
        double t = T * j / nt;
        for (int i = 0; i <= nx; ++i) {
            double x = std::numbers::pi * i / nx;
            double v = exact_value(p, x, t);
            double dv = t > 0.0 ? exact_dt(p, x, t) : std::nan("");
            double ddv = (t > 0.0 && delta.ceiling() == 2) ? exact_dtt(p, x, t)
                                                           : std::nan("");
            rows.push_back({x, t, v, dv, ddv});
        }
    }
    write_csv_atomic(resolve_output_path(out), "x,t,v,dv_dt,d2v_dt2", rows);
    std::cout << "wrote " << rows.size() << " rows to " << resolve_output_path(out)
              << '\n';
    return 0;
}

int run_solve(const std::string& config_path, const std::string& out_override) {
    RunConfig rc = build_run_config(ConfigFile::parse_file(config_path));
    if (!rc.problem) throw config_error(config_path + ": [problem] section required");
    SpaceGrid space(rc.problem->a(), rc.problem->b(), rc.numerics.N);
    TimeGrid time(rc.problem->T(), rc.numerics.M, rc.numerics.grading);
    SolutionField u = solve(*rc.problem, space, time);
    for (const auto& w : u.warnings) std::cerr << "warning: " << w << '\n';

    std::string out = out_override.empty() ? rc.output_path : out_override;
    if (out.empty()) throw config_error(config_path + ": [output] path required");
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(rc.numerics.M + 1) * (rc.numerics.N + 1));
    for (int n = 0; n <= time.intervals(); ++n)
        for (int i = 0; i <= space.cells(); ++i)
            rows.push_back({time.node(n), space.node(i), u.at(n, i)});
    write_csv_atomic(resolve_output_path(out), "t,x,u", rows);
    std::cout << "wrote " << rows.size() << " rows to " << resolve_output_path(out)
              << '\n';
    return 0;
}

int run_converge(const std::string& config_path, const std::string& out_override) {
    RunConfig rc = build_run_config(ConfigFile::parse_file(config_path));
    if (!rc.problem) throw config_error(config_path + ": [problem] section required");
    if (rc.numerics.M_list.empty())
        throw config_error(config_path + ": [numerics] M_list required for converge");

    SpaceTimeFn exact;
    if (rc.reference.kind == ReferenceConfig::Kind::eigenmodes) {
        ExactProblem p(rc.problem->delta(), rc.reference.modes, rc.problem->T());
        exact = exact_solution_fn(p);
    } else if (rc.reference.kind == ReferenceConfig::Kind::expr) {
        exact = rc.reference.u;
    }

    SpaceGrid space(rc.problem->a(), rc.problem->b(), rc.numerics.N);
    ConvergenceReport rep = convergence_study(*rc.problem, space, rc.numerics.M_list,
                                              rc.numerics.grading, exact);
    std::cout << rep.to_table();

    std::string out = out_override.empty() ? rc.output_path : out_override;
    if (!out.empty()) {
        std::vector<std::vector<double>> rows;
        for (const auto& e : rep.entries)
            rows.push_back({static_cast<double>(e.M), e.dt, e.err_at_T, e.err_global});
        write_csv_atomic(resolve_output_path(out), "M,dt,err_at_T,err_global", rows);
    }
    return 0;
}

int run_diagnose(const std::string& config_path, const std::string& out_override,
                 bool estimate_layer) {
    RunConfig rc = build_run_config(ConfigFile::parse_file(config_path));
    if (!rc.problem) throw config_error(config_path + ": [problem] section required");
    SpaceGrid space(rc.problem->a(), rc.problem->b(), rc.numerics.N);
    DiagnoseOptions opts;
    opts.estimate_layer = estimate_layer;
    DiagnosticsReport rep = diagnose(*rc.problem, space, opts);
    std::cout << rep.to_text(space);

    std::string out = out_override.empty() ? rc.output_path : out_override;
    if (!out.empty() && rep.forced_phi0) {
        std::vector<std::vector<double>> rows;
        for (int i = 0; i <= space.cells(); ++i)
            rows.push_back({space.node(i),
                            (*rep.forced_phi0)[static_cast<std::size_t>(i)]});
        write_csv_atomic(resolve_output_path(out), "x,forced_phi0", rows);
    }
    if (!out.empty() && !rep.layer_t.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < rep.layer_t.size(); ++i)
            rows.push_back({rep.layer_t[i], rep.layer_value[i]});
        std::string layer_path = out;
        std::size_t dot = layer_path.rfind('.');
        layer_path.insert(dot == std::string::npos ? layer_path.size() : dot, "_layer");
        write_csv_atomic(resolve_output_path(layer_path), "t,du_dt", rows);
    }
    return 0;
}

int run_repro(const std::string& which) {
    CheckList all;
    if (which == "example1" || which == "all") all.append(repro_example1());
    if (which == "example2" || which == "all") all.append(repro_example2());
    if (which == "remark24" || which == "all") all.append(repro_remark24());
    if (all.checks.empty())
        throw config_error("repro: unknown scenario '" + which +
                           "' (expected example1, example2, remark24 or all)");
    print_checks(std::cout, all);
    return all.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fraclab: Caputo fractional derivatives, Mittag-Leffler relaxation, "
                 "initial-layer diagnostics, and L1/L2 finite-difference solvers"};
    app.require_subcommand(1);

    double alpha = 1.0, z = 0.0, tol = 1e-12;
    auto* mlf = app.add_subcommand("mlf", "evaluate the Mittag-Leffler function E_alpha(z)");
    mlf->add_option("--alpha", alpha, "series parameter, > 0")->required();
    mlf->add_option("--z", z, "argument")->required();
    mlf->add_option("--tol", tol, "truncation tolerance");

    std::string g_id = "t2", t_list = "1.0", out;
    double delta_v = 0.5, T = 2.0, quad_tol = 1e-9;
    int M = 256;
    auto* cap = app.add_subcommand("caputo",
                                   "Caputo derivative of a catalog function "
                                   "(quadrature, discrete operator, analytic)");
    cap->add_option("--g", g_id, "catalog id: t2 t3 sin exp expm1mt tpow");
    cap->add_option("--delta", delta_v, "order in (0,1) or (1,2)")->required();
    cap->add_option("--t", t_list, "comma-separated evaluation times");
    cap->add_option("--T", T, "horizon");
    cap->add_option("--M", M, "intervals of the discrete operator grid");
    cap->add_option("--quad-tol", quad_tol, "quadrature tolerance");
    cap->add_option("--out", out, "CSV output path (stdout when omitted)");

    std::string modes = "1:1";
    int nx = 32, nt = 50;
    std::string exact_out = "exact.csv";
    auto* exa = app.add_subcommand("exact",
                                   "tabulate the eigenmode solution and its "
                                   "temporal derivatives to CSV");
    exa->add_option("--delta", delta_v, "order in (0,1) or (1,2)")->required();
    exa->add_option("--modes", modes, "modes k:c, comma separated");
    exa->add_option("--T", T, "horizon");
    exa->add_option("--nx", nx, "spatial cells");
    exa->add_option("--nt", nt, "time rows");
    exa->add_option("--out", exact_out, "CSV output path");

    std::string config_path, out_override;
    auto* sol = app.add_subcommand("solve", "implicit finite-difference solve from a config");
    sol->add_option("--config", config_path, "config file")->required();
    sol->add_option("--out", out_override, "override [output] path");

    auto* con = app.add_subcommand("converge", "temporal convergence study from a config");
    con->add_option("--config", config_path, "config file")->required();
    con->add_option("--out", out_override, "override [output] path");

    bool estimate_layer = false;
    auto* dia = app.add_subcommand("diagnose",
                                   "regularity diagnostics: forced initial value, "
                                   "uniqueness conditions, residual");
    dia->add_option("--config", config_path, "config file")->required();
    dia->add_option("--out", out_override, "override [output] path");
    dia->add_flag("--layer", estimate_layer, "also fit the layer exponent from a solve");

    std::string scenario;
    auto* rep = app.add_subcommand("repro", "scripted scenario reproductions");
    rep->add_option("scenario", scenario, "example1, example2, remark24 or all")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (mlf->parsed()) return run_mlf(alpha, z, tol);
        if (cap->parsed()) return run_caputo(g_id, delta_v, t_list, T, M, quad_tol, out);
        if (exa->parsed()) return run_exact(delta_v, modes, T, nx, nt, exact_out);
        if (sol->parsed()) return run_solve(config_path, out_override);
        if (con->parsed()) return run_converge(config_path, out_override);
        if (dia->parsed()) return run_diagnose(config_path, out_override, estimate_layer);
        if (rep->parsed()) return run_repro(scenario);
    } catch (const fraclab::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
