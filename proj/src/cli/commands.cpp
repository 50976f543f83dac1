#include "fdlab/cli/commands.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <random>
#include <thread>

#include "fdlab/bubble.hpp"
#include "fdlab/cli/io.hpp"
#include "fdlab/oracles.hpp"
#include "fdlab/residual.hpp"
#include "fdlab/sphere.hpp"

namespace fdlab::cli {

namespace fs = std::filesystem;

namespace {

void ensure_outdir(const CliOptions& opts) {
    if (!opts.out_dir.empty()) fs::create_directories(opts.out_dir);
}

std::string out_path(const CliOptions& opts, const std::string& name) {
    return (fs::path(opts.out_dir) / name).string();
}

ScalingLaw make_law(const RunConfig& cfg) {
    return ScalingLaw::make(cfg.dimension, cfg.t0, cfg.mu_convention);
}

// resolve b (and gamma) so the echoed config carries the actual numbers
AnsatzConfig make_ansatz(RunConfig& cfg, const ScalingLaw& law,
                         GreensMatrix* inter_out = nullptr) {
    AnsatzConfig a;
    a.n = cfg.dimension;
    a.domain = cfg.domain;
    a.k = cfg.k;
    a.q = cfg.points;
    a.eps_cutoff = cfg.eps_cutoff;
    a.use_mu_corrected_H = cfg.use_mu_corrected_h;
    GreensMatrix inter = robin_matrix(cfg.domain, cfg.points, cfg.greens);
    if (cfg.b.empty())
        cfg.b = solve_b({cfg.k, inter, cfg.dimension});
    a.b = cfg.b;
    if (cfg.gamma_tilde.empty()) {
        cfg.gamma_tilde.resize(cfg.k);
        for (int j = 0; j < cfg.k; ++j)
            cfg.gamma_tilde[j] =
                fitted_gamma_tilde(j, law.t0, a, law, inter,
                                   cfg.mu_convention);
    }
    a.gamma_tilde = cfg.gamma_tilde;
    if (inter_out) *inter_out = inter;
    return a;
}

void echo_config(const RunConfig& cfg, const CliOptions& opts,
                 const std::string& prefix) {
    write_json(out_path(opts, prefix + "_config.json"), cfg.resolved());
}

RadialState initial_state(RunConfig& cfg, const ScalingLaw& law,
                          StateForm form) {
    RadialGrid grid = RadialGrid::make(cfg.dimension, cfg.domain.radius,
                                       cfg.grid_intervals, cfg.stretching,
                                       cfg.grading_blend);
    if (cfg.initial == "file") {
        CsvTable t = read_csv(cfg.initial_file);
        int cr = t.column("r"), cv = t.column("value");
        if (cr < 0 || cv < 0)
            fail(ErrorCode::ConfigInvalid,
                 "initial file needs r,value columns");
        if (t.rows.size() != grid.nodes.size())
            fail(ErrorCode::ConfigInvalid,
                 "initial file must match the grid resolution");
        RadialState st;
        st.grid = std::make_shared<RadialGrid>(grid);
        st.form = form;
        st.m = cfg.exponent_m;
        st.t = form == StateForm::UForm ? cfg.t0 : 0.0;
        for (const auto& row : t.rows) st.values.push_back(row[cv]);
        st.values.back() = 0.0;
        st.validate();
        return st;
    }
    AnsatzConfig a = make_ansatz(cfg, law);
    if (!cfg.critical)
        fail(ErrorCode::ConfigInvalid,
             "ansatz initial data is defined at the critical exponent");
    double theta = cfg.lifetime_scale;
    if (form == StateForm::WForm && theta == 0.0) {
        // calibrate the remaining-lifetime gauge so T ~ 1
        RadialGrid cg =
            RadialGrid::make(cfg.dimension, cfg.domain.radius,
                             std::min(cfg.grid_intervals, 512),
                             cfg.stretching, cfg.grading_blend);
        RadialState wc =
            init_from_ansatz(a, law, cfg.t0, cg, StateForm::WForm, 1.0,
                             cfg.greens);
        SolverConfig sc = cfg.solver;
        ExtinctionRecord rc = simulate_to_extinction(wc, sc);
        auto [Tc, ci] = estimate_T(rc, cfg.exponent_m);
        theta = 1.0 / Tc;
        cfg.lifetime_scale = theta;
    }
    if (theta == 0.0) theta = 1.0;
    return init_from_ansatz(a, law, cfg.t0, grid, form, theta, cfg.greens);
}

struct SimResult {
    json summary;
};

SimResult run_single_simulation(RunConfig cfg, const CliOptions& opts,
                                const std::string& prefix) {
    ScalingLaw law = cfg.critical ? make_law(cfg)
                                  : ScalingLaw::from_constants(
                                        cfg.dimension, 1.0, 1.0, cfg.t0);
    SimResult out;
    if (cfg.sim_form == StateForm::WForm) {
        RadialState w0 = initial_state(cfg, law, StateForm::WForm);
        std::vector<RadialState> snaps;
        ExtinctionRecord rec = simulate_to_extinction(
            w0, cfg.solver, cfg.snapshot_times.empty() ? nullptr : &snaps,
            cfg.snapshot_times.empty() ? nullptr : &cfg.snapshot_times);
        auto [T, ci] = estimate_T(rec, cfg.exponent_m);
        rec.T_est = T;
        rec.T_ci = ci;
        write_csv(out_path(opts, prefix + "_series.csv"),
                  record_to_csv(rec, cfg.exponent_m, T));
        out.summary = {{"T_est", T}, {"T_ci", ci},
                       {"samples", rec.samples.size()},
                       {"final_tau", rec.samples.back().tau}};
        if (opts.verbose)
            std::cout << prefix << ": T_est=" << format_double(T) << " ("
                      << rec.samples.size() << " samples)\n";
    } else {
        RadialState u0 = initial_state(cfg, law, StateForm::UForm);
        double coupling = cfg.coupling;
        if (coupling == 0.0) coupling = 1.0 / (1.0 - cfg.exponent_m);
        Trajectory traj = simulate_yamabe(u0, cfg.t_end, cfg.snapshot_times,
                                          coupling, cfg.solver);
        write_csv(out_path(opts, prefix + "_series.csv"),
                  trajectory_to_csv(traj, cfg.exponent_m,
                                    std::numeric_limits<double>::quiet_NaN()));
        out.summary = {{"t_end", cfg.t_end},
                       {"coupling", coupling},
                       {"steps", traj.series.size()}};
    }
    echo_config(cfg, opts, prefix);
    write_json(out_path(opts, prefix + "_summary.json"), out.summary);
    return out;
}

}  // namespace

int cmd_greens(const RunConfig& cfg_in, const CliOptions& opts) {
    RunConfig cfg = cfg_in;
    ensure_outdir(opts);
    GreensMatrix m = robin_matrix(cfg.domain, cfg.points, cfg.greens);
    bool borderline = false;
    bool pd = is_positive_definite(m, 1e-12, &borderline);
    json j;
    j["points"] = cfg.points;
    std::vector<std::vector<double>> entries(cfg.k,
                                             std::vector<double>(cfg.k));
    for (int i = 0; i < cfg.k; ++i)
        for (int l = 0; l < cfg.k; ++l) entries[i][l] = m.at(i, l);
    j["matrix"] = entries;
    j["positive_definite"] = pd;
    j["borderline"] = borderline;
    json pairs = json::array();
    for (int i = 0; i < cfg.k; ++i)
        for (int l = 0; l < cfg.k; ++l) {
            if (i == l) continue;
            pairs.push_back({{"i", i},
                             {"j", l},
                             {"G", green(cfg.domain, cfg.points[i],
                                         cfg.points[l], cfg.greens)}});
        }
    j["green_offdiag"] = pairs;
    json hvals = json::array();
    for (int i = 0; i < cfg.k; ++i)
        hvals.push_back(regular_part(cfg.domain, cfg.points[i],
                                     cfg.points[i], cfg.greens));
    j["regular_part_diag"] = hvals;
    echo_config(cfg, opts, cfg.output_prefix);
    write_json(out_path(opts, cfg.output_prefix + "_greens.json"), j);
    return kExitOk;
}

int cmd_solve_b(const RunConfig& cfg_in, const CliOptions& opts) {
    RunConfig cfg = cfg_in;
    ensure_outdir(opts);
    GreensMatrix m = robin_matrix(cfg.domain, cfg.points, cfg.greens);
    BSystem sys{cfg.k, m, cfg.dimension};
    std::vector<double> b = solve_b(sys);
    cfg.b = b;
    json j;
    j["b"] = b;
    j["I"] = functional_I(b, sys);
    j["grad_norm"] = b_system_residual(b, sys);
    j["hessian_eigenvalues"] = hessian_I_tilde_eigenvalues(b, sys);
    echo_config(cfg, opts, cfg.output_prefix);
    write_json(out_path(opts, cfg.output_prefix + "_solve_b.json"), j);
    return kExitOk;
}

int cmd_ansatz(const RunConfig& cfg_in, const CliOptions& opts) {
    RunConfig cfg = cfg_in;
    ensure_outdir(opts);
    ScalingLaw law = make_law(cfg);
    AnsatzConfig a = make_ansatz(cfg, law);
    AnsatzEvaluator ev(a, law, cfg.greens);
    std::vector<double> times = cfg.sample_times;
    if (times.empty()) times = {cfg.t0};

    // profile along the axis through the first blow-up point
    CsvTable prof;
    prof.header = {"t", "offset", "z", "tilde_z"};
    const double reach = 0.98 * cfg.domain.boundary_distance(cfg.points[0]);
    const int nsamp = 401;
    for (double t : times)
        for (int i = 0; i < nsamp; ++i) {
            double s = -reach + 2.0 * reach * i / (nsamp - 1);
            Point x = cfg.points[0];
            x[0] += s;
            prof.rows.push_back({t, s, ev.z(x, t), ev.tilde_z_at(x, t)});
        }
    write_csv(out_path(opts, cfg.output_prefix + "_ansatz_profile.csv"),
              prof);

    CsvTable projections;
    projections.header = {"t", "j", "l", "radius", "value"};
    for (double t : times)
        for (int j = 0; j < cfg.k; ++j) {
            const double mu = ev.mu_j(j, t);
            const double R =
                cfg.projection_radius_factor * cfg.eps_cutoff / mu;
            for (int l = 1; l <= cfg.dimension + 1; ++l)
                projections.rows.push_back(
                    {t, double(j), double(l), R,
                     project_residual(l, j, t, ev, R)});
        }
    write_csv(out_path(opts, cfg.output_prefix + "_projections.csv"),
              projections);
    echo_config(cfg, opts, cfg.output_prefix);
    return kExitOk;
}

int cmd_simulate(const RunConfig& cfg_in, const CliOptions& opts) {
    ensure_outdir(opts);
    if (cfg_in.sweep.empty()) {
        run_single_simulation(cfg_in, opts, cfg_in.output_prefix);
        return kExitOk;
    }
    // sweep: each entry is a JSON merge patch on the base configuration;
    // workers own their output files, no shared mutable state
    json base = cfg_in.resolved();
    base.erase("sweep");
    std::vector<json> merged;
    for (const auto& patch : cfg_in.sweep) {
        json one = base;
        one.merge_patch(patch);
        merged.push_back(one);
    }
    std::vector<std::exception_ptr> errors(merged.size());
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    int nthreads = std::max(1, opts.threads);
    for (int w = 0; w < nthreads; ++w)
        pool.emplace_back([&]() {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= merged.size()) return;
                try {
                    RunConfig c = parse_config(merged[i]);
                    char tag[32];
                    std::snprintf(tag, sizeof tag, "_%03zu", i);
                    run_single_simulation(c, opts,
                                          c.output_prefix + tag);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return kExitOk;
}

int cmd_fit(const RunConfig& cfg_in, const CliOptions& opts) {
    RunConfig cfg = cfg_in;
    ensure_outdir(opts);
    std::string input = cfg.fit_input;
    if (input.empty())
        input = out_path(opts, cfg.output_prefix + "_series.csv");
    ExtinctionRecord rec = csv_to_record(read_csv(input));
    auto [T, ci] = estimate_T(rec, cfg.exponent_m);

    FitRateOptions fo;
    fo.window = cfg.fit_window;
    RateFit fit = fit_rate(rec, T, cfg.fit_model, fo);

    json j;
    j["T_est"] = T;
    j["T_ci"] = ci;
    j["power"] = fit.power;
    j["log_power"] = fit.log_power;
    j["rms"] = fit.rms_residual;
    j["window"] = {fit.window.first, fit.window.second};
    j["amplitude"] = fit.amplitude;

    const double ms = critical_m(cfg.dimension);
    if (std::abs(cfg.exponent_m - ms) <= 1e-12) {
        MuTrack mt = extract_mu_tilde(rec, T, cfg.dimension, cfg.fit_window);
        j["beta"] = mt.beta;
        j["mu_tilde_correlation"] = mt.correlation;
        j["mu_tilde_poor_fit"] = mt.poor_fit;
        // u-form scale decay reconstructed through the transformation
        std::vector<double> ts, centers;
        for (const auto& s : rec.samples) {
            if (!(s.tau < T) || !(s.center > 0.0)) continue;
            double frac = (T - s.tau) / T;
            if (frac < cfg.fit_window.first || frac > cfg.fit_window.second)
                continue;
            ts.push_back(cfg.t0 + std::log(T / (T - s.tau)));
            centers.push_back(std::pow(T - s.tau, -ms / (1.0 - ms)) *
                              std::pow(s.center, ms));
        }
        if (ts.size() >= 2) {
            MuTrack mu = extract_mu(ts, centers, cfg.dimension);
            j["mu_slope"] = mu.slope;
            j["mu_beta"] = mu.beta;
        }
    } else {
        j["beta"] = nullptr;
    }

    // plot-ready residual table
    CsvTable plot;
    plot.header = {"log_T_minus_tau", "log_sup_w", "model_prediction"};
    for (const auto& s : rec.samples) {
        if (!(s.sup > 0.0) || !(s.tau < T)) continue;
        const double d = T - s.tau;
        if (d < fit.window.first || d > fit.window.second) continue;
        double pred = std::log(fit.amplitude) + fit.power * std::log(d) +
                      fit.log_power * std::log(std::abs(std::log(d)));
        plot.rows.push_back({std::log(d), std::log(s.sup), pred});
    }
    write_csv(out_path(opts, cfg.output_prefix + "_fit_points.csv"), plot);
    echo_config(cfg, opts, cfg.output_prefix);
    write_json(out_path(opts, cfg.output_prefix + "_fit.json"), j);
    return kExitOk;
}

int cmd_check(const RunConfig& cfg_in, const CliOptions& opts) {
    RunConfig cfg = cfg_in;
    ensure_outdir(opts);
    bool all_ok = true;
    auto report = [&](const std::string& name, bool ok,
                      const std::string& detail) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << ": " << detail
                  << "\n";
        if (!ok) all_ok = false;
    };
    char buf[160];

    // kernel annihilation and the bubble equation
    {
        double worst = 0.0;
        for (int n = 3; n <= 6; ++n) {
            std::mt19937_64 rng(cfg.seed + n);
            std::uniform_real_distribution<double> dist(-10.0, 10.0);
            const double p = critical_p(n);
            for (int s = 0; s < 60; ++s) {
                Point y(n);
                for (auto& v : y) v = dist(rng) / std::sqrt(double(n));
                for (int i = 1; i <= n + 1; ++i) {
                    FlatFunction f = [&](const Point& yy) {
                        return kernel_Z(i, yy, n);
                    };
                    // 4th order FD Laplacian
                    double lap = 0.0;
                    const double h = 1e-3;
                    Point x = y;
                    double f0 = f(y);
                    for (int a = 0; a < n; ++a) {
                        double ya = y[a];
                        x[a] = ya + 2 * h; double p2 = f(x);
                        x[a] = ya + h;     double p1 = f(x);
                        x[a] = ya - h;     double m1 = f(x);
                        x[a] = ya - 2 * h; double m2 = f(x);
                        x[a] = ya;
                        lap += (-p2 + 16 * p1 - 30 * f0 + 16 * m1 - m2) /
                               (12 * h * h);
                    }
                    double defect = lap + p *
                        std::pow(bubble_U(y, n), p - 1.0) * f0;
                    worst = std::max(worst, std::abs(defect));
                }
            }
        }
        std::snprintf(buf, sizeof buf, "sup defect %.3e (tol 1e-6)", worst);
        report("kernel annihilation", worst <= 1e-6, buf);
    }

    // scalar constants vs the closed-form oracle
    {
        double worst = 0.0;
        for (int n = 3; n <= 6; ++n) {
            auto [c1, c2] = constants_c1_c2(n);
            auto [o1, o2] = oracles::c1c2_closed_form(n);
            worst = std::max({worst, std::abs(c1 - o1) / o1,
                              std::abs(c2 - o2) / o2});
        }
        std::snprintf(buf, sizeof buf, "max rel diff %.3e (tol 1e-10)",
                      worst);
        report("c1/c2 quadrature vs closed form", worst <= 1e-10, buf);
    }

    // gradient of the interaction functional vs finite differences
    {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> pos(0.5, 1.5);
        std::uniform_real_distribution<double> off(-0.35, 0.35);
        double worst = 0.0;
        for (int trial = 0; trial < 8; ++trial) {
            DomainSpec ball = DomainSpec::unit_ball(3);
            std::vector<Point> q;
            for (int i = 0; i < 2; ++i)
                q.push_back({off(rng), off(rng), off(rng)});
            if (dist(q[0], q[1]) < 0.2) continue;
            GreensMatrix m = robin_matrix(ball, q);
            if (!is_positive_definite(m)) continue;
            BSystem sys{2, m, 3};
            std::vector<double> b = {pos(rng), pos(rng)};
            auto g = grad_I(b, sys);
            for (int i = 0; i < 2; ++i) {
                double h = 1e-6;
                auto bp = b, bm = b;
                bp[i] += h;
                bm[i] -= h;
                double fd =
                    (functional_I(bp, sys) - functional_I(bm, sys)) /
                    (2 * h);
                worst = std::max(worst, std::abs(g[i] - fd) /
                                            std::max(1.0, std::abs(fd)));
            }
        }
        std::snprintf(buf, sizeof buf, "max rel diff %.3e (tol 1e-6)",
                      worst);
        report("grad_I vs finite differences", worst <= 1e-6, buf);
    }

    // conformal Laplacian identity and the lifted kernel eigenvalue
    {
        std::vector<Point> samples = {{0.3, -0.2, 0.5},
                                      {1.2, 0.4, -0.3},
                                      {-0.7, 0.9, 0.1}};
        FlatFunction u3 = [](const Point& y) { return bubble_U(y, 3); };
        double mism = conformal_laplacian_check(u3, samples, 3, 1e-2, 1e-2);
        double eig = lifted_kernel_eigen_defect(4, samples, 3, 1e-2);
        std::snprintf(buf, sizeof buf,
                      "identity %.3e eigen defect %.3e (tol 1e-4)", mism,
                      eig);
        report("conformal Laplacian on the sphere",
               mism <= 1e-4 && eig <= 1e-4, buf);
    }

    // ball image formula vs the grid boundary-value solve
    {
        DomainSpec ball = DomainSpec::unit_ball(3);
        Point q{0.5, 0.0, 0.0};
        GreensConfig gc;
        gc.ball_nr = 65;
        gc.ball_ntheta = 130;
        BallAxisymHarmonicSolver solver(3, 1.0, gc.ball_nr, gc.ball_ntheta);
        solver.solve([&](double th) {
            double d2 = 1.0 - std::cos(th) + 0.25;
            return alpha_n(3) / std::sqrt(d2);
        });
        double worst = 0.0;
        for (int ir = 0; ir <= 12; ++ir)
            for (int it = 0; it <= 12; ++it) {
                double r = 0.9 * ir / 12.0, th = std::numbers::pi * it / 12.0;
                Point x{r * std::cos(th), r * std::sin(th), 0.0};
                worst = std::max(worst,
                                 std::abs(solver.value(r, th) -
                                          ball_regular_part(3, 1.0, x, q)));
            }
        std::snprintf(buf, sizeof buf, "sup diff %.3e at 65 (tol 1e-3)",
                      worst);
        report("ball image vs grid solve", worst <= 1e-3, buf);
    }

    // box eigenfunction series vs the sine-transform solve
    {
        DomainSpec box = DomainSpec::box({1.0, 1.0, 1.0});
        GreensConfig gc;
        gc.box_nodes = 65;
        Point x{0.3, 0.5, 0.5}, y{0.5, 0.5, 0.5};
        double gfd = green(box, x, y, gc);
        double gse = oracles::box_green_series(box.lengths, x, y);
        std::snprintf(buf, sizeof buf, "diff %.3e at 65 (tol 1.5e-3)",
                      std::abs(gfd - gse));
        report("box series vs grid solve", std::abs(gfd - gse) <= 1.5e-3,
               buf);
    }

    // separable-profile convention for the stationary family
    {
        std::vector<double> radii;
        for (int i = 1; i <= 30; ++i) radii.push_back(0.12 * i);
        double adopted =
            oracles::ln_profile_ode_residual(1.0, 3, 2.5, 4.0, radii, 1e-3);
        double rejected =
            oracles::ln_profile_ode_residual(1.0, 3, 1.0, 2.0, radii, 1e-3);
        std::snprintf(buf, sizeof buf,
                      "adopted %.3e rejected %.3e (ratio >= 1e3)", adopted,
                      rejected);
        report("stationary profile convention",
               adopted * 1e3 <= rejected && adopted < 1e-6, buf);
    }

    // scale ODE: RK4 vs the closed form
    {
        ScalingLaw law = ScalingLaw::make(3, 10.0);
        double rk = oracles::mu0_rk4(law, 10.0, 1000.0, 20000);
        double cf = mu0(1000.0, law);
        std::snprintf(buf, sizeof buf, "rel diff %.3e (tol 1e-8)",
                      std::abs(rk - cf) / cf);
        report("scale ODE vs closed form", std::abs(rk - cf) / cf <= 1e-8,
               buf);
    }

    // transformation round trip
    {
        RadialGrid grid = RadialGrid::make(3, 1.0, 64,
                                           GridStretching::Uniform);
        RadialState w;
        w.grid = std::make_shared<RadialGrid>(grid);
        w.form = StateForm::WForm;
        w.m = critical_m(3);
        w.t = 0.37;
        for (double r : grid.nodes)
            w.values.push_back(std::max(0.0, 1.0 - r * r));
        w.values.back() = 0.0;
        RadialState back = transform_u_to_w(transform_w_to_u(w, 2.0), 2.0);
        double worst = std::abs(back.t - w.t);
        for (size_t i = 0; i < w.values.size(); ++i)
            worst = std::max(worst,
                             std::abs(back.values[i] - w.values[i]));
        std::snprintf(buf, sizeof buf, "round trip error %.3e (tol 1e-14)",
                      worst);
        report("transformation round trip", worst <= 1e-14, buf);
    }

    return all_ok ? kExitOk : kExitCheckFailed;
}

int run_cli(const std::vector<std::string>& args) {
    CliOptions opts;
    std::string subcommand;
    try {
        for (size_t i = 0; i < args.size(); ++i) {
            const std::string& a = args[i];
            if (a == "--config") {
                if (++i >= args.size())
                    fail(ErrorCode::ConfigInvalid, "--config needs a path");
                opts.config_path = args[i];
            } else if (a == "--out") {
                if (++i >= args.size())
                    fail(ErrorCode::ConfigInvalid, "--out needs a path");
                opts.out_dir = args[i];
            } else if (a == "--threads") {
                if (++i >= args.size())
                    fail(ErrorCode::ConfigInvalid, "--threads needs a count");
                opts.threads = std::stoi(args[i]);
            } else if (a == "--verbose") {
                opts.verbose = true;
            } else if (!a.empty() && a[0] == '-') {
                fail(ErrorCode::ConfigInvalid, "unknown flag " + a);
            } else if (subcommand.empty()) {
                subcommand = a;
            } else {
                fail(ErrorCode::ConfigInvalid, "unexpected argument " + a);
            }
        }
        if (subcommand.empty())
            fail(ErrorCode::ConfigInvalid,
                 "usage: fdlab <greens|solve-b|ansatz|simulate|fit|check> "
                 "--config <path> [--out <dir>] [--threads N] [--verbose]");
        RunConfig cfg;
        if (!opts.config_path.empty())
            cfg = parse_config_file(opts.config_path);
        else if (subcommand != "check")
            fail(ErrorCode::ConfigInvalid, "--config is required");

        if (subcommand == "greens") return cmd_greens(cfg, opts);
        if (subcommand == "solve-b") return cmd_solve_b(cfg, opts);
        if (subcommand == "ansatz") return cmd_ansatz(cfg, opts);
        if (subcommand == "simulate") return cmd_simulate(cfg, opts);
        if (subcommand == "fit") return cmd_fit(cfg, opts);
        if (subcommand == "check") return cmd_check(cfg, opts);
        fail(ErrorCode::ConfigInvalid, "unknown subcommand " + subcommand);
    } catch (const Error& e) {
        json err = {{"error",
                     {{"code", error_code_name(e.code())},
                      {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return e.code() == ErrorCode::ConfigInvalid ? kExitConfig
                                                    : kExitNumerical;
    } catch (const std::exception& e) {
        json err = {{"error",
                     {{"code", "Unexpected"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace fdlab::cli
