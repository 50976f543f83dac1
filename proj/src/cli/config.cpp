#include "fdlab/cli/config.hpp"

#include <fstream>
#include <set>

#include "fdlab/bubble.hpp"

namespace fdlab::cli {

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            fail(ErrorCode::ConfigInvalid,
                 "unknown key '" + it.key() + "' in " + where);
}

template <class T>
T get_or(const json& j, const char* key, T def) {
    if (!j.contains(key)) return def;
    return j.at(key).get<T>();
}

std::vector<double> get_vec(const json& j, const char* key,
                            std::vector<double> def) {
    if (!j.contains(key)) return def;
    return j.at(key).get<std::vector<double>>();
}

}  // namespace

RunConfig parse_config(const json& j) {
    RunConfig c;
    reject_unknown(j, {"dimension", "exponent", "domain", "ansatz", "grid",
                       "solver", "greens", "fit", "simulate", "output",
                       "seed", "sweep"},
                   "config root");

    c.dimension = get_or(j, "dimension", 3);
    if (c.dimension < 3)
        fail(ErrorCode::ConfigInvalid, "dimension must be >= 3");

    if (j.contains("exponent")) {
        const auto& e = j.at("exponent");
        if (e.is_string()) {
            if (e.get<std::string>() != "critical")
                fail(ErrorCode::ConfigInvalid,
                     "exponent must be a number or \"critical\"");
            c.critical = true;
        } else {
            c.critical = false;
            c.exponent_m = e.get<double>();
            if (!(c.exponent_m > 0.0 && c.exponent_m < 1.0))
                fail(ErrorCode::ConfigInvalid, "exponent m must be in (0,1)");
        }
    }
    if (c.critical) c.exponent_m = critical_m(c.dimension);

    // domain
    c.domain = DomainSpec::unit_ball(c.dimension);
    if (j.contains("domain")) {
        const auto& d = j.at("domain");
        reject_unknown(d, {"kind", "radius", "lengths"}, "domain");
        std::string kind = get_or<std::string>(d, "kind", "unit_ball");
        if (kind == "unit_ball") {
            c.domain = DomainSpec::unit_ball(c.dimension,
                                             get_or(d, "radius", 1.0));
        } else if (kind == "box") {
            c.domain = DomainSpec::box(get_vec(d, "lengths", {}));
            if (c.domain.n != c.dimension)
                fail(ErrorCode::ConfigInvalid,
                     "box lengths must match the dimension");
        } else {
            fail(ErrorCode::ConfigInvalid, "domain kind must be unit_ball or box");
        }
    }

    // ansatz
    c.points = {Point(c.dimension, 0.0)};
    if (j.contains("ansatz")) {
        const auto& a = j.at("ansatz");
        reject_unknown(a,
                       {"k", "points", "t0", "eps", "b", "gamma_tilde",
                        "use_mu_corrected_h", "mu_convention",
                        "lifetime_scale", "sample_times",
                        "projection_radius_factor"},
                       "ansatz");
        c.k = get_or(a, "k", 1);
        if (a.contains("points")) {
            c.points.clear();
            for (const auto& p : a.at("points"))
                c.points.push_back(p.get<Point>());
        }
        if (static_cast<int>(c.points.size()) != c.k)
            fail(ErrorCode::ConfigInvalid, "ansatz.points must have k entries");
        c.t0 = get_or(a, "t0", 1.0);
        c.eps_cutoff = get_or(a, "eps", 0.4);
        c.b = get_vec(a, "b", {});
        c.gamma_tilde = get_vec(a, "gamma_tilde", {});
        c.use_mu_corrected_h = get_or(a, "use_mu_corrected_h", false);
        std::string conv = get_or<std::string>(a, "mu_convention", "with_p");
        if (conv == "with_p") c.mu_convention = MuConvention::WithP;
        else if (conv == "without_p") c.mu_convention = MuConvention::WithoutP;
        else fail(ErrorCode::ConfigInvalid, "mu_convention: with_p|without_p");
        if (a.contains("lifetime_scale")) {
            const auto& ls = a.at("lifetime_scale");
            if (ls.is_string()) {
                if (ls.get<std::string>() != "auto")
                    fail(ErrorCode::ConfigInvalid,
                         "lifetime_scale must be a number or \"auto\"");
                c.lifetime_scale = 0.0;
            } else {
                c.lifetime_scale = ls.get<double>();
                if (!(c.lifetime_scale > 0.0))
                    fail(ErrorCode::ConfigInvalid,
                         "lifetime_scale must be positive");
            }
        }
        c.sample_times = get_vec(a, "sample_times", {});
        c.projection_radius_factor =
            get_or(a, "projection_radius_factor", 0.5);
    }

    // grid
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        reject_unknown(g, {"intervals", "stretching", "grading_blend"},
                       "grid");
        c.grid_intervals = get_or(g, "intervals", 2048);
        std::string s = get_or<std::string>(g, "stretching", "graded");
        if (s == "graded") c.stretching = GridStretching::Graded;
        else if (s == "uniform") c.stretching = GridStretching::Uniform;
        else fail(ErrorCode::ConfigInvalid, "stretching: graded|uniform");
        c.grading_blend = get_or(g, "grading_blend", 0.1);
    }

    // solver
    if (j.contains("solver")) {
        const auto& s = j.at("solver");
        reject_unknown(s,
                       {"newton_tol", "newton_max", "dt_init", "dt_growth",
                        "dt_shrink", "rel_change_cap", "floor_rel",
                        "max_steps", "records_per_decade",
                        "target_iters_low", "target_iters_high"},
                       "solver");
        c.solver.newton_tol = get_or(s, "newton_tol", c.solver.newton_tol);
        c.solver.newton_max = get_or(s, "newton_max", c.solver.newton_max);
        c.solver.dt_init = get_or(s, "dt_init", 1e-6);
        c.solver.dt_growth = get_or(s, "dt_growth", c.solver.dt_growth);
        c.solver.dt_shrink = get_or(s, "dt_shrink", c.solver.dt_shrink);
        c.solver.rel_change_cap =
            get_or(s, "rel_change_cap", 0.005);
        c.solver.floor_rel = get_or(s, "floor_rel", c.solver.floor_rel);
        c.solver.max_steps = get_or(s, "max_steps", c.solver.max_steps);
        c.solver.records_per_decade =
            get_or(s, "records_per_decade", 24);
        c.solver.target_iters_low =
            get_or(s, "target_iters_low", c.solver.target_iters_low);
        c.solver.target_iters_high =
            get_or(s, "target_iters_high", c.solver.target_iters_high);
    } else {
        c.solver.dt_init = 1e-6;
        c.solver.rel_change_cap = 0.005;
        c.solver.records_per_decade = 24;
    }

    // greens
    if (j.contains("greens")) {
        const auto& g = j.at("greens");
        reject_unknown(g, {"box_nodes", "ball_nr", "ball_ntheta"}, "greens");
        c.greens.box_nodes = get_or(g, "box_nodes", c.greens.box_nodes);
        c.greens.ball_nr = get_or(g, "ball_nr", c.greens.ball_nr);
        c.greens.ball_ntheta = get_or(g, "ball_ntheta", c.greens.ball_ntheta);
    }

    // fit
    if (j.contains("fit")) {
        const auto& f = j.at("fit");
        reject_unknown(f, {"window", "model", "input"}, "fit");
        auto w = get_vec(f, "window", {1e-4, 1e-1});
        if (w.size() != 2 || !(w[0] > 0.0 && w[0] < w[1]))
            fail(ErrorCode::ConfigInvalid, "fit.window must be [lo, hi]");
        c.fit_window = {w[0], w[1]};
        std::string mdl = get_or<std::string>(f, "model", "log_corrected");
        if (mdl == "log_corrected") c.fit_model = RateModel::LogCorrected;
        else if (mdl == "pure_power") c.fit_model = RateModel::PurePower;
        else fail(ErrorCode::ConfigInvalid, "fit.model: log_corrected|pure_power");
        c.fit_input = get_or<std::string>(f, "input", "");
    }

    // simulate
    if (j.contains("simulate")) {
        const auto& s = j.at("simulate");
        reject_unknown(s,
                       {"form", "initial", "initial_file", "coupling",
                        "t_end", "snapshot_times"},
                       "simulate");
        std::string form = get_or<std::string>(s, "form", "w");
        if (form == "w") c.sim_form = StateForm::WForm;
        else if (form == "u") c.sim_form = StateForm::UForm;
        else fail(ErrorCode::ConfigInvalid, "simulate.form: w|u");
        c.initial = get_or<std::string>(s, "initial", "ansatz");
        if (c.initial != "ansatz" && c.initial != "file" &&
            c.initial != "bump")
            fail(ErrorCode::ConfigInvalid,
                 "simulate.initial: ansatz|file|bump");
        c.initial_file = get_or<std::string>(s, "initial_file", "");
        c.bump_amplitude = get_or(s, "bump_amplitude", 10.0);
        c.bump_power = get_or(s, "bump_power", 2.0);
        if (s.contains("coupling")) {
            const auto& cc = s.at("coupling");
            if (cc.is_string()) {
                if (cc.get<std::string>() != "image")
                    fail(ErrorCode::ConfigInvalid,
                         "coupling must be a number or \"image\"");
                c.coupling = 0.0;
            } else {
                c.coupling = cc.get<double>();
            }
        }
        c.t_end = get_or(s, "t_end", 2.0);
        c.snapshot_times = get_vec(s, "snapshot_times", {});
    }

    if (j.contains("output")) {
        const auto& o = j.at("output");
        reject_unknown(o, {"prefix"}, "output");
        c.output_prefix = get_or<std::string>(o, "prefix", "run");
    }
    c.seed = get_or<unsigned long long>(j, "seed", c.seed);

    if (j.contains("sweep")) {
        for (const auto& e : j.at("sweep")) c.sweep.push_back(e);
    }
    return c;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ConfigInvalid, "cannot open config: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(ErrorCode::ConfigInvalid,
             std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

json RunConfig::resolved() const {
    json j;
    j["dimension"] = dimension;
    if (critical)
        j["exponent"] = "critical";
    else
        j["exponent"] = exponent_m;
    if (domain.kind == DomainKind::UnitBall)
        j["domain"] = {{"kind", "unit_ball"}, {"radius", domain.radius}};
    else
        j["domain"] = {{"kind", "box"}, {"lengths", domain.lengths}};
    j["ansatz"] = {
        {"k", k},
        {"points", points},
        {"t0", t0},
        {"eps", eps_cutoff},
        {"b", b},
        {"gamma_tilde", gamma_tilde},
        {"use_mu_corrected_h", use_mu_corrected_h},
        {"mu_convention",
         mu_convention == MuConvention::WithP ? "with_p" : "without_p"},
        {"lifetime_scale",
         lifetime_scale == 0.0 ? json("auto") : json(lifetime_scale)},
        {"sample_times", sample_times},
        {"projection_radius_factor", projection_radius_factor},
    };
    j["grid"] = {
        {"intervals", grid_intervals},
        {"stretching",
         stretching == GridStretching::Graded ? "graded" : "uniform"},
        {"grading_blend", grading_blend},
    };
    j["solver"] = {
        {"newton_tol", solver.newton_tol},
        {"newton_max", solver.newton_max},
        {"dt_init", solver.dt_init},
        {"dt_growth", solver.dt_growth},
        {"dt_shrink", solver.dt_shrink},
        {"rel_change_cap", solver.rel_change_cap},
        {"floor_rel", solver.floor_rel},
        {"max_steps", solver.max_steps},
        {"records_per_decade", solver.records_per_decade},
        {"target_iters_low", solver.target_iters_low},
        {"target_iters_high", solver.target_iters_high},
    };
    j["greens"] = {
        {"box_nodes", greens.box_nodes},
        {"ball_nr", greens.ball_nr},
        {"ball_ntheta", greens.ball_ntheta},
    };
    j["fit"] = {
        {"window", {fit_window.first, fit_window.second}},
        {"model",
         fit_model == RateModel::LogCorrected ? "log_corrected"
                                              : "pure_power"},
        {"input", fit_input},
    };
    j["simulate"] = {
        {"form", sim_form == StateForm::WForm ? "w" : "u"},
        {"initial", initial},
        {"initial_file", initial_file},
        {"coupling", coupling == 0.0 ? json("image") : json(coupling)},
        {"t_end", t_end},
        {"snapshot_times", snapshot_times},
    };
    j["output"] = {{"prefix", output_prefix}};
    j["seed"] = seed;
    if (!sweep.empty()) j["sweep"] = sweep;
    return j;
}

}  // namespace fdlab::cli
