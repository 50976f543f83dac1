#include "fdlab/pde.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "fdlab/bubble.hpp"

namespace fdlab {

RadialGrid RadialGrid::make(int n, double R, int intervals,
                            GridStretching stretching, double grading_blend) {
    if (intervals < 8) fail(ErrorCode::ConfigInvalid, "grid too coarse");
    if (!(R > 0.0)) fail(ErrorCode::ConfigInvalid, "grid radius must be > 0");
    RadialGrid g;
    g.n = n;
    g.R = R;
    g.stretching = stretching;
    g.nodes.resize(intervals + 1);
    for (int i = 0; i <= intervals; ++i) {
        double s = double(i) / intervals;
        double f = (stretching == GridStretching::Uniform)
                       ? s
                       : grading_blend * s + (1.0 - grading_blend) * s * s;
        g.nodes[i] = R * f;
    }
    g.nodes.front() = 0.0;
    g.nodes.back() = R;
    g.validate();
    return g;
}

void RadialGrid::validate() const {
    if (nodes.size() < 2 || nodes.front() != 0.0)
        fail(ErrorCode::ConfigInvalid, "grid must start at r = 0");
    for (size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1]))
            fail(ErrorCode::ConfigInvalid, "grid nodes must increase");
    if (nodes.back() != R)
        fail(ErrorCode::ConfigInvalid, "last node must equal R");
}

double RadialState::sup() const {
    double s = 0.0;
    for (double v : values) s = std::max(s, v);
    return s;
}

void RadialState::validate() const {
    if (!grid) fail(ErrorCode::ConfigInvalid, "state has no grid");
    grid->validate();
    if (values.size() != grid->nodes.size())
        fail(ErrorCode::ConfigInvalid, "state/grid size mismatch");
    if (!(m > 0.0 && m < 1.0))
        fail(ErrorCode::ConfigInvalid, "exponent m must lie in (0,1)");
    for (double v : values)
        if (v < 0.0)
            fail(ErrorCode::NegativeIterate, "state values must be >= 0");
    if (values.back() != 0.0)
        fail(ErrorCode::ConfigInvalid, "Dirichlet value at r = R must be 0");
}

namespace {

// conservative radial Laplacian coefficients on [0, R); Dirichlet at R
struct LaplacianStencil {
    std::vector<double> lo, di, up;   // size M (unknowns 0..M-1)

    explicit LaplacianStencil(const RadialGrid& g) {
        const int M = g.intervals();
        const int n = g.n;
        lo.assign(M, 0.0);
        di.assign(M, 0.0);
        up.assign(M, 0.0);
        const auto& r = g.nodes;
        // flux form over exact cell volumes (r_+^n - r_-^n)/n; the exact
        // volumes keep the stencil consistent at the axis
        {
            const double h = r[1] - r[0];
            const double rhalf = 0.5 * (r[0] + r[1]);
            const double vol = std::pow(rhalf, n) / double(n);
            up[0] = std::pow(rhalf, n - 1) / (h * vol);
            di[0] = -up[0];
        }
        for (int i = 1; i < M; ++i) {
            const double hm = r[i] - r[i - 1];
            const double hp = r[i + 1] - r[i];
            const double rm_half = 0.5 * (r[i] + r[i - 1]);
            const double rp_half = 0.5 * (r[i] + r[i + 1]);
            const double am = std::pow(rm_half, n - 1);
            const double ap = std::pow(rp_half, n - 1);
            const double vol =
                (std::pow(rp_half, n) - std::pow(rm_half, n)) / double(n);
            lo[i] = am / (hm * vol);
            up[i] = ap / (hp * vol);
            di[i] = -(lo[i] + up[i]);
        }
    }

    // y = L v for the unknown vector (v_M = 0 implied)
    void apply(const std::vector<double>& v, std::vector<double>& y) const {
        const int M = static_cast<int>(lo.size());
        for (int i = 0; i < M; ++i) {
            double s = di[i] * v[i];
            if (i > 0) s += lo[i] * v[i - 1];
            if (i + 1 < M) s += up[i] * v[i + 1];
            y[i] = s;
        }
    }
};

// Thomas algorithm; diag/off arrays are overwritten
void solve_tridiag(std::vector<double>& a, std::vector<double>& b,
                   std::vector<double>& c, std::vector<double>& d) {
    const int M = static_cast<int>(b.size());
    for (int i = 1; i < M; ++i) {
        double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        d[i] -= w * d[i - 1];
    }
    d[M - 1] /= b[M - 1];
    for (int i = M - 2; i >= 0; --i) d[i] = (d[i] - c[i] * d[i + 1]) / b[i];
}

struct NewtonOutcome {
    std::vector<double> solution;
    int iters = 0;
};

// Damped Newton for F(v) = N(v) - rhs - dt L v = 0 where N is a
// componentwise monotone nonlinearity with derivative dN.
template <class Fn, class DFn>
NewtonOutcome newton_solve(const LaplacianStencil& L,
                           const std::vector<double>& start,
                           const std::vector<double>& rhs, double dt,
                           double tol_abs, int max_iters, Fn N, DFn dN) {
    const int M = static_cast<int>(start.size());
    std::vector<double> v = start, Lv(M), F(M), a(M), b(M), c(M), d(M);
    auto eval_F = [&](const std::vector<double>& vv, std::vector<double>& out) {
        L.apply(vv, Lv);
        double worst = 0.0;
        for (int i = 0; i < M; ++i) {
            out[i] = N(vv[i]) - rhs[i] - dt * Lv[i];
            worst = std::max(worst, std::abs(out[i]));
        }
        return worst;
    };
    double fnorm = eval_F(v, F);
    int it = 0;
    for (; it < max_iters; ++it) {
        if (fnorm <= tol_abs) break;
        for (int i = 0; i < M; ++i) {
            a[i] = (i > 0) ? -dt * L.lo[i] : 0.0;
            b[i] = dN(v[i]) - dt * L.di[i];
            c[i] = (i + 1 < M) ? -dt * L.up[i] : 0.0;
            d[i] = -F[i];
        }
        solve_tridiag(a, b, c, d);
        // keep iterates positive, then require residual decrease
        double alpha = 1.0;
        for (int i = 0; i < M; ++i)
            if (d[i] < 0.0 && v[i] + alpha * d[i] < 0.0)
                alpha = std::min(alpha, -0.95 * v[i] / d[i]);
        bool ok = false;
        std::vector<double> cand(M), Fc(M);
        for (int bt = 0; bt < 50; ++bt) {
            for (int i = 0; i < M; ++i) cand[i] = v[i] + alpha * d[i];
            double fc = eval_F(cand, Fc);
            if (fc < fnorm * (1.0 - 1e-4 * alpha) || fc <= tol_abs) {
                v.swap(cand);
                F.swap(Fc);
                fnorm = fc;
                ok = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!ok) fail(ErrorCode::NewtonStalled, "line search stalled");
    }
    if (fnorm > tol_abs)
        fail(ErrorCode::NewtonStalled, "Newton did not reach tolerance");
    return {std::move(v), it};
}

}  // namespace

RadialState step_fast_diffusion(const RadialState& state, double dt,
                                const SolverConfig& cfg, int* iters) {
    state.validate();
    if (state.form != StateForm::WForm)
        fail(ErrorCode::ConfigInvalid, "step_fast_diffusion needs a w state");
    if (!(dt > 0.0)) fail(ErrorCode::ConfigInvalid, "dt must be positive");
    const double sup0 = state.sup();
    RadialState out = state;
    out.t = state.t + dt;
    if (iters) *iters = 0;
    if (sup0 == 0.0) return out;   // zero data is a fixed point

    const int M = state.grid->intervals();
    LaplacianStencil L(*state.grid);
    const double m = state.m;
    const double q = 1.0 / m;
    std::vector<double> v0(M), rhs(M);
    for (int i = 0; i < M; ++i) {
        v0[i] = std::pow(state.values[i], m);
        rhs[i] = state.values[i];
    }
    auto res = newton_solve(
        L, v0, rhs, dt, cfg.newton_tol * sup0, cfg.newton_max,
        [q](double v) { return std::pow(v, q); },
        [q](double v) { return v > 0.0 ? q * std::pow(v, q - 1.0) : 0.0; });
    for (int i = 0; i < M; ++i) out.values[i] = std::pow(res.solution[i], q);
    out.values[M] = 0.0;
    if (iters) *iters = res.iters;
    return out;
}

RadialState step_yamabe(const RadialState& state, double dt, double coupling,
                        const SolverConfig& cfg, int* iters) {
    state.validate();
    if (state.form != StateForm::UForm)
        fail(ErrorCode::ConfigInvalid, "step_yamabe needs a u state");
    if (!(dt > 0.0)) fail(ErrorCode::ConfigInvalid, "dt must be positive");
    if (coupling * dt >= 0.5)
        fail(ErrorCode::NewtonStalled, "dt too large for the coupling term");
    const double sup0 = state.sup();
    RadialState out = state;
    out.t = state.t + dt;
    if (iters) *iters = 0;
    if (sup0 == 0.0) return out;

    const int M = state.grid->intervals();
    LaplacianStencil L(*state.grid);
    const double q = 1.0 / state.m;
    const double beta = 1.0 - coupling * dt;
    std::vector<double> u0(M), rhs(M);
    for (int i = 0; i < M; ++i) {
        u0[i] = state.values[i];
        rhs[i] = std::pow(state.values[i], q);
    }
    auto res = newton_solve(
        L, u0, rhs, dt, cfg.newton_tol * std::pow(sup0, q), cfg.newton_max,
        [q, beta](double u) { return beta * std::pow(u, q); },
        [q, beta](double u) {
            return u > 0.0 ? beta * q * std::pow(u, q - 1.0) : 0.0;
        });
    for (int i = 0; i < M; ++i) out.values[i] = res.solution[i];
    out.values[M] = 0.0;
    if (iters) *iters = res.iters;
    return out;
}

namespace {

// shared adaptive loop; Step advances by dt and reports Newton iterations
template <class Step>
void adaptive_evolve(RadialState& state, const SolverConfig& cfg, Step step,
                     std::vector<double> stop_times,
                     const std::function<bool(const RadialState&, double,
                                              int)>& on_step,
                     std::vector<RadialState>* snapshots) {
    std::sort(stop_times.begin(), stop_times.end());
    size_t next_stop = 0;
    while (next_stop < stop_times.size() &&
           stop_times[next_stop] <= state.t + 1e-300)
        ++next_stop;
    double dt = cfg.dt_init;
    const double dt_floor = cfg.dt_init * cfg.dt_min_rel;
    long steps = 0;
    while (true) {
        if (++steps > cfg.max_steps)
            fail(ErrorCode::MaxStepsExceeded, "step limit exceeded");
        double dt_try = dt;
        bool hit_stop = false;
        if (next_stop < stop_times.size() &&
            state.t + dt_try >= stop_times[next_stop] - 1e-300) {
            dt_try = stop_times[next_stop] - state.t;
            hit_stop = true;
        }
        RadialState next;
        int iters = 0;
        try {
            next = step(state, dt_try, &iters);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NewtonStalled &&
                e.code() != ErrorCode::NegativeIterate)
                throw;
            dt *= cfg.dt_shrink;
            if (dt < dt_floor)
                fail(ErrorCode::NewtonStalled,
                     "time step collapsed without convergence");
            continue;
        }
        const double s_old = state.sup();
        const double s_new = next.sup();
        state = std::move(next);
        if (hit_stop) {
            if (snapshots) snapshots->push_back(state);
            ++next_stop;
        }
        if (!on_step(state, dt_try, iters)) return;
        // iteration-count band, then the relative-change cap
        if (!hit_stop) {
            if (iters <= cfg.target_iters_low) dt *= cfg.dt_growth;
            else if (iters > cfg.target_iters_high) dt *= cfg.dt_shrink;
        }
        if (s_old > 0.0) {
            double rel = std::abs(s_new - s_old) / s_old;
            if (rel > cfg.rel_change_cap)
                dt *= std::max(0.1, 0.7 * cfg.rel_change_cap / rel);
        }
    }
}

}  // namespace

ExtinctionRecord simulate_to_extinction(const RadialState& init,
                                        const SolverConfig& cfg,
                                        std::vector<RadialState>* snapshots,
                                        const std::vector<double>*
                                        snapshot_times) {
    init.validate();
    if (init.form != StateForm::WForm)
        fail(ErrorCode::ConfigInvalid, "extinction runs use the w form");
    const double sup0 = init.sup();
    if (!(sup0 > 0.0))
        fail(ErrorCode::ConfigInvalid, "initial data must be positive");

    ExtinctionRecord rec;
    rec.samples.push_back({init.t, sup0, init.center(), 0.0, 0});
    const double level_ratio = std::pow(10.0, -1.0 / cfg.records_per_decade);
    double level = sup0 * level_ratio;
    const double floor = cfg.floor_rel * sup0;

    RadialState state = init;
    adaptive_evolve(
        state, cfg,
        [&cfg](const RadialState& s, double dt, int* it) {
            return step_fast_diffusion(s, dt, cfg, it);
        },
        snapshot_times ? *snapshot_times : std::vector<double>{},
        [&](const RadialState& s, double dt, int iters) {
            const double sup = s.sup();
            if (sup <= level) {
                rec.samples.push_back({s.t, sup, s.center(), dt, iters});
                while (level >= sup) level *= level_ratio;
            }
            return sup > floor;
        },
        snapshots);
    rec.samples.push_back(
        {state.t, state.sup(), state.center(), 0.0, 0});
    return rec;
}

Trajectory simulate_yamabe(const RadialState& init, double t_end,
                           const std::vector<double>& snapshot_times,
                           double coupling, const SolverConfig& cfg) {
    init.validate();
    if (init.form != StateForm::UForm)
        fail(ErrorCode::ConfigInvalid, "simulate_yamabe needs a u state");
    Trajectory traj;
    traj.series.push_back({init.t, init.sup(), init.center(), 0.0, 0});
    SolverConfig c = cfg;
    if (coupling > 0.0) c.dt_init = std::min(c.dt_init, 0.35 / coupling);
    RadialState state = init;
    std::vector<double> stops = snapshot_times;
    stops.push_back(t_end);
    adaptive_evolve(
        state, c,
        [&c, coupling](const RadialState& s, double dt, int* it) {
            return step_yamabe(s, dt, coupling, c, it);
        },
        stops,
        [&](const RadialState& s, double dt, int iters) {
            traj.series.push_back({s.t, s.sup(), s.center(), dt, iters});
            return s.t < t_end - 1e-300;
        },
        &traj.snapshots);
    return traj;
}

RadialState transform_w_to_u(const RadialState& state, double T) {
    state.validate();
    if (state.form != StateForm::WForm)
        fail(ErrorCode::ConfigInvalid, "transform_w_to_u needs a w state");
    const double tau = state.t;
    if (!(tau >= 0.0 && tau < T))
        fail(ErrorCode::TimeOutOfRange, "need 0 <= tau < T");
    RadialState out = state;
    out.form = StateForm::UForm;
    out.t = -std::log1p(-tau / T);
    const double m = state.m;
    const double factor = std::pow(T - tau, -m / (1.0 - m));
    for (auto& v : out.values) v = factor * std::pow(v, m);
    return out;
}

RadialState transform_u_to_w(const RadialState& state, double T) {
    state.validate();
    if (state.form != StateForm::UForm)
        fail(ErrorCode::ConfigInvalid, "transform_u_to_w needs a u state");
    if (!(state.t >= 0.0))
        fail(ErrorCode::TimeOutOfRange, "need t >= 0");
    RadialState out = state;
    out.form = StateForm::WForm;
    out.t = -T * std::expm1(-state.t);
    const double m = state.m;
    const double rem = T * std::exp(-state.t);   // T - tau
    const double factor = std::pow(rem, 1.0 / (1.0 - m));
    for (auto& v : out.values) v = factor * std::pow(v, 1.0 / m);
    return out;
}

RadialState init_from_ansatz(const AnsatzConfig& cfg, const ScalingLaw& law,
                             double t0, const RadialGrid& grid,
                             StateForm form, double theta,
                             const GreensConfig& gcfg) {
    cfg.validate();
    grid.validate();
    if (cfg.k != 1 || cfg.domain.kind != DomainKind::UnitBall ||
        norm(cfg.q[0]) != 0.0)
        fail(ErrorCode::AnsatzNotRadial,
             "radial runs need a single centered bubble in the ball");
    if (std::abs(cfg.domain.radius - grid.R) > 1e-12 * grid.R)
        fail(ErrorCode::ConfigInvalid, "grid radius must match the domain");
    if (grid.n != cfg.n)
        fail(ErrorCode::ConfigInvalid, "grid dimension mismatch");

    AnsatzEvaluator ev(cfg, law, gcfg);
    RadialState state;
    state.grid = std::make_shared<RadialGrid>(grid);
    state.form = StateForm::UForm;
    state.m = critical_m(cfg.n);
    state.t = t0;
    state.values.resize(grid.nodes.size());
    Point x(cfg.n, 0.0);
    for (size_t i = 0; i < grid.nodes.size(); ++i) {
        x[0] = grid.nodes[i];
        double u = (i + 1 == grid.nodes.size()) ? 0.0 : ev.z(x, t0);
        state.values[i] = std::max(u, 0.0);
    }
    state.values.back() = 0.0;
    if (form == StateForm::UForm) return state;
    // inverse transformation with remaining-lifetime scale theta
    RadialState w = state;
    w.form = StateForm::WForm;
    w.t = 0.0;
    const double m = state.m;
    const double factor = std::pow(theta, 1.0 / (1.0 - m));
    for (auto& v : w.values) v = factor * std::pow(v, 1.0 / m);
    return w;
}

}  // namespace fdlab
