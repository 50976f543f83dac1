// criterion 11: dual simulations agree through the pointwise
// transformation at matched times
#include <cmath>
#include <memory>

#include "criteria.hpp"
#include "fdlab/asymptotics.hpp"
#include "fdlab/bubble.hpp"
#include "fdlab/pde.hpp"

using namespace fdlab;

namespace {

struct WRun {
    double T;
    RadialState w0;
    std::vector<RadialState> u_views;   // transformed snapshots
    std::vector<double> taus, ts;
};

WRun run_w(int n, int M, double cap, const AnsatzConfig& cfg,
           const ScalingLaw& law, double t0) {
    const double m = critical_m(n);
    RadialGrid grid = RadialGrid::make(n, 1.0, M, GridStretching::Graded);
    WRun out;
    out.w0 = init_from_ansatz(cfg, law, t0, grid, StateForm::WForm);
    SolverConfig scfg;
    scfg.dt_init = 1e-6;
    scfg.rel_change_cap = cap;
    ExtinctionRecord pre = simulate_to_extinction(out.w0, scfg);
    out.T = estimate_T(pre, m).first;
    for (double f : {0.2, 0.35, 0.5, 0.65, 0.8})
        out.taus.push_back(f * out.T);
    std::vector<RadialState> snaps;
    simulate_to_extinction(out.w0, scfg, &snaps, &out.taus);
    for (auto& ws : snaps) out.u_views.push_back(transform_w_to_u(ws, out.T));
    for (double tau : out.taus) out.ts.push_back(-std::log1p(-tau / out.T));
    return out;
}

double supdiff(const RadialState& a, const RadialState& b) {
    double d = 0.0;
    for (size_t k = 0; k < a.values.size(); ++k)
        d = std::max(d, std::abs(a.values[k] - b.values[k]));
    return d;
}

}  // namespace

int main() {
    CriterionLog log;
    char buf[240];

    const int n = 3;
    const int M = 512;
    const double t0 = 1.0;
    const double m = critical_m(n);

    DomainSpec ball = DomainSpec::unit_ball(n);
    GreensMatrix inter = robin_matrix(ball, {Point(n, 0.0)});
    auto b = solve_b({1, inter, n});
    ScalingLaw law = ScalingLaw::make(n, t0, MuConvention::WithP);
    AnsatzConfig cfg;
    cfg.n = n;
    cfg.domain = ball;
    cfg.k = 1;
    cfg.q = {Point(n, 0.0)};
    cfg.b = b;
    cfg.eps_cutoff = 0.4;

    WRun fine = run_w(n, M, 0.002, cfg, law, t0);
    WRun dt_half = run_w(n, M, 0.001, cfg, law, t0);
    WRun coarse = run_w(n, M / 2, 0.002, cfg, law, t0);

    // direct u-form evolution of the exact image equation
    RadialState u0 = transform_w_to_u(fine.w0, fine.T);
    const double coupling = 1.0 / (1.0 - m);
    SolverConfig ucfg;
    ucfg.dt_init = 1e-6;
    ucfg.rel_change_cap = 0.002;
    Trajectory ua = simulate_yamabe(u0, fine.ts.back(), fine.ts, coupling,
                                    ucfg);
    SolverConfig ucfg2 = ucfg;
    ucfg2.rel_change_cap = 0.001;
    Trajectory ub = simulate_yamabe(u0, fine.ts.back(), fine.ts, coupling,
                                    ucfg2);

    bool ok = ua.snapshots.size() >= 5 && ub.snapshots.size() >= 5;
    std::string detail;
    for (size_t i = 0; i < 5 && ok; ++i) {
        const double mism = supdiff(fine.u_views[i], ua.snapshots[i]);
        // discretization tolerance: first-order Richardson signatures of
        // both time integrations plus the spatial halving signature
        const double dt_w = supdiff(fine.u_views[i], dt_half.u_views[i]);
        const double dt_u = supdiff(ua.snapshots[i], ub.snapshots[i]);
        double sp = 0.0;
        for (size_t k = 0; k < coarse.u_views[i].values.size(); ++k)
            sp = std::max(sp, std::abs(coarse.u_views[i].values[k] -
                                       fine.u_views[i].values[2 * k]));
        const double tol = 2.0 * (dt_w + dt_u) + sp;
        ok = ok && mism <= 10.0 * tol;
        char line[120];
        std::snprintf(line, sizeof line, "tau/T=%.2f: %.2e vs tol %.2e",
                      fine.taus[i] / fine.T, mism, tol);
        detail += std::string(line) + (i + 1 < 5 ? "; " : "");
    }
    std::snprintf(buf, sizeof buf, "sup-norm mismatch within 10x the "
                                   "discretization tolerance: %s",
                  detail.c_str());
    log.result(11, "transformation equivalence", ok, buf);
    return log.exit_code();
}
