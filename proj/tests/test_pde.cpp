#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fdlab/asymptotics.hpp"
#include "fdlab/bubble.hpp"
#include "fdlab/oracles.hpp"
#include "fdlab/pde.hpp"

using namespace fdlab;

namespace {

RadialState state_from(const RadialGrid& grid, double m, StateForm form,
                       const std::function<double(double)>& f) {
    RadialState s;
    s.grid = std::make_shared<RadialGrid>(grid);
    s.form = form;
    s.m = m;
    s.t = 0.0;
    s.values.resize(grid.nodes.size());
    for (size_t i = 0; i < grid.nodes.size(); ++i)
        s.values[i] = std::max(0.0, f(grid.nodes[i]));
    s.values.back() = 0.0;
    return s;
}

RadialState separable_state(int n, double m, int M) {
    RadialProfile V = oracles::separable_profile(n, m, 1.0);
    RadialGrid grid = RadialGrid::make(n, 1.0, M, GridStretching::Uniform);
    return state_from(grid, m, StateForm::WForm, [&](double r) {
        return std::pow(V.value(r), 1.0 / m);
    });
}

double mass(const RadialState& s) {
    double acc = 0.0;
    const auto& r = s.grid->nodes;
    for (size_t i = 0; i + 1 < r.size(); ++i)
        acc += 0.5 * (s.values[i] * std::pow(r[i], s.grid->n - 1) +
                      s.values[i + 1] * std::pow(r[i + 1], s.grid->n - 1)) *
               (r[i + 1] - r[i]);
    return acc;
}

}  // namespace

TEST_CASE("grids") {
    CHECK_THROWS_AS(RadialGrid::make(3, 1.0, 4, GridStretching::Uniform),
                    Error);
    RadialGrid g = RadialGrid::make(3, 2.0, 64, GridStretching::Graded);
    CHECK(g.nodes.front() == 0.0);
    CHECK(g.nodes.back() == 2.0);
    for (size_t i = 1; i < g.nodes.size(); ++i)
        CHECK(g.nodes[i] > g.nodes[i - 1]);
    // grading clusters the first cell well below the uniform spacing but
    // keeps it above the rounding floor of the stencil weights
    RadialGrid u = RadialGrid::make(3, 2.0, 64, GridStretching::Uniform);
    CHECK(g.nodes[1] < 0.3 * u.nodes[1]);
    CHECK(g.nodes[1] > 1e-6);
}

TEST_CASE("zero data is a fixed point") {
    RadialGrid grid = RadialGrid::make(3, 1.0, 32, GridStretching::Uniform);
    RadialState z = state_from(grid, 0.5, StateForm::WForm,
                               [](double) { return 0.0; });
    RadialState next = step_fast_diffusion(z, 0.1);
    for (double v : next.values) CHECK(v == 0.0);
}

TEST_CASE("separable decay factor is reproduced to O(dt^2)") {
    RadialState st = separable_state(3, 0.5, 1024);
    double errs[2];
    double dts[2] = {8e-3, 4e-3};
    for (int k = 0; k < 2; ++k) {
        RadialState next = step_fast_diffusion(st, dts[k]);
        const double ratio = next.center() / st.center();
        const double exact = std::pow(1.0 - dts[k], 2.0);   // 1/(1-m) = 2
        errs[k] = std::abs(ratio - exact);
        CHECK(errs[k] <= 3.0 * dts[k] * dts[k]);
    }
    CHECK(errs[0] / errs[1] >= 2.5);   // ~4 for a first-order method
}

TEST_CASE("discrete comparison principle") {
    // ordered initial data remain ordered under the implicit flow
    RadialGrid grid = RadialGrid::make(3, 1.0, 101, GridStretching::Uniform);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> amp(0.3, 2.0);
    std::uniform_real_distribution<double> wid(1.0, 4.0);
    std::uniform_real_distribution<double> gap(0.05, 0.6);
    for (int pair = 0; pair < 100; ++pair) {
        const double a = amp(rng), p1 = wid(rng), g = gap(rng);
        RadialState lo = state_from(grid, 0.5, StateForm::WForm,
                                    [&](double r) {
                                        return a * std::pow(1.0 - r * r, p1);
                                    });
        RadialState hi = state_from(grid, 0.5, StateForm::WForm,
                                    [&](double r) {
                                        return (a + g) *
                                               std::pow(1.0 - r * r, p1) *
                                               (1.0 + 0.2 * r);
                                    });
        bool ordered = true;
        for (size_t i = 0; i < lo.values.size(); ++i)
            ordered = ordered && lo.values[i] <= hi.values[i] + 1e-15;
        REQUIRE(ordered);
        for (int s = 0; s < 100; ++s) {
            lo = step_fast_diffusion(lo, 2e-4);
            hi = step_fast_diffusion(hi, 2e-4);
        }
        for (size_t i = 0; i < lo.values.size(); ++i)
            CHECK(lo.values[i] <= hi.values[i] + 1e-12);
    }
}

TEST_CASE("mass decreases under Dirichlet flow") {
    RadialState st = separable_state(3, 0.5, 256);
    double m0 = mass(st);
    for (int s = 0; s < 50; ++s) {
        st = step_fast_diffusion(st, 1e-3);
        double m1 = mass(st);
        CHECK(m1 <= m0 + 1e-14);
        m0 = m1;
    }
}

TEST_CASE("transformation is an exact inverse pair") {
    RadialGrid grid = RadialGrid::make(3, 1.0, 64, GridStretching::Uniform);
    RadialState w = state_from(grid, critical_m(3), StateForm::WForm,
                               [](double r) { return 2.0 * (1.0 - r * r); });
    w.t = 0.41;
    const double T = 1.7;
    RadialState u = transform_w_to_u(w, T);
    RadialState back = transform_u_to_w(u, T);
    CHECK(std::abs(back.t - w.t) <= 1e-14);
    for (size_t i = 0; i < w.values.size(); ++i)
        CHECK(std::abs(back.values[i] - w.values[i]) <=
              1e-14 * std::max(1.0, w.values[i]));

    CHECK_THROWS_AS(transform_w_to_u(w, 0.3), Error);
    RadialState bad_u = u;
    bad_u.t = -0.2;
    CHECK_THROWS_AS(transform_u_to_w(bad_u, T), Error);

    // a separable solution maps to a time-independent u profile
    const double m = 0.5;
    RadialProfile V = oracles::separable_profile(3, m, 1.0);
    auto wth = [&](double tau) {
        RadialState s = state_from(grid, m, StateForm::WForm, [&](double r) {
            return std::pow(1.0 - tau, 1.0 / (1.0 - m)) *
                   std::pow(V.value(r), 1.0 / m);
        });
        s.t = tau;
        return transform_w_to_u(s, 1.0);
    };
    RadialState u1 = wth(0.2), u2 = wth(0.7);
    for (size_t i = 0; i < u1.values.size(); ++i)
        CHECK(std::abs(u1.values[i] - u2.values[i]) <= 1e-12);
}

TEST_CASE("extinction run on bump data") {
    RadialGrid grid = RadialGrid::make(3, 1.0, 256, GridStretching::Uniform);
    RadialState st = state_from(grid, 0.5, StateForm::WForm, [](double r) {
        return 10.0 * std::pow(1.0 - r * r, 2.0);
    });
    SolverConfig cfg;
    cfg.dt_init = 1e-5;
    ExtinctionRecord rec = simulate_to_extinction(st, cfg);
    REQUIRE(rec.samples.size() > 40);

    // monotone decay of the sup after the transient
    for (size_t i = 5; i + 1 < rec.samples.size(); ++i)
        CHECK(rec.samples[i + 1].sup <= rec.samples[i].sup);

    auto [T, ci] = estimate_T(rec, 0.5);
    CHECK(T > rec.samples.back().tau);
    CHECK(ci < 1e-3 * T);

    // Berryman-Holland exponent to 10% already at this resolution
    RateFit fit = fit_rate(rec, T, RateModel::PurePower, {});
    CHECK(fit.power == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("yamabe stationary profile is a fixed point to FD order") {
    const int n = 3;
    const double m = 0.5;   // supercritical family used as the benchmark
    const double coupling = 1.0 / (1.0 - m);
    RadialProfile V = oracles::separable_profile(n, m, 1.0);
    RadialGrid grid = RadialGrid::make(n, 1.0, 512, GridStretching::Uniform);
    RadialState u = state_from(grid, m, StateForm::UForm,
                               [&](double r) { return V.value(r); });

    // discrete elliptic residual of the profile bounds the drift of the
    // evolved quantity u^q (the equation advances u^q, not u)
    double resid = 0.0;
    const auto& r = grid.nodes;
    for (size_t i = 1; i + 1 < r.size(); ++i) {
        double h = r[1] - r[0];
        double lap = (u.values[i + 1] - 2 * u.values[i] + u.values[i - 1]) /
                         (h * h) +
                     (n - 1) / r[i] * (u.values[i + 1] - u.values[i - 1]) /
                         (2 * h);
        resid = std::max(resid,
                         std::abs(lap + coupling *
                                            std::pow(u.values[i], 1.0 / m)));
    }
    const double dt = 1e-3;
    RadialState next = step_yamabe(u, dt, coupling);
    double drift = 0.0;
    for (size_t i = 0; i < u.values.size(); ++i)
        drift = std::max(drift, std::abs(std::pow(next.values[i], 1.0 / m) -
                                         std::pow(u.values[i], 1.0 / m)));
    CHECK(drift / dt <= 3.0 * resid + 1e-6);
}

TEST_CASE("init from ansatz") {
    const int n = 3;
    AnsatzConfig cfg;
    cfg.n = n;
    cfg.domain = DomainSpec::unit_ball(n);
    cfg.k = 1;
    cfg.q = {Point(n, 0.0)};
    GreensMatrix mtx = robin_matrix(cfg.domain, cfg.q);
    cfg.b = solve_b({1, mtx, n});
    cfg.eps_cutoff = 0.4;
    ScalingLaw law = ScalingLaw::make(n, 50.0);
    RadialGrid grid = RadialGrid::make(n, 1.0, 128, GridStretching::Graded);

    RadialState u = init_from_ansatz(cfg, law, 50.0, grid, StateForm::UForm);
    CHECK(u.values.back() == 0.0);
    for (size_t i = 0; i + 1 < u.values.size(); ++i) CHECK(u.values[i] > 0.0);
    // center value mu^{-(n-2)/2} alpha_n (1 + O(mu^{n-2}))
    const double mu = cfg.b[0] * mu0(50.0, law);
    const double lead = std::pow(mu, -0.5 * (n - 2)) * alpha_n(n);
    CHECK(std::abs(u.center() - lead) <= 5.0 * mu * lead);

    RadialState w = init_from_ansatz(cfg, law, 50.0, grid, StateForm::WForm,
                                     2.0);
    CHECK(w.form == StateForm::WForm);
    CHECK(w.t == 0.0);
    // inverse transformation with lifetime scale theta = 2
    const double expect =
        std::pow(u.center(), 1.0 / u.m) * std::pow(2.0, 1.0 / (1.0 - u.m));
    CHECK(w.center() == doctest::Approx(expect).epsilon(1e-12));

    AnsatzConfig off = cfg;
    off.q = {Point{0.2, 0.0, 0.0}};
    CHECK_THROWS_AS(
        init_from_ansatz(off, law, 50.0, grid, StateForm::UForm), Error);
}

TEST_CASE("dual simulation agrees through the transformation") {
    // coarse version of the equivalence run: one matched time
    const int n = 3;
    const double m = critical_m(n);
    RadialGrid grid = RadialGrid::make(n, 1.0, 128, GridStretching::Uniform);
    RadialState w0 = state_from(grid, m, StateForm::WForm, [](double r) {
        return 5.0 * std::pow(1.0 - r * r, 3.0);
    });
    SolverConfig cfg;
    cfg.dt_init = 1e-6;
    cfg.rel_change_cap = 0.001;
    ExtinctionRecord rec = simulate_to_extinction(w0, cfg);
    auto [T, ci] = estimate_T(rec, m);

    const double tau_star = 0.4 * T;
    std::vector<double> taus{tau_star};
    std::vector<RadialState> snaps;
    simulate_to_extinction(w0, cfg, &snaps, &taus);
    REQUIRE(snaps.size() == 1);
    RadialState via_w = transform_w_to_u(snaps[0], T);

    RadialState u0 = transform_w_to_u(w0, T);
    const double t_star = -std::log1p(-tau_star / T);
    Trajectory traj =
        simulate_yamabe(u0, t_star, {t_star}, 1.0 / (1.0 - m), cfg);
    REQUIRE(!traj.snapshots.empty());
    double mism = 0.0;
    for (size_t i = 0; i < via_w.values.size(); ++i)
        mism = std::max(mism, std::abs(via_w.values[i] -
                                       traj.snapshots[0].values[i]));
    CHECK(mism <= 0.02 * via_w.sup());
}
