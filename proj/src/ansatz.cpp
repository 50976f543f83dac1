#include "fdlab/ansatz.hpp"

#include <cmath>
#include <mutex>

#include "fdlab/bubble.hpp"

namespace fdlab {

static std::mutex g_ansatz_cache_mutex;

void AnsatzConfig::validate() const {
    domain.validate();
    if (domain.n != n)
        fail(ErrorCode::ConfigInvalid, "dimension mismatch with domain");
    if (k < 1 || static_cast<int>(q.size()) != k ||
        static_cast<int>(b.size()) != k)
        fail(ErrorCode::ConfigInvalid, "need k points q and k coefficients b");
    if (!gamma_tilde.empty() && static_cast<int>(gamma_tilde.size()) != k)
        fail(ErrorCode::ConfigInvalid, "gamma_tilde must have k entries");
    double sep = 1e300;
    for (int j = 0; j < k; ++j) {
        if (!domain.contains(q[j]))
            fail(ErrorCode::PointOutsideDomain, "q_j must be interior");
        if (!(b[j] > 0.0)) fail(ErrorCode::NonpositiveB, "b_j must be positive");
        sep = std::min(sep, domain.boundary_distance(q[j]));
        for (int i = j + 1; i < k; ++i) {
            double d = dist(q[i], q[j]);
            if (d == 0.0)
                fail(ErrorCode::DuplicatePoints, "blow-up points coincide");
            sep = std::min(sep, d);
        }
    }
    if (!(eps_cutoff > 0.0 && eps_cutoff < 0.5 * sep))
        fail(ErrorCode::ConfigInvalid,
             "eps_cutoff must lie in (0, min(separation, boundary dist)/2)");
}

double cutoff_eta0(double s, double eps) {
    if (s <= 0.5 * eps) return 1.0;
    if (s >= eps) return 0.0;
    const double x = (s - 0.5 * eps) / (0.5 * eps);
    return 1.0 - x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
}

AnsatzEvaluator::AnsatzEvaluator(const AnsatzConfig& cfg,
                                 const ScalingLaw& law,
                                 const GreensConfig& greens_cfg)
    : cfg_(cfg), law_(law), gcfg_(greens_cfg) {
    cfg_.validate();
    if (law_.n != cfg_.n)
        fail(ErrorCode::ConfigInvalid, "scaling law dimension mismatch");
    if (cfg_.domain.kind == DomainKind::Box && !cfg_.use_mu_corrected_H) {
        box_h_.resize(cfg_.k);
        for (int j = 0; j < cfg_.k; ++j) {
            box_h_[j] = std::make_shared<BoxHarmonicSolver>(cfg_.domain,
                                                            gcfg_.box_nodes);
            const Point y = cfg_.q[j];
            const int n = cfg_.n;
            box_h_[j]->solve([&](const Point& bpt) {
                return alpha_n(n) * std::pow(dist(bpt, y), 2 - n);
            });
        }
    }
    if (cfg_.gamma_tilde.empty()) {
        GreensMatrix inter = robin_matrix(cfg_.domain, cfg_.q, gcfg_);
        gamma_.resize(cfg_.k);
        for (int j = 0; j < cfg_.k; ++j)
            gamma_[j] = fitted_gamma_tilde(j, law_.t0, cfg_, law_, inter);
    } else {
        gamma_ = cfg_.gamma_tilde;
    }
}

double AnsatzEvaluator::ball_mu_h(int j, const Point& x, double mu) const {
    std::shared_ptr<BallAxisymHarmonicSolver> solver;
    {
        std::lock_guard<std::mutex> lock(g_ansatz_cache_mutex);
        for (const auto& e : mu_cache_)
            if (e.j == j && std::abs(e.mu - mu) <= 1e-13 * mu)
                solver = e.solver;
        if (!solver) {
            solver = std::make_shared<BallAxisymHarmonicSolver>(
                cfg_.n, cfg_.domain.radius, gcfg_.ball_nr, gcfg_.ball_ntheta,
                gcfg_.sor_tol, gcfg_.sor_max_iters);
            const Point& q = cfg_.q[j];
            const double a = cfg_.domain.radius;
            const double rq = norm(q);
            const int n = cfg_.n;
            solver->solve([&](double theta) {
                double d2 = a * a - 2.0 * a * rq * std::cos(theta) + rq * rq;
                return alpha_n(n) *
                       std::pow(mu * mu + d2, -0.5 * double(n - 2));
            });
            mu_cache_.push_back({j, mu, solver});
        }
    }
    const Point& q = cfg_.q[j];
    const double rq = norm(q);
    const double rx = norm(x);
    double ct = 1.0;
    if (rq > 0.0 && rx > 0.0) {
        double dot = 0.0;
        for (size_t i = 0; i < x.size(); ++i) dot += x[i] * q[i];
        ct = std::clamp(dot / (rq * rx), -1.0, 1.0);
    }
    return solver->value(rx, std::acos(ct));
}

double AnsatzEvaluator::h_term(int j, const Point& x, double mu) const {
    if (!cfg_.use_mu_corrected_H) {
        if (cfg_.domain.kind == DomainKind::UnitBall)
            return ball_regular_part(cfg_.n, cfg_.domain.radius, x, cfg_.q[j]);
        return box_h_[j]->value(x);
    }
    if (cfg_.domain.kind == DomainKind::UnitBall) return ball_mu_h(j, x, mu);
    // mu-corrected box data: dedicated solve per (j, mu), cached like the
    // ball path but with the box solver
    std::shared_ptr<BoxHarmonicSolver> solver;
    {
        std::lock_guard<std::mutex> lock(g_ansatz_cache_mutex);
        for (const auto& e : box_mu_cache_)
            if (e.j == j && std::abs(e.mu - mu) <= 1e-13 * mu)
                solver = e.solver;
        if (!solver) {
            solver = std::make_shared<BoxHarmonicSolver>(cfg_.domain,
                                                         gcfg_.box_nodes);
            const Point& q = cfg_.q[j];
            const int n = cfg_.n;
            solver->solve([&](const Point& bpt) {
                double d = dist(bpt, q);
                return alpha_n(n) *
                       std::pow(mu * mu + d * d, -0.5 * double(n - 2));
            });
            box_mu_cache_.push_back({j, mu, solver});
        }
    }
    return solver->value(x);
}

double AnsatzEvaluator::tilde_z(const Point& x, const std::vector<double>& mu,
                                const std::vector<Point>& xi) const {
    double s = 0.0;
    const double e = 0.5 * (cfg_.n - 2);
    for (int j = 0; j < cfg_.k; ++j) {
        s += bubble_U_scaled(x, mu[j], xi[j], cfg_.n);
        s -= std::pow(mu[j], e) * h_term(j, x, mu[j]);
    }
    return s;
}

double AnsatzEvaluator::tilde_z_at(const Point& x, double t) const {
    std::vector<double> mu(cfg_.k);
    for (int j = 0; j < cfg_.k; ++j) mu[j] = mu_j(j, t);
    return tilde_z(x, mu, cfg_.q);
}

const RadialProfile& AnsatzEvaluator::p0() const {
    {
        std::lock_guard<std::mutex> lock(g_ansatz_cache_mutex);
        if (!p0_) {
            std::vector<double> grid;
            grid.push_back(0.0);
            const int m = 1200;
            for (int i = 0; i <= m; ++i)
                grid.push_back(std::pow(10.0, -4.0 + 6.62 * i / m));
            p0_ = std::make_shared<const RadialProfile>(
                correction_p0(grid, cfg_.n));
        }
    }
    return *p0_;
}

double AnsatzEvaluator::z(const Point& x, double t) const {
    double s = tilde_z_at(x, t);
    bool any_gamma = false;
    for (double g : gamma_)
        if (g != 0.0) any_gamma = true;
    if (!any_gamma) return s;
    const RadialProfile& prof = p0();
    const double m0 = mu0(t, law_);
    const double e = 0.5 * (cfg_.n - 2);
    for (int j = 0; j < cfg_.k; ++j) {
        const double d = dist(x, cfg_.q[j]);
        const double eta = cutoff_eta0(d, cfg_.eps_cutoff);
        if (eta == 0.0) continue;
        const double mu = mu_j(j, t);
        s += eta * gamma_[j] * std::pow(m0, cfg_.n - 2) * std::pow(mu, -e) *
             prof.value(d / mu);
    }
    return s;
}

double error_E0j(double y_radius, int j, double t, const AnsatzConfig& cfg,
                 const ScalingLaw& law, const GreensMatrix& interactions,
                 MuConvention conv) {
    const int n = cfg.n;
    const double p = critical_p(n);
    const double up1 = std::pow(bubble_U_radial(y_radius, n), p - 1.0);
    const double m0 = mu0(t, law);
    const double m0dot = mu0_dot(t, law);
    const double muj = cfg.b[j] * m0;
    const double mujdot = cfg.b[j] * m0dot;
    double inter = -std::pow(muj, n - 3) * interactions.at(j, j);
    for (int i = 0; i < cfg.k; ++i) {
        if (i == j) continue;
        const double mui = cfg.b[i] * m0;
        // off-diagonal entries store -G
        inter += std::pow(muj, 0.5 * (n - 2) - 1.0) *
                 std::pow(mui, 0.5 * (n - 2)) * (-interactions.at(j, i));
    }
    const double pfac = (conv == MuConvention::WithP) ? p : 1.0;
    return p * up1 * inter + pfac * mujdot / (muj * muj) * up1 *
                                 kernel_Z_dilation_radial(y_radius, n);
}

double fitted_gamma_tilde(int j, double t, const AnsatzConfig& cfg,
                          const ScalingLaw& law,
                          const GreensMatrix& interactions,
                          MuConvention conv) {
    auto [c1, c2] = constants_c1_c2(cfg.n);
    const double m0 = mu0(t, law);
    const double muj = cfg.b[j] * m0;
    double num = 0.0, den = 0.0;
    const int samples = 240;
    for (int i = 0; i <= samples; ++i) {
        const double r = std::pow(10.0, -2.0 + 4.0 * i / samples);
        const double lhs =
            muj * error_E0j(r, j, t, cfg, law, interactions, conv);
        const double rhs = -std::pow(m0, cfg.n - 2) *
                           q0_source(r, cfg.n, c1, c2);
        num += lhs * rhs;
        den += rhs * rhs;
    }
    return num / den;
}

double ansatz_tilde_z(const Point& x, const std::vector<double>& mu,
                      const std::vector<Point>& xi, const AnsatzConfig& cfg,
                      const ScalingLaw& law) {
    AnsatzConfig c = cfg;
    c.gamma_tilde.assign(cfg.k, 0.0);
    AnsatzEvaluator ev(c, law);
    if (!cfg.domain.contains(x) && cfg.domain.boundary_distance(x) < -1e-12)
        fail(ErrorCode::PointOutsideDomain, "x outside domain");
    return ev.tilde_z(x, mu, xi);
}

double full_ansatz_z(const Point& x, double t, const AnsatzConfig& cfg,
                     const ScalingLaw& law) {
    AnsatzEvaluator ev(cfg, law);
    if (!cfg.domain.contains(x) && cfg.domain.boundary_distance(x) < -1e-12)
        fail(ErrorCode::PointOutsideDomain, "x outside domain");
    return ev.z(x, t);
}

}  // namespace fdlab
