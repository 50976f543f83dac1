#include "fdlab/residual.hpp"

#include <cmath>
#include <numbers>

#include "fdlab/bubble.hpp"
#include "fdlab/quadrature.hpp"

namespace fdlab {

static double residual_once(const FieldSampler& u, const Point& x, double t,
                            double h_x, double h_t, int n, double* scale) {
    const double p = critical_p(n);
    const double u0 = u(x, t);
    double lap = 0.0;
    Point xp = x;
    for (int a = 0; a < n; ++a) {
        const double xa = x[a];
        xp[a] = xa + 2.0 * h_x;
        const double up2 = u(xp, t);
        xp[a] = xa + h_x;
        const double up1 = u(xp, t);
        xp[a] = xa - h_x;
        const double um1 = u(xp, t);
        xp[a] = xa - 2.0 * h_x;
        const double um2 = u(xp, t);
        xp[a] = xa;
        lap += (-up2 + 16.0 * up1 - 30.0 * u0 + 16.0 * um1 - um2) /
               (12.0 * h_x * h_x);
    }
    const double dtp = (std::pow(u(x, t + h_t), p) -
                        std::pow(u(x, t - h_t), p)) /
                       (2.0 * h_t);
    const double upow = std::pow(u0, p);
    if (scale)
        *scale = std::max({std::abs(lap), std::abs(dtp), std::abs(upow)});
    return -dtp + lap + upow;
}

double residual_S(const FieldSampler& u, const Point& x, double t, double h_x,
                  double h_t, int n, const ResidualOptions& opts) {
    double scale = 0.0;
    const double s = residual_once(u, x, t, h_x, h_t, n, &scale);
    if (opts.richardson_check) {
        const double s2 =
            residual_once(u, x, t, 0.5 * h_x, 0.5 * h_t, n, nullptr);
        if (std::abs(s - s2) >
            opts.richardson_tol * std::max(scale, std::abs(s2)))
            fail(ErrorCode::StepTooLarge,
                 "finite-difference steps do not resolve the field");
        return s2;
    }
    return s;
}

static bool radial_single_bubble(const AnsatzConfig& cfg) {
    return cfg.k == 1 && cfg.domain.kind == DomainKind::UnitBall &&
           norm(cfg.q[0]) == 0.0;
}

double project_field(const FieldSampler& f, int l, int j, double t,
                     const AnsatzEvaluator& ev, double R,
                     const ProjectionOptions& opts) {
    const AnsatzConfig& cfg = ev.config();
    const int n = cfg.n;
    if (l < 1 || l > n + 1)
        fail(ErrorCode::IndexOutOfRange, "projection index out of range");
    if (j < 0 || j >= cfg.k)
        fail(ErrorCode::IndexOutOfRange, "bubble index out of range");
    const double mu = ev.mu_j(j, t);
    if (mu * R > 0.5 * cfg.eps_cutoff * (1.0 + 1e-12))
        fail(ErrorCode::RadiusExceedsCutoff,
             "mu_j R must stay below eps/2");
    const double pref = std::pow(mu, 0.5 * double(n + 2));
    const Point& q = cfg.q[j];

    auto sample_S = [&](const Point& y) {
        Point x(n);
        for (int a = 0; a < n; ++a) x[a] = q[a] + mu * y[a];
        return f(x, t);
    };

    if (n == 3) {
        const GaussRule& gl = gauss_legendre(opts.theta_nodes);
        auto radial = [&](double r) {
            if (r == 0.0) return 0.0;
            std::vector<double> terms;
            terms.reserve(gl.nodes.size() * opts.phi_nodes);
            Point y(3);
            for (size_t it = 0; it < gl.nodes.size(); ++it) {
                const double c = gl.nodes[it];
                const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
                for (int ip = 0; ip < opts.phi_nodes; ++ip) {
                    const double phi =
                        2.0 * std::numbers::pi * ip / opts.phi_nodes;
                    y[0] = r * s * std::cos(phi);
                    y[1] = r * s * std::sin(phi);
                    y[2] = r * c;
                    terms.push_back(gl.weights[it] * sample_S(y) *
                                    kernel_Z(l, y, 3));
                }
            }
            const double ang = pairwise_sum(terms) * 2.0 * std::numbers::pi /
                               opts.phi_nodes;
            return ang * r * r;
        };
        return pref * integrate_decades(radial, 0.0, R,
                                        opts.radial_nodes_per_decade, 6);
    }

    if (!radial_single_bubble(cfg))
        fail(ErrorCode::AnsatzNotRadial,
             "projections above n = 3 need the radial configuration");
    if (l <= n) return 0.0;  // odd integrand over the sphere
    auto radial = [&](double r) {
        Point y(n, 0.0);
        y[0] = r;
        return sample_S(y) * kernel_Z_dilation_radial(r, n) *
               std::pow(r, n - 1);
    };
    return pref * sphere_area(n) *
           integrate_decades(radial, 0.0, R, opts.radial_nodes_per_decade, 6);
}

double project_residual_of(const FieldSampler& u, int l, int j, double t,
                           const AnsatzEvaluator& ev, double R,
                           const ProjectionOptions& opts) {
    const double mu = ev.mu_j(j, t);
    const double h_x = opts.fd_step_rel * mu;
    const double h_t = opts.fd_time_rel * t;
    const int n = ev.config().n;
    FieldSampler s = [&](const Point& x, double tt) {
        return residual_S(u, x, tt, h_x, h_t, n);
    };
    return project_field(s, l, j, t, ev, R, opts);
}

double project_residual(int l, int j, double t, const AnsatzEvaluator& ev,
                        double R, const ProjectionOptions& opts) {
    FieldSampler u = [&ev](const Point& x, double tt) { return ev.z(x, tt); };
    return project_residual_of(u, l, j, t, ev, R, opts);
}

}  // namespace fdlab
