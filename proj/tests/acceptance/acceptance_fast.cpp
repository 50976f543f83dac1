// criteria 1, 2, 4, 5, 12, 13: kernels, constants, the b-system, the
// scale ODE, the conformal identity, and the stationary-profile
// convention
#include <chrono>
#include <cmath>
#include <random>

#include "criteria.hpp"
#include "fdlab/bubble.hpp"
#include "fdlab/oracles.hpp"
#include "fdlab/params.hpp"
#include "fdlab/sphere.hpp"

using namespace fdlab;

namespace {

double fd_laplacian(const std::function<double(const Point&)>& f,
                    const Point& y, double h) {
    const int n = static_cast<int>(y.size());
    Point x = y;
    const double f0 = f(y);
    double lap = 0.0;
    for (int a = 0; a < n; ++a) {
        const double ya = y[a];
        x[a] = ya + 2 * h; const double p2 = f(x);
        x[a] = ya + h;     const double p1 = f(x);
        x[a] = ya - h;     const double m1 = f(x);
        x[a] = ya - 2 * h; const double m2 = f(x);
        x[a] = ya;
        lap += (-p2 + 16 * p1 - 30 * f0 + 16 * m1 - m2) / (12 * h * h);
    }
    return lap;
}

}  // namespace

int main() {
    CriterionLog log;
    char buf[200];

    // ---------------- criterion 1: kernel annihilation -----------------
    {
        double worst = 0.0;
        std::mt19937_64 rng(101);
        for (int n = 3; n <= 6; ++n) {
            const double p = critical_p(n);
            std::vector<Point> samples;
            // axis points, diagonal points and random draws fill |y| <= 10
            for (double r : {0.0, 0.3, 1.0, 2.5, 5.0, 9.9}) {
                Point ax(n, 0.0);
                ax[0] = r;
                samples.push_back(ax);
                samples.push_back(Point(n, r / std::sqrt(double(n))));
            }
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            for (int s = 0; s < 120; ++s) {
                Point y(n);
                double r2 = 0.0;
                for (auto& v : y) {
                    v = u(rng);
                    r2 += v * v;
                }
                double scale = 10.0 * std::pow(std::abs(u(rng)), 0.5) /
                               std::max(std::sqrt(r2), 1e-9);
                for (auto& v : y) v *= scale;
                samples.push_back(y);
            }
            for (const auto& y : samples)
                for (int i = 1; i <= n + 1; ++i) {
                    auto zi = [&](const Point& yy) {
                        return kernel_Z(i, yy, n);
                    };
                    double defect =
                        fd_laplacian(zi, y, 1e-3) +
                        p * std::pow(bubble_U(y, n), p - 1.0) *
                            kernel_Z(i, y, n);
                    worst = std::max(worst, std::abs(defect));
                }
        }
        std::snprintf(buf, sizeof buf,
                      "sup |Delta Z + p U^{p-1} Z| = %.3e over n in {3..6}, "
                      "4th-order FD h=1e-3 (tol 1e-6)", worst);
        log.result(1, "kernel annihilation", worst <= 1e-6, buf);
    }

    // ---------------- criterion 2: scalar constants --------------------
    {
        bool ok = true;
        double worst_ref = 0.0, worst_tail = 0.0;
        for (int n = 3; n <= 6; ++n) {
            ConstantsConfig coarse, fine, near_cfg, far_cfg;
            fine.nodes_per_decade = 128;
            near_cfg.r_max = 1e3;
            far_cfg.r_max = 1e6;
            auto [c1a, c2a] = constants_c1_c2(n, coarse);
            auto [c1b, c2b] = constants_c1_c2(n, fine);
            auto [c1n, c2n] = constants_c1_c2(n, near_cfg);
            auto [c1f, c2f] = constants_c1_c2(n, far_cfg);
            ok = ok && c1a > 0.0 && c2a > 0.0;
            worst_ref = std::max({worst_ref, std::abs(c1a - c1b) / c1b,
                                  std::abs(c2a - c2b) / c2b});
            worst_tail = std::max({worst_tail, std::abs(c1n - c1f) / c1f,
                                   std::abs(c2n - c2f) / c2f});
        }
        ok = ok && worst_ref <= 1e-8 && worst_tail <= 1e-8;
        std::snprintf(buf, sizeof buf,
                      "c1,c2 > 0 for n in {3..6}; refinement agreement "
                      "%.2e, tail doubling %.2e (tol 1e-8)",
                      worst_ref, worst_tail);
        log.result(2, "scalar constants", ok, buf);
    }

    // ---------------- criterion 4: b-system ----------------------------
    {
        DomainSpec ball = DomainSpec::unit_ball(3);
        bool ok = true;

        // k = 1 against the decoupled closed form
        GreensMatrix m1 = robin_matrix(ball, {Point(3, 0.0)});
        double b1 = solve_b({1, m1, 3})[0];
        double closed = 2.0 / alpha_n(3);
        ok = ok && std::abs(b1 - closed) <= 1e-10;

        // k = 2 symmetric pair against scalar bisection
        GreensMatrix m2 =
            robin_matrix(ball, {Point{0.4, 0, 0}, Point{-0.4, 0, 0}});
        auto b2 = solve_b({2, m2, 3});
        const double H = m2.at(0, 0), G = -m2.at(0, 1);
        double lo = 1e-3, hi = 1e3;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            ((H - G) - 2.0 / mid < 0.0 ? lo : hi) = mid;
        }
        ok = ok && std::abs(b2[0] - 0.5 * (lo + hi)) <= 1e-8 &&
             std::abs(b2[0] - b2[1]) <= 1e-10;

        // 20 random positive definite configurations: gradient check and
        // Hessian positivity at the solution
        std::mt19937_64 rng(404);
        std::uniform_real_distribution<double> off(-0.4, 0.4);
        std::uniform_real_distribution<double> amp(0.4, 1.8);
        int tested = 0;
        double worst_fd = 0.0;
        while (tested < 20) {
            std::vector<Point> q = {{off(rng), off(rng), off(rng)},
                                    {off(rng), off(rng), off(rng)}};
            if (dist(q[0], q[1]) < 0.25) continue;
            GreensMatrix m = robin_matrix(ball, q);
            if (!is_positive_definite(m)) continue;
            ++tested;
            BSystem sys{2, m, 3};
            std::vector<double> b = {amp(rng), amp(rng)};
            auto g = grad_I(b, sys);
            for (int i = 0; i < 2; ++i) {
                auto bp = b, bm = b;
                bp[i] += 1e-6;
                bm[i] -= 1e-6;
                double fd = (functional_I(bp, sys) -
                             functional_I(bm, sys)) / 2e-6;
                worst_fd = std::max(worst_fd,
                                    std::abs(g[i] - fd) /
                                        std::max(1.0, std::abs(fd)));
            }
            auto bs = solve_b(sys);
            for (double ev : hessian_I_tilde_eigenvalues(bs, sys))
                ok = ok && ev > 0.0;
        }
        ok = ok && worst_fd <= 1e-6;
        std::snprintf(buf, sizeof buf,
                      "k=1 |b-closed|=%.1e; k=2 vs bisection ok; grad vs FD "
                      "%.2e at 20 PD configs; Hessians PD",
                      std::abs(b1 - closed), worst_fd);
        log.result(4, "b-system", ok, buf);
    }

    // ---------------- criterion 5: scale ODE ---------------------------
    {
        ScalingLaw law = ScalingLaw::make(3, 10.0);
        double rk = oracles::mu0_rk4(law, 10.0, 1000.0, 50000);
        double rel = std::abs(rk - mu0(1000.0, law)) / mu0(1000.0, law);
        std::snprintf(buf, sizeof buf,
                      "RK4 vs closed form over [10,1000]: rel %.2e "
                      "(tol 1e-8)", rel);
        log.result(5, "scale ODE", rel <= 1e-8, buf);
    }

    // ---------------- criterion 12: conformal identity -----------------
    {
        const int n = 3;
        std::vector<Point> samples = {{0.3, -0.2, 0.5},
                                      {1.1, 0.4, -0.3},
                                      {-0.6, 0.8, 0.2},
                                      {0.2, 0.0, -0.8}};
        std::vector<FlatFunction> suite;
        suite.push_back([&](const Point& y) { return bubble_U(y, n); });
        suite.push_back([&](const Point& y) { return kernel_Z(1, y, n); });
        suite.push_back([&](const Point& y) { return kernel_Z(4, y, n); });
        for (int k = 0; k < 7; ++k) {
            double cx = 0.3 * k - 1.0, w = 0.5 + 0.15 * k;
            suite.push_back([cx, w](const Point& y) {
                double r2 = 0.0;
                for (size_t i = 0; i < y.size(); ++i)
                    r2 += (y[i] - cx * (0.2 + 0.3 * i)) *
                          (y[i] - cx * (0.2 + 0.3 * i));
                return std::exp(-w * r2) * (1.0 + 0.2 * y[0]);
            });
        }
        bool ok = true;
        double worst_lo = 10.0, worst_hi = 0.0;
        for (const auto& f : suite) {
            double m1 = conformal_laplacian_check(f, samples, n, 0.1, 0.1);
            double m2 = conformal_laplacian_check(f, samples, n, 0.05,
                                                  0.05);
            double order = std::log2(m1 / m2);
            worst_lo = std::min(worst_lo, order);
            worst_hi = std::max(worst_hi, order);
            ok = ok && order >= 3.5 && order <= 4.5;
        }
        double eig = 0.0;
        for (int i = 1; i <= n + 1; ++i)
            eig = std::max(eig,
                           lifted_kernel_eigen_defect(i, samples, n, 5e-3));
        ok = ok && eig <= 1e-6;
        std::snprintf(buf, sizeof buf,
                      "observed FD orders in [%.2f, %.2f] (nominal 4 +- "
                      "0.5); lifted-kernel eigen defect %.2e",
                      worst_lo, worst_hi, eig);
        log.result(12, "conformal identity", ok, buf);
    }

    // ---------------- criterion 13: stationary profile convention ------
    {
        std::vector<double> radii;
        for (int i = 1; i <= 40; ++i) radii.push_back(0.1 * i);
        bool ok = true;
        std::string detail;
        for (int n : {3, 4, 5}) {
            double adopted = oracles::ln_profile_ode_residual(
                1.0, n, 0.5 * (n + 2), 4.0, radii, 1e-3);
            double rej_linear = oracles::ln_profile_ode_residual(
                1.0, n, 1.0, 2.0, radii, 1e-3);
            double rej_const = oracles::ln_profile_ode_residual(
                1.0, n, 0.5 * (n + 2), 2.0, radii, 1e-3);
            ok = ok && adopted <= 1e-6 &&
                 rej_linear >= 1e3 * adopted && rej_const >= 1e3 * adopted;
            char line[160];
            std::snprintf(line, sizeof line,
                          "n=%d: adopted %.2e, linear-bracket %.2e, "
                          "paper-constant %.2e",
                          n, adopted, rej_linear, rej_const);
            detail += std::string(line) + (n < 5 ? "; " : "");
        }
        log.result(13, "stationary profile convention", ok, detail);
    }

    return log.exit_code();
}
