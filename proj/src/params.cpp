#include "fdlab/params.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "fdlab/bubble.hpp"
#include "fdlab/quadrature.hpp"

namespace fdlab {

static std::pair<double, double> c1c2_at_resolution(int n, int nodes,
                                                    double rmax) {
    const double p = critical_p(n);
    auto g1 = [n](double r) {
        return std::pow(bubble_U_radial(r, n), critical_p(n) - 1.0) *
               kernel_Z_dilation_radial(r, n) * std::pow(r, n - 1);
    };
    auto g2 = [n](double r) {
        double z = kernel_Z_dilation_radial(r, n);
        return std::pow(bubble_U_radial(r, n), critical_p(n) - 1.0) * z * z *
               std::pow(r, n - 1);
    };
    const double a = alpha_n(n);
    const double omega = sphere_area(n);
    // closed-form leading tails: g1 r^{n-1} ~ -a^p (n-2)/2 r^{-3},
    // g2 r^{n-1} ~ a^{p+1} (n-2)^2/4 r^{-n-1}
    const double tail1 = -std::pow(a, p) * 0.5 * (n - 2) / (2.0 * rmax * rmax);
    const double tail2 = std::pow(a, p + 1.0) * 0.25 * (n - 2) * (n - 2) /
                         (double(n) * std::pow(rmax, n));
    double i1 = integrate_decades(g1, 0.0, rmax, nodes, 8) + tail1;
    double i2 = integrate_decades(g2, 0.0, rmax, nodes, 8) + tail2;
    return {-p * omega * i1, omega * i2};
}

std::pair<double, double> constants_c1_c2(int n, const ConstantsConfig& cfg) {
    auto coarse = c1c2_at_resolution(n, cfg.nodes_per_decade, cfg.r_max);
    auto fine = c1c2_at_resolution(n, 2 * cfg.nodes_per_decade, cfg.r_max);
    auto reldiff = [](double x, double y) {
        return std::abs(x - y) / std::max(std::abs(y), 1e-300);
    };
    if (reldiff(coarse.first, fine.first) > cfg.rel_tol ||
        reldiff(coarse.second, fine.second) > cfg.rel_tol)
        fail(ErrorCode::QuadratureNotConverged,
             "c1/c2 refinement levels disagree");
    return fine;
}

ScalingLaw ScalingLaw::from_constants(int n, double c1, double c2,
                                      double t0) {
    ScalingLaw law;
    law.n = n;
    law.c1 = c1;
    law.c2 = c2;
    law.t0 = t0;
    law.gamma_n = std::pow(c2 / (2.0 * c1), 1.0 / double(n - 2));
    return law;
}

ScalingLaw ScalingLaw::make(int n, double t0, MuConvention conv,
                            const ConstantsConfig& cfg) {
    auto [c1, c2] = constants_c1_c2(n, cfg);
    if (conv == MuConvention::WithP) c2 *= critical_p(n);
    return from_constants(n, c1, c2, t0);
}

double mu0(double t, const ScalingLaw& law) {
    if (!(t > 0.0))
        fail(ErrorCode::NonpositiveTime, "mu0 requires t > 0");
    return law.gamma_n * std::pow(t, -1.0 / double(law.n - 2));
}

double mu0_dot(double t, const ScalingLaw& law) {
    if (!(t > 0.0))
        fail(ErrorCode::NonpositiveTime, "mu0 requires t > 0");
    const double e = 1.0 / double(law.n - 2);
    return -law.gamma_n * e * std::pow(t, -e - 1.0);
}

static void check_positive(const std::vector<double>& b) {
    for (double v : b)
        if (!(v > 0.0))
            fail(ErrorCode::NonpositiveB, "b components must be positive");
}

double functional_I(const std::vector<double>& b, const BSystem& sys) {
    check_positive(b);
    const int k = sys.k;
    const double e = 0.5 * (sys.n - 2);
    double s = 0.0;
    for (int j = 0; j < k; ++j) {
        s += std::pow(b[j], sys.n - 2) * sys.matrix.at(j, j);
        s -= 2.0 * std::log(b[j]);
        for (int i = 0; i < k; ++i)
            if (i != j)
                s += std::pow(b[i] * b[j], e) * sys.matrix.at(j, i);
    }
    return s / double(sys.n - 2);
}

std::vector<double> grad_I(const std::vector<double>& b, const BSystem& sys) {
    check_positive(b);
    const int k = sys.k;
    const double e = 0.5 * (sys.n - 2);
    std::vector<double> g(k);
    for (int j = 0; j < k; ++j) {
        double s = std::pow(b[j], sys.n - 3) * sys.matrix.at(j, j);
        for (int i = 0; i < k; ++i)
            if (i != j)
                s += std::pow(b[j], e - 1.0) * std::pow(b[i], e) *
                     sys.matrix.at(j, i);
        g[j] = s - 2.0 / (double(sys.n - 2) * b[j]);
    }
    return g;
}

double b_system_residual(const std::vector<double>& b, const BSystem& sys) {
    auto g = grad_I(b, sys);
    double r = 0.0;
    for (double v : g) r = std::max(r, std::abs(v));
    return r;
}

double functional_I_tilde(const std::vector<double>& lambda,
                          const BSystem& sys) {
    check_positive(lambda);
    const int k = sys.k;
    double s = 0.0;
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < k; ++i)
            s += lambda[i] * sys.matrix.at(j, i) * lambda[j];
        s -= 4.0 / double(sys.n - 2) * std::log(lambda[j]);
    }
    return s;
}

std::vector<double> hessian_I_tilde_eigenvalues(const std::vector<double>& b,
                                                const BSystem& sys) {
    check_positive(b);
    const int k = sys.k;
    const double e = 0.5 * (sys.n - 2);
    Eigen::MatrixXd hess(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) hess(i, j) = 2.0 * sys.matrix.at(i, j);
    for (int j = 0; j < k; ++j) {
        double lam = std::pow(b[j], e);
        hess(j, j) += 4.0 / double(sys.n - 2) / (lam * lam);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess);
    std::vector<double> out(k);
    for (int i = 0; i < k; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

std::vector<double> solve_b(const BSystem& sys, double tol, int max_iters) {
    if (!is_positive_definite(sys.matrix))
        fail(ErrorCode::MatrixNotPD,
             "b-system requires a positive definite interaction matrix");
    const int k = sys.k;
    const int n = sys.n;
    const double inv_e = 2.0 / double(n - 2);

    // decoupled closed form as initializer
    Eigen::VectorXd lam(k);
    for (int j = 0; j < k; ++j)
        lam(j) = std::sqrt(2.0 / (double(n - 2) * sys.matrix.at(j, j)));

    Eigen::MatrixXd G(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) G(i, j) = sys.matrix.at(i, j);

    auto grad_tilde = [&](const Eigen::VectorXd& L) {
        Eigen::VectorXd g = 2.0 * G * L;
        for (int j = 0; j < k; ++j) g(j) -= 4.0 / double(n - 2) / L(j);
        return g;
    };
    auto value_tilde = [&](const Eigen::VectorXd& L) {
        double s = L.dot(G * L);
        for (int j = 0; j < k; ++j) s -= 4.0 / double(n - 2) * std::log(L(j));
        return s;
    };

    double f = value_tilde(lam);
    for (int it = 0; it < max_iters; ++it) {
        Eigen::VectorXd g = grad_tilde(lam);
        if (g.lpNorm<Eigen::Infinity>() < tol) break;
        Eigen::MatrixXd J = 2.0 * G;
        for (int j = 0; j < k; ++j)
            J(j, j) += 4.0 / double(n - 2) / (lam(j) * lam(j));
        Eigen::VectorXd step = J.ldlt().solve(g);
        double a = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            Eigen::VectorXd cand = lam - a * step;
            if (cand.minCoeff() > 0.0) {
                double fc = value_tilde(cand);
                if (fc <= f + 1e-14 * std::abs(f)) {
                    lam = cand;
                    f = fc;
                    accepted = true;
                    break;
                }
            }
            a *= 0.5;
        }
        if (!accepted)
            fail(ErrorCode::NewtonDiverged, "line search stalled in solve_b");
        if (it == max_iters - 1)
            fail(ErrorCode::NewtonDiverged, "solve_b iteration cap reached");
    }

    std::vector<double> b(k);
    for (int j = 0; j < k; ++j) b[j] = std::pow(lam(j), inv_e);
    if (b_system_residual(b, sys) > std::max(tol, 1e-11))
        fail(ErrorCode::NewtonDiverged, "b-system residual above tolerance");
    return b;
}

}  // namespace fdlab
