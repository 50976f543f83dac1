#include "fdlab/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fdlab/bubble.hpp"
#include "fdlab/quadrature.hpp"

namespace fdlab {
namespace oracles {

namespace {

// 1D Dirichlet Green's function of -g'' + kappa^2 g = delta(x - y) on
// (0, L), written overflow-free
double g1d(double kappa, double L, double x, double y) {
    const double lo = std::min(x, y), hi = std::max(x, y);
    const double e1 = -std::expm1(-2.0 * kappa * lo);
    const double e2 = -std::expm1(-2.0 * kappa * (L - hi));
    const double e3 = -std::expm1(-2.0 * kappa * L);
    return std::exp(-kappa * (hi - lo)) * e1 * e2 / (2.0 * kappa * e3);
}

}  // namespace

double box_green_series(const std::vector<double>& lengths, const Point& x,
                        const Point& y, int modes) {
    if (lengths.size() != 3 || x.size() != 3 || y.size() != 3)
        fail(ErrorCode::UnsupportedDomain, "series oracle is n = 3 only");
    // sum along the axis of largest separation for exponential decay
    int ax = 0;
    for (int a = 1; a < 3; ++a)
        if (std::abs(x[a] - y[a]) > std::abs(x[ax] - y[ax])) ax = a;
    const int a1 = (ax + 1) % 3, a2 = (ax + 2) % 3;
    const double L = lengths[ax], L1 = lengths[a1], L2 = lengths[a2];

    std::vector<double> terms;
    terms.reserve(size_t(modes) * modes);
    for (int k1 = 1; k1 <= modes; ++k1)
        for (int k2 = 1; k2 <= modes; ++k2) {
            const double kap = std::numbers::pi *
                               std::sqrt(double(k1) * k1 / (L1 * L1) +
                                         double(k2) * k2 / (L2 * L2));
            const double s = std::sin(k1 * std::numbers::pi * x[a1] / L1) *
                             std::sin(k1 * std::numbers::pi * y[a1] / L1) *
                             std::sin(k2 * std::numbers::pi * x[a2] / L2) *
                             std::sin(k2 * std::numbers::pi * y[a2] / L2);
            terms.push_back(s * g1d(kap, L, x[ax], y[ax]));
        }
    const double gstd = 4.0 / (L1 * L2) * pairwise_sum(terms);
    // normalization G = alpha_n |x-y|^{2-n} - H carries alpha_n (n-2)
    // omega_{n-1} times the unit-source Green's function
    const double cn = alpha_n(3) * 1.0 * sphere_area(3);
    return cn * gstd;
}

std::pair<double, double> c1c2_closed_form(int n) {
    const double p = critical_p(n);
    const double a = alpha_n(n);
    const double omega = sphere_area(n);
    const double c1 = std::pow(a, p) * omega * double(n - 2) / (2.0 * n);
    const double c2 = std::pow(a, p + 1.0) * omega * double(n - 2) *
                      double(n - 2) * double(n) *
                      std::exp(2.0 * std::lgamma(0.5 * n) -
                               std::lgamma(double(n) + 2.0)) /
                      8.0;
    return {c1, c2};
}

double mu0_rk4(const ScalingLaw& law, double t0, double t1, int steps) {
    const double coeff = -2.0 * law.c1 / law.c2 / double(law.n - 2);
    auto f = [&](double mu) { return coeff * std::pow(mu, law.n - 1); };
    double mu = mu0(t0, law);
    const double h = (t1 - t0) / steps;
    for (int i = 0; i < steps; ++i) {
        const double k1 = f(mu);
        const double k2 = f(mu + 0.5 * h * k1);
        const double k3 = f(mu + 0.5 * h * k2);
        const double k4 = f(mu + h * k3);
        mu += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return mu;
}

RadialProfile separable_profile(int n, double m, double R, int grid_points) {
    if (!(m > 0.0 && m < 1.0))
        fail(ErrorCode::ConfigInvalid, "m must lie in (0,1)");
    const double c = 1.0 / (1.0 - m);
    const double q = 1.0 / m;
    auto acc = [&](double r, double v, double dv) {
        return -double(n - 1) / r * dv -
               c * (v > 0.0 ? std::pow(v, q) : 0.0);
    };
    // one shot from V(0) = 1; the family scaling places the zero at R
    const double eps = 1e-8;
    double v = 1.0 - c / (2.0 * n) * eps * eps;
    double dv = -c / n * eps;
    double r = eps;
    const double h = 1e-5;
    std::vector<double> rs{0.0}, vs{1.0}, dvs{0.0};
    double rho1 = -1.0;
    while (r < 50.0) {
        const double k1v = dv, k1d = acc(r, v, dv);
        const double k2v = dv + 0.5 * h * k1d,
                     k2d = acc(r + 0.5 * h, v + 0.5 * h * k1v,
                               dv + 0.5 * h * k1d);
        const double k3v = dv + 0.5 * h * k2d,
                     k3d = acc(r + 0.5 * h, v + 0.5 * h * k2v,
                               dv + 0.5 * h * k2d);
        const double k4v = dv + h * k3d,
                     k4d = acc(r + h, v + h * k3v, dv + h * k3d);
        const double v_new = v + h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        const double dv_new = dv + h / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d);
        if (v_new <= 0.0) {
            rho1 = r + h * v / (v - v_new);   // linear zero crossing
            break;
        }
        r += h;
        v = v_new;
        dv = dv_new;
        rs.push_back(r);
        vs.push_back(v);
        dvs.push_back(dv);
    }
    if (rho1 < 0.0)
        fail(ErrorCode::ShootingDiverged,
             "separable profile has no zero before r = 50");

    // V_lambda(r) = lambda V(lambda^{(q-1)/2} r) has its zero at
    // rho1 / lambda^{(q-1)/2}; choose lambda so that equals R.
    const double lambda = std::pow(rho1 / R, 2.0 / (q - 1.0));
    const double stretch = rho1 / R;

    RadialProfile dense;
    dense.r = std::move(rs);
    dense.v = std::move(vs);
    dense.dv = std::move(dvs);
    dense.tail_coeff = 0.0;

    RadialProfile out;
    out.r.resize(grid_points);
    out.v.resize(grid_points);
    out.dv.resize(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        const double rr = R * double(i) / (grid_points - 1);
        out.r[i] = rr;
        const double arg = stretch * rr;
        if (arg >= rho1) {
            out.v[i] = 0.0;
            out.dv[i] = lambda * stretch * dense.dv.back();
        } else {
            out.v[i] = lambda * dense.value(arg);
            out.dv[i] = lambda * stretch * dense.deriv(arg);
        }
    }
    out.v.back() = 0.0;
    out.tail_coeff = 0.0;
    return out;
}

double ln_profile_ode_residual(double lambda, int n, double bracket_exponent,
                               double bracket_constant,
                               const std::vector<double>& radii, double h) {
    const double m = critical_m(n);
    auto Sm = [&](double r) {
        return std::pow(loewner_nirenberg_S_variant(lambda, r, n,
                                                    bracket_exponent,
                                                    bracket_constant),
                        m);
    };
    double worst = 0.0;
    for (double r : radii) {
        if (r < 2.5 * h) continue;
        const double f0 = Sm(r);
        const double fp1 = Sm(r + h), fm1 = Sm(r - h);
        const double fp2 = Sm(r + 2 * h), fm2 = Sm(r - 2 * h);
        const double d2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) /
                          (12 * h * h);
        const double d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);
        const double lap = d2 + double(n - 1) / r * d1;
        const double res =
            lap + 0.25 * double(n + 2) *
                      loewner_nirenberg_S_variant(lambda, r, n,
                                                  bracket_exponent,
                                                  bracket_constant);
        worst = std::max(worst, std::abs(res));
    }
    return worst;
}

}  // namespace oracles
}  // namespace fdlab
