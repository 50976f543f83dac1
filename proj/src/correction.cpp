#include "fdlab/correction.hpp"

#include <algorithm>
#include <cmath>

#include "fdlab/bubble.hpp"
#include "fdlab/params.hpp"

namespace fdlab {

double RadialProfile::value(double radius) const {
    if (radius >= r.back())
        return tail_coeff / (radius * radius);
    auto it = std::upper_bound(r.begin(), r.end(), radius);
    size_t i = (it == r.begin()) ? 0 : (it - r.begin() - 1);
    if (i + 1 >= r.size()) i = r.size() - 2;
    const double h = r[i + 1] - r[i];
    const double s = (radius - r[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * v[i] + (s3 - 2 * s2 + s) * h * dv[i] +
           (-2 * s3 + 3 * s2) * v[i + 1] + (s3 - s2) * h * dv[i + 1];
}

double RadialProfile::deriv(double radius) const {
    if (radius >= r.back())
        return -2.0 * tail_coeff / (radius * radius * radius);
    auto it = std::upper_bound(r.begin(), r.end(), radius);
    size_t i = (it == r.begin()) ? 0 : (it - r.begin() - 1);
    if (i + 1 >= r.size()) i = r.size() - 2;
    const double h = r[i + 1] - r[i];
    const double s = (radius - r[i]) / h;
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) * v[i] / h + (3 * s2 - 4 * s + 1) * dv[i] +
            (-6 * s2 + 6 * s) * v[i + 1] / h + (3 * s2 - 2 * s) * dv[i + 1]);
}

double q0_source(double r, int n, double c1, double c2) {
    const double p = critical_p(n);
    const double up1 = std::pow(bubble_U_radial(r, n), p - 1.0);
    return p * up1 * c2 + c1 * up1 * kernel_Z_dilation_radial(r, n);
}

namespace {

struct ShotResult {
    std::vector<double> r, v, dv;
    double mismatch = 0.0;     // Phi'(R) + 2 Phi(R)/R
};

// integrate the linear ODE outward from the origin with initial value a
ShotResult shoot(double a, int n, double c1, double c2,
                 const CorrectionOptions& opts, bool record) {
    const double p = critical_p(n);
    auto rhs = [&](double r, double phi, double dphi) {
        const double pot = p * std::pow(bubble_U_radial(r, n), p - 1.0);
        return q0_source(r, n, c1, c2) - pot * phi -
               double(n - 1) / r * dphi;
    };
    ShotResult out;
    // regular start: Phi = a + Phi''(0) r^2/2 with n Phi''(0) = q0(0) - pot(0) a
    const double eps = 1e-6;
    const double pot0 = p * std::pow(bubble_U_radial(0.0, n), p - 1.0);
    const double dd0 = (q0_source(0.0, n, c1, c2) - pot0 * a) / double(n);
    double r = eps;
    double phi = a + 0.5 * dd0 * eps * eps;
    double dphi = dd0 * eps;
    if (record) {
        out.r.push_back(0.0);
        out.v.push_back(a);
        out.dv.push_back(0.0);
    }
    while (r < opts.r_match) {
        double h = (r < 1.0) ? opts.step_near : opts.step_rel * r;
        h = std::min(h, opts.r_match - r);
        // classical RK4 on the first-order system
        auto f = [&](double rr, double y0, double y1, double& k0,
                     double& k1) {
            k0 = y1;
            k1 = rhs(rr, y0, y1);
        };
        double k10, k11, k20, k21, k30, k31, k40, k41;
        f(r, phi, dphi, k10, k11);
        f(r + 0.5 * h, phi + 0.5 * h * k10, dphi + 0.5 * h * k11, k20, k21);
        f(r + 0.5 * h, phi + 0.5 * h * k20, dphi + 0.5 * h * k21, k30, k31);
        f(r + h, phi + h * k30, dphi + h * k31, k40, k41);
        phi += h / 6.0 * (k10 + 2 * k20 + 2 * k30 + k40);
        dphi += h / 6.0 * (k11 + 2 * k21 + 2 * k31 + k41);
        r += h;
        if (!std::isfinite(phi) || std::abs(phi) > 1e30)
            fail(ErrorCode::ShootingDiverged, "p0 integration blew up");
        if (record) {
            out.r.push_back(r);
            out.v.push_back(phi);
            out.dv.push_back(dphi);
        }
    }
    out.mismatch = dphi + 2.0 * phi / r;
    return out;
}

}  // namespace

RadialProfile correction_p0(const std::vector<double>& r_grid, int n,
                            const CorrectionOptions& opts) {
    if (r_grid.size() < 2 || r_grid.back() < 100.0)
        fail(ErrorCode::GridTooShort, "p0 grid must reach r >= 100");
    auto [c1, c2] = constants_c1_c2(n);

    auto mism = [&](double a) {
        return shoot(a, n, c1, c2, opts, false).mismatch;
    };
    // bracket the root of the (affine) tail mismatch, then bisect
    double lo = -1.0, hi = 1.0;
    double flo = mism(lo), fhi = mism(hi);
    double expand = 2.0;
    while (flo * fhi > 0.0) {
        lo *= expand;
        hi *= expand;
        if (std::abs(lo) > opts.bracket_limit)
            fail(ErrorCode::ShootingDiverged,
                 "could not bracket the p0 shooting constant");
        flo = mism(lo);
        fhi = mism(hi);
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = mism(mid);
        if (flo * fm <= 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
        if (hi - lo < 1e-14 * std::max(1.0, std::abs(lo))) break;
    }
    const double a_star = 0.5 * (lo + hi);
    ShotResult sol = shoot(a_star, n, c1, c2, opts, true);

    RadialProfile dense;
    dense.r = std::move(sol.r);
    dense.v = std::move(sol.v);
    dense.dv = std::move(sol.dv);
    dense.tail_coeff = dense.v.back() * dense.r.back() * dense.r.back();

    RadialProfile out;
    out.r = r_grid;
    out.v.resize(r_grid.size());
    out.dv.resize(r_grid.size());
    for (size_t i = 0; i < r_grid.size(); ++i) {
        out.v[i] = dense.value(r_grid[i]);
        out.dv[i] = dense.deriv(r_grid[i]);
    }
    out.tail_coeff = dense.tail_coeff;
    return out;
}

}  // namespace fdlab
