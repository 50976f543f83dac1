#include "fdlab/sphere.hpp"

#include <cmath>

#include "fdlab/bubble.hpp"

namespace fdlab {

SpherePoint stereographic(const Point& y) {
    const size_t n = y.size();
    double r2 = 0.0;
    for (double v : y) r2 += v * v;
    SpherePoint p;
    p.coords.resize(n + 1);
    const double denom = 1.0 + r2;
    for (size_t i = 0; i < n; ++i) p.coords[i] = 2.0 * y[i] / denom;
    p.coords[n] = (r2 - 1.0) / denom;
    return p;
}

Point inverse_stereographic(const SpherePoint& p) {
    const size_t n = p.coords.size() - 1;
    const double last = p.coords[n];
    if (1.0 - last < 1e-14)
        fail(ErrorCode::NorthPole, "north pole has no preimage");
    Point y(n);
    for (size_t i = 0; i < n; ++i) y[i] = p.coords[i] / (1.0 - last);
    return y;
}

double conformal_factor(const Point& y, int n) {
    double r2 = 0.0;
    for (double v : y) r2 += v * v;
    return std::pow(2.0 / (1.0 + r2), 0.5 * (n - 2));
}

SphereFunction lift(const FlatFunction& phi, int n) {
    return [phi, n](const SpherePoint& p) {
        Point y = inverse_stereographic(p);
        return phi(y) / conformal_factor(y, n);
    };
}

FlatFunction unlift(const SphereFunction& phi_tilde, int n) {
    return [phi_tilde, n](const Point& y) {
        return phi_tilde(stereographic(y)) * conformal_factor(y, n);
    };
}

namespace {

// orthonormal tangent basis at p by Gram-Schmidt over the coordinate axes
std::vector<std::vector<double>> tangent_basis(const SpherePoint& p) {
    const size_t dim = p.coords.size();
    std::vector<std::vector<double>> basis;
    for (size_t axis = 0; axis < dim && basis.size() + 1 < dim; ++axis) {
        std::vector<double> e(dim, 0.0);
        e[axis] = 1.0;
        double dp = p.coords[axis];
        for (size_t i = 0; i < dim; ++i) e[i] -= dp * p.coords[i];
        for (const auto& b : basis) {
            double d = 0.0;
            for (size_t i = 0; i < dim; ++i) d += e[i] * b[i];
            for (size_t i = 0; i < dim; ++i) e[i] -= d * b[i];
        }
        double nrm = 0.0;
        for (double v : e) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (nrm < 1e-8) continue;   // axis nearly parallel to p
        for (double& v : e) v /= nrm;
        basis.push_back(std::move(e));
    }
    return basis;
}

SpherePoint geodesic(const SpherePoint& p, const std::vector<double>& dir,
                     double s) {
    SpherePoint out;
    out.coords.resize(p.coords.size());
    const double c = std::cos(s), sn = std::sin(s);
    for (size_t i = 0; i < p.coords.size(); ++i)
        out.coords[i] = c * p.coords[i] + sn * dir[i];
    return out;
}

}  // namespace

double sphere_laplacian_fd(const SphereFunction& f, const SpherePoint& p,
                           double step) {
    auto basis = tangent_basis(p);
    const double f0 = f(p);
    double lap = 0.0;
    for (const auto& e : basis) {
        const double fp1 = f(geodesic(p, e, step));
        const double fm1 = f(geodesic(p, e, -step));
        const double fp2 = f(geodesic(p, e, 2.0 * step));
        const double fm2 = f(geodesic(p, e, -2.0 * step));
        lap += (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) /
               (12.0 * step * step);
    }
    return lap;
}

static double flat_laplacian_fd(const FlatFunction& phi, const Point& y,
                                double h) {
    const int n = static_cast<int>(y.size());
    const double f0 = phi(y);
    Point x = y;
    double lap = 0.0;
    for (int a = 0; a < n; ++a) {
        const double ya = y[a];
        x[a] = ya + 2.0 * h;
        const double p2 = phi(x);
        x[a] = ya + h;
        const double p1 = phi(x);
        x[a] = ya - h;
        const double m1 = phi(x);
        x[a] = ya - 2.0 * h;
        const double m2 = phi(x);
        x[a] = ya;
        lap += (-p2 + 16.0 * p1 - 30.0 * f0 + 16.0 * m1 - m2) /
               (12.0 * h * h);
    }
    return lap;
}

double conformal_laplacian_check(const FlatFunction& phi,
                                 const std::vector<Point>& samples, int n,
                                 double h_flat, double h_sphere) {
    SphereFunction phit = lift(phi, n);
    const double cn = 0.25 * double(n) * double(n - 2);
    double worst = 0.0;
    for (const Point& y : samples) {
        SpherePoint p = stereographic(y);
        const double pl = sphere_laplacian_fd(phit, p, h_sphere) -
                          cn * phit(p);
        double r2 = 0.0;
        for (double v : y) r2 += v * v;
        const double factor = std::pow(2.0 / (1.0 + r2), 0.5 * (n + 2));
        const double flat = flat_laplacian_fd(phi, y, h_flat);
        worst = std::max(worst, std::abs(factor * pl - flat));
    }
    return worst;
}

double lifted_kernel_eigen_defect(int i, const std::vector<Point>& samples,
                                  int n, double h_sphere) {
    FlatFunction zi = [i, n](const Point& y) { return kernel_Z(i, y, n); };
    SphereFunction theta = lift(zi, n);
    double worst = 0.0;
    for (const Point& y : samples) {
        SpherePoint p = stereographic(y);
        const double defect =
            sphere_laplacian_fd(theta, p, h_sphere) + double(n) * theta(p);
        worst = std::max(worst, std::abs(defect));
    }
    return worst;
}

}  // namespace fdlab
