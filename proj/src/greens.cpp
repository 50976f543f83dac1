#include "fdlab/greens.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "fdlab/bubble.hpp"

namespace fdlab {

static void check_interior(const DomainSpec& d, const Point& x,
                           const char* what) {
    if (!d.contains(x))
        fail(ErrorCode::PointOutsideDomain,
             std::string(what) + " must be an interior point");
}

double ball_regular_part(int n, double a, const Point& x, const Point& y) {
    const double ry = norm(y);
    if (ry == 0.0) return alpha_n(n) * std::pow(a, 2 - n);
    // image point a^2 y / |y|^2
    double s = 0.0;
    const double f = a * a / (ry * ry);
    for (size_t i = 0; i < x.size(); ++i) {
        double d = x[i] - f * y[i];
        s += d * d;
    }
    return alpha_n(n) * std::pow(ry / a * std::sqrt(s), 2 - n);
}

// ---------------------------------------------------------------------
// Box solver (n = 3): sine-transform diagonalization of the 7-point
// Laplacian, boundary data moved into the right-hand side.
// ---------------------------------------------------------------------

size_t BoxHarmonicSolver::idx(int i, int j, int l) const {
    return (size_t(l) * nodes_ + j) * nodes_ + i;
}

BoxHarmonicSolver::BoxHarmonicSolver(const DomainSpec& domain,
                                     int nodes_per_axis)
    : domain_(domain), nodes_(nodes_per_axis) {
    domain_.validate();
    if (domain_.kind != DomainKind::Box)
        fail(ErrorCode::UnsupportedDomain, "BoxHarmonicSolver needs a box");
    if (domain_.n != 3)
        fail(ErrorCode::UnsupportedDomain,
             "box regular part is implemented for n = 3");
    if (nodes_ < 5) fail(ErrorCode::ConfigInvalid, "need at least 5 nodes");
    h_.resize(3);
    for (int a = 0; a < 3; ++a) h_[a] = domain_.lengths[a] / (nodes_ - 1);
    grid_.assign(size_t(nodes_) * nodes_ * nodes_, 0.0);
}

// apply the (unnormalized) DST-I along one axis of a m^3 cube
static void dst_axis(std::vector<double>& v, int m, int axis,
                     const std::vector<double>& sine) {
    std::vector<double> line(m), out(m);
    int stride[3] = {1, m, m * m};
    int sa = stride[axis];
    int sb = stride[(axis + 1) % 3];
    int sc = stride[(axis + 2) % 3];
    for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) {
            double* base = v.data() + size_t(b) * sb + size_t(c) * sc;
            for (int i = 0; i < m; ++i) line[i] = base[size_t(i) * sa];
            for (int k = 0; k < m; ++k) {
                const double* srow = sine.data() + size_t(k) * m;
                double s = 0.0;
                for (int i = 0; i < m; ++i) s += srow[i] * line[i];
                out[k] = s;
            }
            for (int k = 0; k < m; ++k) base[size_t(k) * sa] = out[k];
        }
}

void BoxHarmonicSolver::solve(const std::function<double(const Point&)>& g) {
    const int N = nodes_;
    const int M = N - 1;      // intervals
    const int m = M - 1;      // interior nodes per axis

    // boundary values onto the full grid
    Point x(3);
    for (int l = 0; l < N; ++l)
        for (int j = 0; j < N; ++j)
            for (int i = 0; i < N; ++i) {
                if (i > 0 && i < M && j > 0 && j < M && l > 0 && l < M)
                    continue;
                x[0] = i * h_[0];
                x[1] = j * h_[1];
                x[2] = l * h_[2];
                grid_[idx(i, j, l)] = g(x);
            }

    // rhs = -(boundary neighbour contributions)
    std::vector<double> rhs(size_t(m) * m * m, 0.0);
    auto ridx = [m](int i, int j, int l) {
        return (size_t(l) * m + j) * m + i;
    };
    for (int l = 1; l < M; ++l)
        for (int j = 1; j < M; ++j)
            for (int i = 1; i < M; ++i) {
                double c = 0.0;
                if (i == 1) c += grid_[idx(0, j, l)] / (h_[0] * h_[0]);
                if (i == M - 1) c += grid_[idx(M, j, l)] / (h_[0] * h_[0]);
                if (j == 1) c += grid_[idx(i, 0, l)] / (h_[1] * h_[1]);
                if (j == M - 1) c += grid_[idx(i, M, l)] / (h_[1] * h_[1]);
                if (l == 1) c += grid_[idx(i, j, 0)] / (h_[2] * h_[2]);
                if (l == M - 1) c += grid_[idx(i, j, M)] / (h_[2] * h_[2]);
                rhs[ridx(i - 1, j - 1, l - 1)] = -c;
            }

    // sine matrix S(k,i) = sin(pi (k+1)(i+1) / M), k,i = 0..m-1
    std::vector<double> sine(size_t(m) * m);
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
            sine[size_t(k) * m + i] =
                std::sin(std::numbers::pi * (k + 1) * (i + 1) / M);

    for (int a = 0; a < 3; ++a) dst_axis(rhs, m, a, sine);

    std::vector<std::vector<double>> lam(3, std::vector<double>(m));
    for (int a = 0; a < 3; ++a)
        for (int k = 0; k < m; ++k)
            lam[a][k] = (2.0 * std::cos(std::numbers::pi * (k + 1) / M) - 2.0) /
                        (h_[a] * h_[a]);

    for (int l = 0; l < m; ++l)
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i)
                rhs[ridx(i, j, l)] /= lam[0][i] + lam[1][j] + lam[2][l];

    for (int a = 0; a < 3; ++a) dst_axis(rhs, m, a, sine);
    const double scale = std::pow(2.0 / M, 3);
    for (int l = 1; l < M; ++l)
        for (int j = 1; j < M; ++j)
            for (int i = 1; i < M; ++i)
                grid_[idx(i, j, l)] =
                    scale * rhs[ridx(i - 1, j - 1, l - 1)];
    solved_ = true;
}

// 4-point Lagrange weights for target s in [0, m-1]
static void lagrange4(double s, int m, int& base, double w[4]) {
    int i = std::clamp(int(std::floor(s)), 0, m - 2);
    base = std::clamp(i - 1, 0, m - 4);
    double t = s - base;
    const double t0 = t, t1 = t - 1.0, t2 = t - 2.0, t3 = t - 3.0;
    w[0] = -t1 * t2 * t3 / 6.0;
    w[1] = t0 * t2 * t3 / 2.0;
    w[2] = -t0 * t1 * t3 / 2.0;
    w[3] = t0 * t1 * t2 / 6.0;
}

double BoxHarmonicSolver::value(const Point& x) const {
    if (!solved_) fail(ErrorCode::ConfigInvalid, "solve() not called");
    int bi[3];
    double w[3][4];
    for (int a = 0; a < 3; ++a) {
        double s = x[a] / h_[a];
        if (s < -1e-12 || s > nodes_ - 1 + 1e-12)
            fail(ErrorCode::PointOutsideDomain, "interpolation outside box");
        lagrange4(std::clamp(s, 0.0, double(nodes_ - 1)), nodes_, bi[a], w[a]);
    }
    double acc = 0.0;
    for (int c = 0; c < 4; ++c)
        for (int b = 0; b < 4; ++b)
            for (int a = 0; a < 4; ++a)
                acc += w[0][a] * w[1][b] * w[2][c] *
                       grid_[idx(bi[0] + a, bi[1] + b, bi[2] + c)];
    return acc;
}

// ---------------------------------------------------------------------
// Axisymmetric ball solver
// ---------------------------------------------------------------------

BallAxisymHarmonicSolver::BallAxisymHarmonicSolver(int n, double radius,
                                                   int nr, int ntheta,
                                                   double sor_tol,
                                                   int max_iters)
    : n_(n), nr_(nr), nt_(ntheta), radius_(radius), tol_(sor_tol),
      max_iters_(max_iters) {
    if (n < 3) fail(ErrorCode::ConfigInvalid, "dimension must be >= 3");
    if (nr < 8 || ntheta < 8)
        fail(ErrorCode::ConfigInvalid, "grid too coarse");
    hr_ = radius_ / nr_;
    ht_ = std::numbers::pi / nt_;
    // theta cells are staggered: theta_j = (j + 1/2) ht, so the sin^{n-2}
    // flux vanishes at both poles and no pole stencil is needed
    u_.assign(size_t(nr_ + 1) * nt_, 0.0);
}

double BallAxisymHarmonicSolver::theta_at(int j) const {
    return (j + 0.5) * ht_;
}

double BallAxisymHarmonicSolver::pole_weighted_mean(int i) const {
    // mean of u(i, .) over the sphere, weight sin^{n-2}(theta)
    double num = 0.0, den = 0.0;
    for (int j = 0; j < nt_; ++j) {
        double w = std::pow(std::sin(theta_at(j)), n_ - 2);
        num += w * at(i, j);
        den += w;
    }
    return num / den;
}

double BallAxisymHarmonicSolver::residual_at(int i, int j) const {
    // conservative stencil: (r^{n-1} u_r)_r / r^{n-1} +
    //                       (sin^{n-2} u_t)_t / (r^2 sin^{n-2})
    const double r = i * hr_;
    const double rp = std::pow(r + 0.5 * hr_, n_ - 1);
    const double rm = std::pow(r - 0.5 * hr_, n_ - 1);
    const double rc = std::pow(r, n_ - 1) * hr_ * hr_;
    double res = (rp * (at(i + 1, j) - at(i, j)) -
                  rm * (at(i, j) - at(i - 1, j))) / rc;
    const double t = theta_at(j);
    const double sp = std::pow(std::sin(t + 0.5 * ht_), n_ - 2);
    const double sm = std::pow(std::sin(t - 0.5 * ht_), n_ - 2);
    const double sc = std::pow(std::sin(t), n_ - 2);
    const double up = (j + 1 < nt_) ? at(i, j + 1) : at(i, j);
    const double dn = (j > 0) ? at(i, j - 1) : at(i, j);
    res += (sp * (up - at(i, j)) - sm * (at(i, j) - dn)) /
           (r * r * ht_ * ht_ * sc);
    return res;
}

void BallAxisymHarmonicSolver::solve(const std::function<double(double)>& g) {
    double gmax = 0.0;
    for (int j = 0; j < nt_; ++j) {
        at(nr_, j) = g(theta_at(j));
        gmax = std::max(gmax, std::abs(at(nr_, j)));
    }
    if (gmax == 0.0) gmax = 1.0;
    // initial guess: boundary mean everywhere
    double mean = pole_weighted_mean(nr_);
    for (int i = 0; i < nr_; ++i)
        for (int j = 0; j < nt_; ++j) at(i, j) = mean;

    // theta-line relaxation: exact tridiagonal solve along each angular
    // line (the 1/r^2 coupling is stiff near the origin), over-relaxed
    // Gauss-Seidel in the radial direction
    const double omega = 2.0 / (1.0 + std::sin(std::numbers::pi / nr_));
    const int nj = nt_;
    std::vector<double> al(nj), ad(nj), au(nj), rhs(nj);
    for (int sweep = 0; sweep < max_iters_; ++sweep) {
        double maxcorr = 0.0;
        for (int i = 1; i < nr_; ++i) {
            const double r = i * hr_;
            const double rp = std::pow(r + 0.5 * hr_, n_ - 1);
            const double rm = std::pow(r - 0.5 * hr_, n_ - 1);
            const double rc = std::pow(r, n_ - 1) * hr_ * hr_;
            const double crp = rp / rc, crm = rm / rc;
            for (int j = 0; j < nj; ++j) {
                const double t = theta_at(j);
                const double sc = std::pow(std::sin(t), n_ - 2);
                const double sp =
                    std::pow(std::sin(t + 0.5 * ht_), n_ - 2);
                const double sm =
                    std::pow(std::sin(t - 0.5 * ht_), n_ - 2);
                al[j] = (j > 0) ? sm / (r * r * ht_ * ht_ * sc) : 0.0;
                au[j] = (j + 1 < nj) ? sp / (r * r * ht_ * ht_ * sc) : 0.0;
                ad[j] = -(crp + crm + al[j] + au[j]);
                rhs[j] = -(crm * at(i - 1, j) + crp * at(i + 1, j));
            }
            // Thomas on the line
            for (int j = 1; j < nj; ++j) {
                const double w = al[j] / ad[j - 1];
                ad[j] -= w * au[j - 1];
                rhs[j] -= w * rhs[j - 1];
            }
            rhs[nj - 1] /= ad[nj - 1];
            for (int j = nj - 2; j >= 0; --j)
                rhs[j] = (rhs[j] - au[j] * rhs[j + 1]) / ad[j];
            for (int j = 0; j < nj; ++j) {
                const double corr = omega * (rhs[j] - at(i, j));
                at(i, j) += corr;
                maxcorr = std::max(maxcorr, std::abs(corr));
            }
        }
        // origin closed by the mean-value property over the first shell
        double u0 = pole_weighted_mean(1);
        for (int j = 0; j < nj; ++j) at(0, j) = u0;
        if (maxcorr < tol_ * gmax) break;
        if (sweep == max_iters_ - 1)
            fail(ErrorCode::QuadratureNotConverged,
                 "relaxation did not reach tolerance");
    }
    solved_ = true;
}

double BallAxisymHarmonicSolver::value(double r, double theta) const {
    if (!solved_) fail(ErrorCode::ConfigInvalid, "solve() not called");
    if (r < 0.0 || r > radius_ * (1.0 + 1e-12))
        fail(ErrorCode::PointOutsideDomain, "radius outside ball");
    const double si = std::clamp(r / hr_, 0.0, double(nr_));
    const int i = std::min(int(si), nr_ - 1);
    const double a = si - i;
    // staggered theta; inside the pole half-cells use the even (theta^2)
    // extrapolation implied by the axisymmetric smoothness
    auto line = [&](int ir) -> double {
        const double t0 = theta_at(0);
        if (theta <= t0) {
            const double t1 = theta_at(1);
            const double c = (at(ir, 1) - at(ir, 0)) / (t1 * t1 - t0 * t0);
            return at(ir, 0) + c * (theta * theta - t0 * t0);
        }
        const double tl = theta_at(nt_ - 1);
        if (theta >= tl) {
            const double s = std::numbers::pi - theta;
            const double s0 = std::numbers::pi - tl;
            const double s1 = std::numbers::pi - theta_at(nt_ - 2);
            const double c = (at(ir, nt_ - 2) - at(ir, nt_ - 1)) /
                             (s1 * s1 - s0 * s0);
            return at(ir, nt_ - 1) + c * (s * s - s0 * s0);
        }
        double sj = theta / ht_ - 0.5;
        int j = std::min(int(sj), nt_ - 2);
        const double b = sj - j;
        return (1 - b) * at(ir, j) + b * at(ir, j + 1);
    };
    return (1 - a) * line(i) + a * line(i + 1);
}

double BallAxisymHarmonicSolver::origin_value() const { return at(0, 0); }

double BallAxisymHarmonicSolver::harmonic_defect(
    const std::function<double(double, double)>& f) const {
    BallAxisymHarmonicSolver tmp(n_, radius_, nr_, nt_, tol_, max_iters_);
    for (int i = 0; i <= nr_; ++i)
        for (int j = 0; j < nt_; ++j)
            tmp.at(i, j) = f(i * hr_, theta_at(j));
    double worst = 0.0;
    for (int i = 1; i < nr_; ++i)
        for (int j = 0; j < nt_; ++j)
            worst = std::max(worst, std::abs(tmp.residual_at(i, j)));
    return worst;
}

// ---------------------------------------------------------------------
// public operations
// ---------------------------------------------------------------------

double regular_part(const DomainSpec& domain, const Point& x, const Point& y,
                    const GreensConfig& cfg) {
    domain.validate();
    check_interior(domain, y, "y");
    if (!domain.contains(x) && domain.boundary_distance(x) < -1e-12)
        fail(ErrorCode::PointOutsideDomain, "x outside closed domain");
    if (domain.kind == DomainKind::UnitBall)
        return ball_regular_part(domain.n, domain.radius, x, y);
    BoxHarmonicSolver solver(domain, cfg.box_nodes);
    const int n = domain.n;
    solver.solve([&](const Point& b) {
        return alpha_n(n) * std::pow(dist(b, y), 2 - n);
    });
    return solver.value(x);
}

double green(const DomainSpec& domain, const Point& x, const Point& y,
             const GreensConfig& cfg) {
    domain.validate();
    check_interior(domain, x, "x");
    check_interior(domain, y, "y");
    const double r = dist(x, y);
    if (r == 0.0) fail(ErrorCode::CoincidentPoints, "green needs x != y");
    return alpha_n(domain.n) * std::pow(r, 2 - domain.n) -
           regular_part(domain, x, y, cfg);
}

GreensMatrix robin_matrix(const DomainSpec& domain,
                          const std::vector<Point>& points,
                          const GreensConfig& cfg) {
    const int k = static_cast<int>(points.size());
    if (k < 1) fail(ErrorCode::ConfigInvalid, "need at least one point");
    for (int i = 0; i < k; ++i) {
        check_interior(domain, points[i], "q");
        for (int j = i + 1; j < k; ++j)
            if (dist(points[i], points[j]) == 0.0)
                fail(ErrorCode::DuplicatePoints,
                     "robin_matrix points must be pairwise distinct");
    }
    GreensMatrix m;
    m.k = k;
    m.points = points;
    m.entries.assign(size_t(k) * k, 0.0);
    // one BVP solve per source point covers its row for the box
    for (int j = 0; j < k; ++j) {
        if (domain.kind == DomainKind::UnitBall) {
            for (int i = 0; i < k; ++i) {
                if (i == j)
                    m.entries[size_t(j) * k + j] = ball_regular_part(
                        domain.n, domain.radius, points[j], points[j]);
                else
                    m.entries[size_t(i) * k + j] =
                        -green(domain, points[i], points[j], cfg);
            }
        } else {
            BoxHarmonicSolver solver(domain, cfg.box_nodes);
            const int n = domain.n;
            const Point& y = points[j];
            solver.solve([&](const Point& b) {
                return alpha_n(n) * std::pow(dist(b, y), 2 - n);
            });
            for (int i = 0; i < k; ++i) {
                double H = solver.value(points[i]);
                if (i == j)
                    m.entries[size_t(j) * k + j] = H;
                else
                    m.entries[size_t(i) * k + j] =
                        -(alpha_n(n) *
                              std::pow(dist(points[i], y), 2 - n) -
                          H);
            }
        }
    }
    // enforce exact symmetry (Green symmetry holds to solver tolerance)
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            double v = 0.5 * (m.at(i, j) + m.at(j, i));
            m.entries[size_t(i) * k + j] = v;
            m.entries[size_t(j) * k + i] = v;
        }
    return m;
}

bool is_positive_definite(const GreensMatrix& m, double tol,
                          bool* borderline) {
    if (borderline) *borderline = false;
    const int k = m.k;
    double scale = 0.0;
    for (double v : m.entries) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = 1.0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (std::abs(m.at(i, j) - m.at(j, i)) > 1e-12 * scale)
                fail(ErrorCode::NonSymmetricInput,
                     "matrix is not symmetric");
    Eigen::MatrixXd a(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) a(i, j) = m.at(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin > tol) return true;
    if (borderline && lmin >= -tol) *borderline = true;
    return false;
}

}  // namespace fdlab
