#ifndef FDLAB_GREENS_HPP
#define FDLAB_GREENS_HPP

#include <functional>
#include <memory>
#include <vector>

#include "fdlab/domain.hpp"

namespace fdlab {

// Resolution knobs for the boundary-value solves backing the box regular
// part and the mu-corrected ball data. Doubling exposes grid refinement.
struct GreensConfig {
    int box_nodes = 129;       // grid nodes per axis, boundary included
    int ball_nr = 129;         // radial intervals for the axisymmetric solve
    int ball_ntheta = 258;     // staggered angular cells
    double sor_tol = 1e-11;
    int sor_max_iters = 200000;
};

// Interaction matrix: diagonal H(q_j,q_j), off-diagonal -G(q_i,q_j).
struct GreensMatrix {
    int k = 0;
    std::vector<double> entries;        // row-major k x k
    std::vector<Point> points;
    double at(int i, int j) const { return entries[i * k + j]; }
};

// Green's function G(x,y) = alpha_n |x-y|^{2-n} - H(x,y) with Dirichlet
// boundary condition. Ball uses the image construction, box a
// finite-difference Laplace solve with exact boundary data.
double green(const DomainSpec& domain, const Point& x, const Point& y,
             const GreensConfig& cfg = {});

// Regular part H(x,y): harmonic in x, equal to alpha_n |x-y|^{2-n} on the
// boundary. y must be interior; x may lie on the closed domain.
double regular_part(const DomainSpec& domain, const Point& x, const Point& y,
                    const GreensConfig& cfg = {});

GreensMatrix robin_matrix(const DomainSpec& domain,
                          const std::vector<Point>& points,
                          const GreensConfig& cfg = {});

// True iff symmetric and all eigenvalues exceed tol. Eigenvalues inside
// [-tol, tol] report NotPD and set *borderline when provided.
bool is_positive_definite(const GreensMatrix& m, double tol = 1e-12,
                          bool* borderline = nullptr);

// closed-form ball image regular part (exposed for reuse and tests)
double ball_regular_part(int n, double radius, const Point& x, const Point& y);

// Harmonic solver on the box grid: Delta u = 0 with prescribed boundary
// data, solved exactly in the discrete sense through sine-transform
// diagonalization. Reusable for repeated evaluations with the same y.
class BoxHarmonicSolver {
  public:
    BoxHarmonicSolver(const DomainSpec& domain, int nodes_per_axis);
    // boundary data as a function of the boundary point
    void solve(const std::function<double(const Point&)>& g);
    double value(const Point& x) const;   // cubic tensor interpolation

  private:
    DomainSpec domain_;
    int nodes_;                       // nodes per axis incl. boundary
    std::vector<double> h_;           // spacings per axis
    std::vector<double> grid_;        // full grid values, x fastest
    bool solved_ = false;
    size_t idx(int i, int j, int l) const;
};

// Axisymmetric harmonic solver on the ball (solution depending only on
// radius and the polar angle from a fixed axis). Second-order conservative
// finite differences in (r, theta), SOR iteration. Serves as the grid
// oracle for the image formula and evaluates the mu-corrected data.
class BallAxisymHarmonicSolver {
  public:
    BallAxisymHarmonicSolver(int n, double radius, int nr, int ntheta,
                             double sor_tol = 1e-11,
                             int max_iters = 200000);
    // boundary data as a function of theta in [0, pi]
    void solve(const std::function<double(double)>& g);
    double value(double r, double theta) const;
    double origin_value() const;
    // max |discrete Laplacian| over interior nodes of the given field
    double harmonic_defect(const std::function<double(double, double)>& u) const;

  private:
    int n_, nr_, nt_;
    double radius_, hr_, ht_, tol_;
    int max_iters_;
    std::vector<double> u_;     // (nr_+1) x nt_, staggered theta cells
    bool solved_ = false;
    double& at(int i, int j) { return u_[i * nt_ + j]; }
    double at(int i, int j) const { return u_[i * nt_ + j]; }
    double theta_at(int j) const;
    double residual_at(int i, int j) const;
    double pole_weighted_mean(int i) const;
};

}  // namespace fdlab

#endif
