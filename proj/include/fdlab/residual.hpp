#ifndef FDLAB_RESIDUAL_HPP
#define FDLAB_RESIDUAL_HPP

#include <functional>

#include "fdlab/ansatz.hpp"

namespace fdlab {

// space-time field sampler u(x, t)
using FieldSampler = std::function<double(const Point&, double)>;

struct ResidualOptions {
    bool richardson_check = false;
    double richardson_tol = 1e-3;   // relative disagreement triggering
                                    // StepTooLarge
};

// Numerical residual S(u) = -(u^p)_t + Delta u + u^p by centered finite
// differences: 4th order in space, 2nd order in time. This is the oracle
// against which the analytic expansion terms are judged.
double residual_S(const FieldSampler& u, const Point& x, double t, double h_x,
                  double h_t, int n, const ResidualOptions& opts = {});

struct ProjectionOptions {
    int radial_nodes_per_decade = 64;
    int theta_nodes = 12;          // Gauss nodes in cos(theta), n = 3 only
    int phi_nodes = 24;            // trapezoid nodes in phi
    double fd_step_rel = 5e-3;     // h_x = rel * mu_j
    double fd_time_rel = 1e-3;     // h_t = rel * t
};

// Linear functional behind the solvability conditions:
//   int_{B_R} mu_j^{(n+2)/2} f(xi_j + mu_j y, t) Z_l(y) dy
// for a pointwise field f. R must satisfy mu_j R <= eps/2 so the scaled
// ball stays inside the cutoff plateau. Spherical product quadrature for
// n = 3; radial configurations only for higher dimensions.
double project_field(const FieldSampler& f, int l, int j, double t,
                     const AnsatzEvaluator& ev, double R,
                     const ProjectionOptions& opts = {});

// projection of the finite-difference residual S[u] of a field u
double project_residual_of(const FieldSampler& u, int l, int j, double t,
                           const AnsatzEvaluator& ev, double R,
                           const ProjectionOptions& opts = {});

// projection of the ansatz residual S[z]
double project_residual(int l, int j, double t, const AnsatzEvaluator& ev,
                        double R, const ProjectionOptions& opts = {});

}  // namespace fdlab

#endif
