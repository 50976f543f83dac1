#ifndef FDLAB_PARAMS_HPP
#define FDLAB_PARAMS_HPP

#include <utility>
#include <vector>

#include "fdlab/greens.hpp"

namespace fdlab {

// Quadrature options for the scalar constants.
struct ConstantsConfig {
    int nodes_per_decade = 64;
    double r_max = 1e4;        // analytic power-law tail beyond this
    double rel_tol = 1e-8;     // two refinement levels must agree to this
};

// c1 = -p Int U^{p-1} Z_{n+1} dy  and  c2 = Int U^{p-1} Z_{n+1}^2 dy,
// both positive for n >= 3. Adaptive radial quadrature with closed-form
// power-law tails; throws QuadratureNotConverged if refinement disagrees.
std::pair<double, double> constants_c1_c2(int n,
                                          const ConstantsConfig& cfg = {});

// Convention for the mu-dot coefficient in the scale ODE. The projection
// of the time-derivative term carries a factor p; "WithP" folds it into
// the effective c2. The comparative residual oracle selects WithP.
enum class MuConvention { WithP, WithoutP };

// Scale law mu0(t) = gamma_n t^{-1/(n-2)} solving
//   mu0' = -(2 c1 / c2) / (n-2) * mu0^{n-1},
// gamma_n = (c2 / (2 c1))^{1/(n-2)}.
struct ScalingLaw {
    int n = 3;
    double c1 = 0.0;
    double c2 = 0.0;
    double gamma_n = 0.0;
    double t0 = 1.0;

    static ScalingLaw make(int n, double t0,
                           MuConvention conv = MuConvention::WithP,
                           const ConstantsConfig& cfg = {});
    static ScalingLaw from_constants(int n, double c1, double c2, double t0);
};

double mu0(double t, const ScalingLaw& law);
double mu0_dot(double t, const ScalingLaw& law);

// Algebraic system for the bubble coefficients b_j:
//   b_j^{n-3} H(q_j,q_j) - sum_{i != j} b_j^{(n-2)/2-1} b_i^{(n-2)/2}
//   G(q_j,q_i) = (2/(n-2)) / b_j.
struct BSystem {
    int k = 0;
    GreensMatrix matrix;
    int n = 3;
};

// Functional whose critical points solve the system:
// I(b) = (1/(n-2)) [ sum_j b_j^{n-2} H_jj
//                    - sum_{i != j} (b_i b_j)^{(n-2)/2} G_ij
//                    - sum_j ln b_j^2 ].
double functional_I(const std::vector<double>& b, const BSystem& sys);
std::vector<double> grad_I(const std::vector<double>& b, const BSystem& sys);

// same functional in Lambda_j = b_j^{(n-2)/2} variables (strictly convex
// when the matrix is positive definite)
double functional_I_tilde(const std::vector<double>& lambda,
                          const BSystem& sys);
std::vector<double> hessian_I_tilde_eigenvalues(const std::vector<double>& b,
                                                const BSystem& sys);

// Damped Newton in Lambda variables with backtracking on I~. Requires a
// positive definite matrix; converges to residual <= tol with all
// components positive.
std::vector<double> solve_b(const BSystem& sys, double tol = 1e-12,
                            int max_iters = 200);

// residual of the b-system as stated (max norm)
double b_system_residual(const std::vector<double>& b, const BSystem& sys);

}  // namespace fdlab

#endif
