#ifndef FDLAB_ORACLES_HPP
#define FDLAB_ORACLES_HPP

#include <utility>
#include <vector>

#include "fdlab/correction.hpp"
#include "fdlab/domain.hpp"
#include "fdlab/params.hpp"

namespace fdlab {
namespace oracles {

// Dirichlet sine-eigenfunction series for the box Green's function
// (n = 3), summed in closed sinh form along the axis of largest
// separation. Independent of the finite-difference solver.
double box_green_series(const std::vector<double>& lengths, const Point& x,
                        const Point& y, int modes = 80);

// closed forms via the Beta function:
//   c1 = alpha^p omega_{n-1} (n-2) / (2n)
//   c2 = alpha^{p+1} omega_{n-1} (n-2)^2 n Gamma(n/2)^2 / (8 Gamma(n+2))
std::pair<double, double> c1c2_closed_form(int n);

// RK4 integration of the scale ODE from (t0, mu0(t0)) to t1
double mu0_rk4(const ScalingLaw& law, double t0, double t1, int steps);

// Separable extinction profile: the positive radial solution of
//   Delta V + (1/(1-m)) V^{1/m} = 0,  V = 0 at r = R,
// by one shooting integration plus the exact scaling of the family.
// V is the u-form steady profile; S = V^{1/m} the w-form shape.
RadialProfile separable_profile(int n, double m, double R,
                                int grid_points = 4097);

// sup over sample radii of the radial FD residual of
//   Delta S^m + (n+2)/4 S
// for the bracket variant (exponent, constant); 4th-order stencil.
double ln_profile_ode_residual(double lambda, int n, double bracket_exponent,
                               double bracket_constant,
                               const std::vector<double>& radii, double h);

}  // namespace oracles
}  // namespace fdlab

#endif
