#ifndef FDLAB_SPHERE_HPP
#define FDLAB_SPHERE_HPP

#include <functional>
#include <vector>

#include "fdlab/domain.hpp"

namespace fdlab {

// point on the unit sphere S^n embedded in R^{n+1}
struct SpherePoint {
    std::vector<double> coords;
};

// pi(y) = (2y/(1+|y|^2), (|y|^2-1)/(|y|^2+1)); the origin maps to the
// south pole.
SpherePoint stereographic(const Point& y);
Point inverse_stereographic(const SpherePoint& p);

// conformal factor (2/(1+|y|^2))^{(n-2)/2} relating phi and its lift
double conformal_factor(const Point& y, int n);

using FlatFunction = std::function<double(const Point&)>;
using SphereFunction = std::function<double(const SpherePoint&)>;

// phi(y) = phi~(pi(y)) (2/(1+|y|^2))^{(n-2)/2}
SphereFunction lift(const FlatFunction& phi, int n);
FlatFunction unlift(const SphereFunction& phi_tilde, int n);

// Laplace-Beltrami of f at p by 5-point finite differences along
// orthonormal geodesic directions (exact normal-coordinate reduction).
double sphere_laplacian_fd(const SphereFunction& f, const SpherePoint& p,
                           double step);

// Max over samples of
//   | (2/(1+|y|^2))^{(n+2)/2} (Delta_S - n(n-2)/4) phi~ (pi(y))
//     - Delta_flat phi(y) |
// with both sides at 4th finite-difference order.
double conformal_laplacian_check(const FlatFunction& phi,
                                 const std::vector<Point>& samples, int n,
                                 double h_flat, double h_sphere);

// Defect of the eigen equation Delta_S Theta + n Theta = 0 for the lift
// of Z_i, maximized over samples.
double lifted_kernel_eigen_defect(int i, const std::vector<Point>& samples,
                                  int n, double h_sphere);

}  // namespace fdlab

#endif
