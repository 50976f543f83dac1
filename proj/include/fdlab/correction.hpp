#ifndef FDLAB_CORRECTION_HPP
#define FDLAB_CORRECTION_HPP

#include <vector>

#include "fdlab/errors.hpp"

namespace fdlab {

// Radial profile with cubic Hermite interpolation between nodes and a
// c/r^2 extrapolation beyond the last node.
struct RadialProfile {
    std::vector<double> r;
    std::vector<double> v;
    std::vector<double> dv;
    double tail_coeff = 0.0;   // v ~ tail_coeff / r^2 past r.back()

    double value(double radius) const;
    double deriv(double radius) const;
};

// Source term q0(y) = p U^{p-1} c2 + c1 U^{p-1} Z_{n+1}(y); orthogonal to
// Z_{n+1} in the flat pairing by the definitions of c1 and c2.
double q0_source(double r, int n, double c1, double c2);

struct CorrectionOptions {
    double r_match = 400.0;    // asymptotic matching radius
    double step_near = 1e-3;   // RK4 step for r < 1
    double step_rel = 1e-3;    // relative RK4 step for r > 1
    double bracket_limit = 1e6;
};

// Unique decaying solution p0 of
//   Phi'' + (n-1)/r Phi' + p U^{p-1} Phi = q0(r),
// regular at the origin with p0 = O(r^{-2}) at infinity. Shooting on the
// free value at the origin, bisection on the tail mismatch
// Phi'(R) + 2 Phi(R)/R. The result is sampled on the caller's grid.
RadialProfile correction_p0(const std::vector<double>& r_grid, int n,
                            const CorrectionOptions& opts = {});

}  // namespace fdlab

#endif
