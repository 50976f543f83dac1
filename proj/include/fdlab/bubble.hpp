#ifndef FDLAB_BUBBLE_HPP
#define FDLAB_BUBBLE_HPP

#include <cmath>
#include <vector>

#include "fdlab/errors.hpp"

namespace fdlab {

// critical Sobolev exponent p = (n+2)/(n-2) and the matching diffusion
// exponent m_s = 1/p
inline double critical_p(int n) { return double(n + 2) / double(n - 2); }
inline double critical_m(int n) { return double(n - 2) / double(n + 2); }

// alpha_n = (n(n-2))^{(n-2)/4}, the amplitude making U a steady state of
// Delta u + u^p = 0.
inline double alpha_n(int n) {
    return std::pow(double(n) * double(n - 2), 0.25 * double(n - 2));
}

// Standard bubble profile U(y) = alpha_n (1+|y|^2)^{-(n-2)/2}, radial form.
inline double bubble_U_radial(double r, int n) {
    return alpha_n(n) * std::pow(1.0 + r * r, -0.5 * double(n - 2));
}

double bubble_U(const std::vector<double>& y, int n);

// dU/dr as a function of r >= 0
inline double bubble_U_deriv_radial(double r, int n) {
    return -double(n - 2) * alpha_n(n) * r *
           std::pow(1.0 + r * r, -0.5 * double(n));
}

// Kernel elements of the linearization L0 = Delta + p U^{p-1}:
//   Z_i = dU/dy_i for i = 1..n,  Z_{n+1} = (n-2)/2 U + y . grad U.
// Z_{n+1} is radial; the radial form is exposed separately.
inline double kernel_Z_dilation_radial(double r, int n) {
    return 0.5 * double(n - 2) * alpha_n(n) * (1.0 - r * r) *
           std::pow(1.0 + r * r, -0.5 * double(n));
}

double kernel_Z(int i, const std::vector<double>& y, int n);

// Scaled-translated bubble U_{mu,xi}(x) = mu^{-(n-2)/2} U((x-xi)/mu).
double bubble_U_scaled(const std::vector<double>& x, double mu,
                       const std::vector<double>& xi, int n);

// One-parameter family of positive radial steady states of
//   Delta S^m + (n+2)/4 S = 0  with  m = (n-2)/(n+2).
// The bracket convention (exponent (n+2)/2, inner constant 4n(n-2)) is the
// one that passes the radial ODE oracle; see loewner_nirenberg_S_variant
// for the rejected alternatives kept around for the convention test.
double loewner_nirenberg_S(double lambda, double r, int n);

// General bracket form lambda * [ c*n*(n-2) / (c*n*(n-2) +
// (n+2) lambda^{4/(n+2)} r^2) ]^{exponent}; the adopted convention is
// (exponent, c) = ((n+2)/2, 4).
double loewner_nirenberg_S_variant(double lambda, double r, int n,
                                   double bracket_exponent,
                                   double bracket_constant);

}  // namespace fdlab

#endif
