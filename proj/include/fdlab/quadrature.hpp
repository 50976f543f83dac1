#ifndef FDLAB_QUADRATURE_HPP
#define FDLAB_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace fdlab {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes/weights computed by Newton iteration on P_n; cached per order.
const GaussRule& gauss_legendre(int order);

// Deterministic pairwise summation. Reduction order is fixed by the input
// order, independent of any parallel scheduling of the term evaluations.
double pairwise_sum(const std::vector<double>& terms);

// integral of f over [a, b] with a single Gauss panel of given order
double integrate_panel(const std::function<double(double)>& f, double a,
                       double b, int order = 32);

// Integral of f over [a, b] split into geometric "decade" panels
// (each panel spans a factor of 10 in the coordinate), with
// nodes_per_decade Gauss points per panel. The innermost panel [a, a0]
// with a0 = b * 10^{-max_decades} is integrated as a single panel when
// a is 0; otherwise decades run from a to b.
double integrate_decades(const std::function<double(double)>& f, double a,
                         double b, int nodes_per_decade = 64,
                         int max_decades = 14);

// omega_{n-1}: surface measure of the unit sphere S^{n-1} in R^n.
double sphere_area(int n);

}  // namespace fdlab

#endif
