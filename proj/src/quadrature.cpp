#include "fdlab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace fdlab {

static GaussRule compute_gauss(int order) {
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev initial guess, then Newton on P_n(x) = 0.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[order - 1 - i] = rule.weights[i];
    }
    return rule;
}

const GaussRule& gauss_legendre(int order) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gauss(order)).first;
    return it->second;
}

double pairwise_sum(const std::vector<double>& terms) {
    // recursive halving; base case summed left to right
    std::function<double(size_t, size_t)> rec = [&](size_t lo, size_t hi) {
        if (hi - lo <= 8) {
            double s = 0.0;
            for (size_t i = lo; i < hi; ++i) s += terms[i];
            return s;
        }
        size_t mid = lo + (hi - lo) / 2;
        return rec(lo, mid) + rec(mid, hi);
    };
    if (terms.empty()) return 0.0;
    return rec(0, terms.size());
}

double integrate_panel(const std::function<double(double)>& f, double a,
                       double b, int order) {
    const GaussRule& rule = gauss_legendre(order);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    std::vector<double> terms(rule.nodes.size());
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        terms[i] = rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * pairwise_sum(terms);
}

double integrate_decades(const std::function<double(double)>& f, double a,
                         double b, int nodes_per_decade, int max_decades) {
    if (b <= a) return 0.0;
    double total = 0.0;
    if (a <= 0.0) {
        double a0 = b * std::pow(10.0, -max_decades);
        total += integrate_panel(f, a, a0, nodes_per_decade);
        a = a0;
    }
    // panels [a*10^j, a*10^{j+1}] capped at b
    double lo = a;
    while (lo < b) {
        double hi = std::min(lo * 10.0, b);
        total += integrate_panel(f, lo, hi, nodes_per_decade);
        lo = hi;
    }
    return total;
}

double sphere_area(int n) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

}  // namespace fdlab
