#include "fdlab/bubble.hpp"

namespace fdlab {

static double norm2(const std::vector<double>& y) {
    double s = 0.0;
    for (double v : y) s += v * v;
    return s;
}

double bubble_U(const std::vector<double>& y, int n) {
    return alpha_n(n) * std::pow(1.0 + norm2(y), -0.5 * double(n - 2));
}

double kernel_Z(int i, const std::vector<double>& y, int n) {
    if (i < 1 || i > n + 1)
        fail(ErrorCode::IndexOutOfRange,
             "kernel index must be in 1..n+1, got " + std::to_string(i));
    const double r2 = norm2(y);
    if (i <= n) {
        // dU/dy_i
        return -double(n - 2) * alpha_n(n) * y[i - 1] *
               std::pow(1.0 + r2, -0.5 * double(n));
    }
    return 0.5 * double(n - 2) * alpha_n(n) * (1.0 - r2) *
           std::pow(1.0 + r2, -0.5 * double(n));
}

double bubble_U_scaled(const std::vector<double>& x, double mu,
                       const std::vector<double>& xi, int n) {
    double r2 = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        double d = (x[i] - xi[i]) / mu;
        r2 += d * d;
    }
    return std::pow(mu, -0.5 * double(n - 2)) * alpha_n(n) *
           std::pow(1.0 + r2, -0.5 * double(n - 2));
}

double loewner_nirenberg_S_variant(double lambda, double r, int n,
                                   double bracket_exponent,
                                   double bracket_constant) {
    const double c = bracket_constant * double(n) * double(n - 2);
    const double scale =
        std::pow(lambda, 4.0 / double(n + 2)) * double(n + 2) * r * r;
    return lambda * std::pow(c / (c + scale), bracket_exponent);
}

double loewner_nirenberg_S(double lambda, double r, int n) {
    return loewner_nirenberg_S_variant(lambda, r, n, 0.5 * double(n + 2), 4.0);
}

}  // namespace fdlab
