#ifndef FDLAB_ASYMPTOTICS_HPP
#define FDLAB_ASYMPTOTICS_HPP

#include <utility>
#include <vector>

#include "fdlab/pde.hpp"

namespace fdlab {

enum class RateModel { PurePower, LogCorrected };

// Fitted extinction-rate parameters on a (T-tau) window:
//   log ||w|| = log(amplitude) + power log(T-tau)
//               + log_power log |ln(T-tau)|.
struct RateFit {
    double amplitude = 0.0;
    double power = 0.0;
    double log_power = 0.0;
    double rms_residual = 0.0;
    std::pair<double, double> window{0.0, 0.0};   // in T-tau units
    int samples_used = 0;
};

// Scale series extracted from a trajectory with the fitted decay.
struct MuTrack {
    std::vector<double> t;
    std::vector<double> mu;
    double beta = 0.0;
    double slope = 0.0;          // free log-log slope (extract_mu) or the
                                 // linear coefficient model slope
    double rms = 0.0;
    double correlation = 0.0;    // linearity diagnostic (extract_mu_tilde)
    bool poor_fit = false;
};

struct EstimateTOptions {
    int min_samples = 10;
    // nested windows as fractions of the final decade of decay
    std::vector<double> window_fractions{1.0, 0.75, 0.5};
};

// Extinction time from the last decade of sup-norm decay: ||w||^{1-m} is
// fitted linearly in tau (exact for separable decay) and extrapolated to
// zero. The spread over nested windows gives the uncertainty.
std::pair<double, double> estimate_T(const ExtinctionRecord& record, double m,
                                     const EstimateTOptions& opts = {});

struct FitRateOptions {
    std::pair<double, double> window{1e-4, 1e-1};  // (T-tau)/T fractions
    int min_samples = 20;
};

// Weighted least squares for the extinction rate on the record samples
// inside the window, with trapezoidal weights in log(T-tau) spacing (the
// log-uniform weighting that removes end-clustering bias). LogCorrected
// adds the log|ln(T-tau)| regressor; PurePower freezes it to zero.
RateFit fit_rate(const ExtinctionRecord& record, double T, RateModel model,
                 const FitRateOptions& opts = {});

// ((n+2)/4, (n+2)/(2(n-2))) at the critical exponent, (1/(1-m), 0) in the
// supercritical range; the subcritical range is not supported.
std::pair<double, double> theoretical_rates(int n, double m);

// mu_est(t) = (alpha_n / u(0,t))^{2/(n-2)} from a u-form center series,
// with a free power-law fit of mu against t.
MuTrack extract_mu(const std::vector<double>& times,
                   const std::vector<double>& center_values, int n);

// mu~_est(tau) = (alpha_n (T-tau)^{(n-2)/4} / w^m(0,tau))^{2/(n-2)}
// fitted linearly against X = (log(T/(T-tau)))^{-1/(n-2)}.
MuTrack extract_mu_tilde(const ExtinctionRecord& record, double T, int n,
                         std::pair<double, double> window = {1e-4, 1e-1},
                         double poor_rms_threshold = 0.05);

}  // namespace fdlab

#endif
