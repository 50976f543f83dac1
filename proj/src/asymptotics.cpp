#include "fdlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "fdlab/bubble.hpp"

namespace fdlab {

namespace {

struct LinFit {
    double intercept;
    double slope;
};

// centered least squares y = a + b x
LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0)
        fail(ErrorCode::SingularDesignMatrix, "degenerate abscissa");
    const double b = sxy / sxx;
    return {my - b * mx, b};
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

std::pair<double, double> estimate_T(const ExtinctionRecord& record, double m,
                                     const EstimateTOptions& opts) {
    std::vector<std::pair<double, double>> pos;   // (tau, sup)
    for (const auto& s : record.samples)
        if (s.sup > 0.0) pos.emplace_back(s.tau, s.sup);
    if (pos.size() < 2)
        fail(ErrorCode::InsufficientSamples, "record has too few samples");
    const double sup_min = pos.back().second;
    std::vector<double> tau, y;
    for (const auto& [t, s] : pos)
        if (s <= 10.0 * sup_min) {
            tau.push_back(t);
            y.push_back(std::pow(s, 1.0 - m));
        }
    if (static_cast<int>(tau.size()) < opts.min_samples)
        fail(ErrorCode::InsufficientSamples,
             "need >= 10 samples in the final decade of decay");

    std::vector<double> roots;
    for (double frac : opts.window_fractions) {
        size_t count = std::max<size_t>(
            2, static_cast<size_t>(std::ceil(frac * tau.size())));
        count = std::min(count, tau.size());
        std::vector<double> tt(tau.end() - count, tau.end());
        std::vector<double> yy(y.end() - count, y.end());
        LinFit f = linear_fit(tt, yy);
        if (!(f.slope < 0.0))
            fail(ErrorCode::SingularDesignMatrix,
                 "final-decade samples do not decay");
        roots.push_back(-f.intercept / f.slope);
    }
    const auto [lo, hi] = std::minmax_element(roots.begin(), roots.end());
    return {roots.front(), 0.5 * (*hi - *lo)};
}

RateFit fit_rate(const ExtinctionRecord& record, double T, RateModel model,
                 const FitRateOptions& opts) {
    std::vector<std::pair<double, double>> pts;   // (T - tau, sup), decreasing
    for (const auto& s : record.samples) {
        if (!(s.sup > 0.0)) continue;
        if (!(T > s.tau))
            fail(ErrorCode::TimeOutOfRange, "T must exceed all sample times");
        pts.emplace_back(T - s.tau, s.sup);
    }
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    double lo = opts.window.first * T, hi = opts.window.second * T;
    lo = std::max(lo, pts.back().first);
    hi = std::min(hi, pts.front().first);
    if (!(hi > lo))
        fail(ErrorCode::InsufficientSamples, "window misses the record");

    // weighted least squares on the in-window samples, trapezoidal
    // weights in log(T - tau) so end clustering carries no extra mass
    std::vector<double> X1, X2, L;
    for (const auto& [d, s] : pts) {
        if (d < lo || d > hi) continue;
        const double al = std::abs(std::log(d));
        if (al < 1e-2)
            fail(ErrorCode::SingularDesignMatrix,
                 "window has no |ln(T-tau)| variation");
        X1.push_back(std::log(d));
        X2.push_back(std::log(al));
        L.push_back(std::log(s));
    }
    const int N = static_cast<int>(X1.size());
    if (N < opts.min_samples)
        fail(ErrorCode::InsufficientSamples,
             "too few record samples inside the fit window");
    std::vector<double> w(N, 0.0);
    for (int i = 0; i < N; ++i) {
        if (i > 0) w[i] += 0.5 * std::abs(X1[i - 1] - X1[i]);
        if (i + 1 < N) w[i] += 0.5 * std::abs(X1[i] - X1[i + 1]);
    }
    double wsum = 0.0;
    for (double v : w) wsum += v;
    if (!(wsum > 0.0))
        fail(ErrorCode::SingularDesignMatrix, "degenerate sample spacing");

    RateFit fit;
    fit.window = {lo, hi};
    fit.samples_used = N;

    // weighted means
    double m1 = 0.0, m2 = 0.0, mL = 0.0;
    for (int i = 0; i < N; ++i) {
        m1 += w[i] * X1[i];
        m2 += w[i] * X2[i];
        mL += w[i] * L[i];
    }
    m1 /= wsum;
    m2 /= wsum;
    mL /= wsum;

    double s11 = 0.0, s12 = 0.0, s22 = 0.0, s1L = 0.0, s2L = 0.0;
    for (int i = 0; i < N; ++i) {
        const double a = X1[i] - m1, b = X2[i] - m2, c = L[i] - mL;
        s11 += w[i] * a * a;
        s12 += w[i] * a * b;
        s22 += w[i] * b * b;
        s1L += w[i] * a * c;
        s2L += w[i] * b * c;
    }

    double a_hat = 0.0, b_hat = 0.0;
    if (model == RateModel::PurePower) {
        if (!(s11 > 0.0))
            fail(ErrorCode::SingularDesignMatrix, "degenerate abscissa");
        a_hat = s1L / s11;
    } else {
        const double det = s11 * s22 - s12 * s12;
        if (!(std::abs(det) > 1e-12 * s11 * s22))
            fail(ErrorCode::SingularDesignMatrix,
                 "log regressors are collinear on this window");
        a_hat = (s1L * s22 - s2L * s12) / det;
        b_hat = (s2L * s11 - s1L * s12) / det;
    }
    fit.power = a_hat;
    fit.log_power = b_hat;
    fit.amplitude = std::exp(mL - a_hat * m1 - b_hat * m2);
    double ss = 0.0;
    for (int i = 0; i < N; ++i) {
        const double r =
            (L[i] - mL) - a_hat * (X1[i] - m1) - b_hat * (X2[i] - m2);
        ss += w[i] * r * r;
    }
    fit.rms_residual = std::sqrt(ss / wsum);
    return fit;
}

std::pair<double, double> theoretical_rates(int n, double m) {
    const double ms = critical_m(n);
    if (std::abs(m - ms) <= 1e-12)
        return {0.25 * (n + 2), 0.5 * double(n + 2) / double(n - 2)};
    if (m < ms)
        fail(ErrorCode::SubcriticalUnsupported,
             "m below the critical exponent is out of scope");
    if (!(m < 1.0))
        fail(ErrorCode::ConfigInvalid, "m must lie in (0, 1)");
    return {1.0 / (1.0 - m), 0.0};
}

MuTrack extract_mu(const std::vector<double>& times,
                   const std::vector<double>& center_values, int n) {
    if (times.size() != center_values.size() || times.size() < 2)
        fail(ErrorCode::InsufficientSamples, "mu series needs >= 2 samples");
    MuTrack track;
    const double a = alpha_n(n);
    std::vector<double> lt(times.size()), lm(times.size());
    for (size_t i = 0; i < times.size(); ++i) {
        if (!(center_values[i] > 0.0))
            fail(ErrorCode::NonpositiveCenterValue,
                 "center values must be positive");
        const double mu = std::pow(a / center_values[i], 2.0 / (n - 2));
        track.t.push_back(times[i]);
        track.mu.push_back(mu);
        lt[i] = std::log(times[i]);
        lm[i] = std::log(mu);
    }
    LinFit f = linear_fit(lt, lm);
    track.slope = f.slope;
    track.beta = std::exp(f.intercept);
    double ss = 0.0;
    for (size_t i = 0; i < lt.size(); ++i) {
        double r = lm[i] - (f.intercept + f.slope * lt[i]);
        ss += r * r;
    }
    track.rms = std::sqrt(ss / lt.size());
    track.correlation = pearson(lt, lm);
    return track;
}

MuTrack extract_mu_tilde(const ExtinctionRecord& record, double T, int n,
                         std::pair<double, double> window,
                         double poor_rms_threshold) {
    const double m = critical_m(n);
    const double a = alpha_n(n);
    MuTrack track;
    std::vector<double> X, mu;
    for (const auto& s : record.samples) {
        if (!(s.center > 0.0) || !(s.tau < T)) continue;
        const double frac = (T - s.tau) / T;
        if (frac < window.first || frac > window.second) continue;
        const double wm = std::pow(s.center, m);
        const double est = std::pow(
            a * std::pow(T - s.tau, 0.25 * (n - 2)) / wm, 2.0 / (n - 2));
        X.push_back(std::pow(std::log(T / (T - s.tau)), -1.0 / (n - 2)));
        mu.push_back(est);
        track.t.push_back(s.tau);
        track.mu.push_back(est);
    }
    if (X.size() < 5)
        fail(ErrorCode::InsufficientSamples,
             "too few samples in the mu~ window");
    LinFit f = linear_fit(X, mu);
    track.beta = f.slope;
    track.slope = f.slope;
    double ss = 0.0, mean_mu = 0.0;
    for (size_t i = 0; i < X.size(); ++i) {
        double r = mu[i] - (f.intercept + f.slope * X[i]);
        ss += r * r;
        mean_mu += std::abs(mu[i]);
    }
    mean_mu /= X.size();
    track.rms = std::sqrt(ss / X.size());
    track.correlation = pearson(X, mu);
    track.poor_fit = track.rms > poor_rms_threshold * mean_mu ||
                     track.correlation < 0.99;
    return track;
}

}  // namespace fdlab
