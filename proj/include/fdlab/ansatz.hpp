#ifndef FDLAB_ANSATZ_HPP
#define FDLAB_ANSATZ_HPP

#include <memory>
#include <optional>
#include <vector>

#include "fdlab/correction.hpp"
#include "fdlab/greens.hpp"
#include "fdlab/params.hpp"

namespace fdlab {

// Blow-up point configuration that fully determines z(x, t) once a
// scaling law is fixed. gamma_tilde left empty means "use the fitted
// leading-order value"; all zeros reproduce the uncorrected sum.
struct AnsatzConfig {
    int n = 3;
    DomainSpec domain;
    int k = 1;
    std::vector<Point> q;
    std::vector<double> b;
    double eps_cutoff = 0.25;
    std::vector<double> gamma_tilde;
    bool use_mu_corrected_H = false;

    void validate() const;
};

struct Bubble {
    double mu;
    Point xi;
    int n;
};

// C^2 quintic ramp: 1 on [0, eps/2], 0 outside [0, eps].
double cutoff_eta0(double s, double eps);

// Evaluator caching the Green BVP solves and the p0 profile. All methods
// are const and safe to call concurrently after construction.
class AnsatzEvaluator {
  public:
    AnsatzEvaluator(const AnsatzConfig& cfg, const ScalingLaw& law,
                    const GreensConfig& greens_cfg = {});

    const AnsatzConfig& config() const { return cfg_; }
    const ScalingLaw& law() const { return law_; }

    // regular part entering bubble j at position x (solves the
    // mu-corrected problem when the config requests it)
    double h_term(int j, const Point& x, double mu) const;

    // z~ with explicit scales/centers
    double tilde_z(const Point& x, const std::vector<double>& mu,
                   const std::vector<Point>& xi) const;
    // z~ on the scaling-law trajectory mu_j = b_j mu0(t), xi_j = q_j
    double tilde_z_at(const Point& x, double t) const;
    // full corrected ansatz z = z~ + sum_j eta0 Phi_j
    double z(const Point& x, double t) const;
    // z^p time derivative source terms need mu_j(t); exposed for reuse
    double mu_j(int j, double t) const { return cfg_.b[j] * mu0(t, law_); }

    const RadialProfile& p0() const;
    double gamma_tilde(int j) const { return gamma_[j]; }

  private:
    AnsatzConfig cfg_;
    ScalingLaw law_;
    GreensConfig gcfg_;
    std::vector<double> gamma_;
    mutable std::shared_ptr<const RadialProfile> p0_;
    // cached per-point box solves (time independent)
    std::vector<std::shared_ptr<BoxHarmonicSolver>> box_h_;
    // mu-corrected ball solves keyed by (j, mu); guarded lazy cache
    struct MuSolve {
        int j;
        double mu;
        std::shared_ptr<BallAxisymHarmonicSolver> solver;
    };
    struct BoxMuSolve {
        int j;
        double mu;
        std::shared_ptr<BoxHarmonicSolver> solver;
    };
    mutable std::vector<MuSolve> mu_cache_;
    mutable std::vector<BoxMuSolve> box_mu_cache_;
    double ball_mu_h(int j, const Point& x, double mu) const;
};

// Expansion term E_{0j}: the leading interaction + scale-velocity error
// density around bubble j. The mu-dot coefficient convention is selected
// by `conv`; the finite-difference residual oracle fixes WithP.
double error_E0j(double y_radius, int j, double t, const AnsatzConfig& cfg,
                 const ScalingLaw& law, const GreensMatrix& interactions,
                 MuConvention conv = MuConvention::WithP);

// Least-squares fit of gamma~ from mu_{0j} E_{0j} = -gamma~ mu0^{n-2} q0.
double fitted_gamma_tilde(int j, double t, const AnsatzConfig& cfg,
                          const ScalingLaw& law,
                          const GreensMatrix& interactions,
                          MuConvention conv = MuConvention::WithP);

// convenience wrappers matching the operation signatures
double ansatz_tilde_z(const Point& x, const std::vector<double>& mu,
                      const std::vector<Point>& xi, const AnsatzConfig& cfg,
                      const ScalingLaw& law);
double full_ansatz_z(const Point& x, double t, const AnsatzConfig& cfg,
                     const ScalingLaw& law);

}  // namespace fdlab

#endif
