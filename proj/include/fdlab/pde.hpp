#ifndef FDLAB_PDE_HPP
#define FDLAB_PDE_HPP

#include <limits>
#include <memory>
#include <vector>

#include "fdlab/ansatz.hpp"

namespace fdlab {

enum class GridStretching { Uniform, Graded };

// Radial mesh on [0, R]. Graded meshes blend a linear floor into the
// quadratic map r = R s^2 so the smallest cell stays well above the
// rounding floor of the 1/h^2 stencil weights.
struct RadialGrid {
    int n = 3;
    double R = 1.0;
    std::vector<double> nodes;
    GridStretching stretching = GridStretching::Uniform;

    static RadialGrid make(int n, double R, int intervals,
                           GridStretching stretching,
                           double grading_blend = 0.1);
    int intervals() const { return static_cast<int>(nodes.size()) - 1; }
    void validate() const;
};

enum class StateForm { WForm, UForm };

// Discretized radial solution. In WForm, values hold w at the nodes and t
// is the physical time tau; in UForm, values hold u and t is the
// logarithmic time of the transformed problem.
struct RadialState {
    std::shared_ptr<const RadialGrid> grid;
    double t = 0.0;
    std::vector<double> values;
    StateForm form = StateForm::WForm;
    double m = 0.5;   // diffusion exponent; the u-form exponent is 1/m

    double sup() const;
    double center() const { return values.front(); }
    void validate() const;
};

struct ExtinctionSample {
    double tau = 0.0;
    double sup = 0.0;
    double center = 0.0;
    double dt = 0.0;
    int newton_iters = 0;
};

struct ExtinctionRecord {
    std::vector<ExtinctionSample> samples;
    double T_est = std::numeric_limits<double>::quiet_NaN();
    double T_ci = std::numeric_limits<double>::quiet_NaN();
};

struct SolverConfig {
    double newton_tol = 1e-10;        // relative to the current sup
    int newton_max = 30;
    int target_iters_low = 3;         // dt grows below this count
    int target_iters_high = 8;        // dt shrinks above it
    double dt_init = 1e-5;
    double dt_growth = 1.2;
    double dt_shrink = 0.5;
    double rel_change_cap = 0.01;     // max relative sup change per step
    double floor_rel = 1e-8;          // stop when sup < floor_rel * sup(0)
    long max_steps = 4000000;
    int records_per_decade = 12;
    double dt_min_rel = 1e-16;        // vs initial dt; stalls below this
};

// One backward-Euler step of dw/dtau = Delta w^m, solved by damped Newton
// in the v = w^m variable. Iterates are kept positive by the line search.
RadialState step_fast_diffusion(const RadialState& state, double dt,
                                const SolverConfig& cfg = {},
                                int* iters = nullptr);

// One backward-Euler step of (u^{1/m})_t = Delta u + coupling u^{1/m}.
// coupling = 1 is the Yamabe normalization; 1/(1-m) is the exact image of
// the fast diffusion flow under the pointwise transformation.
RadialState step_yamabe(const RadialState& state, double dt, double coupling,
                        const SolverConfig& cfg = {}, int* iters = nullptr);

ExtinctionRecord simulate_to_extinction(const RadialState& init,
                                        const SolverConfig& cfg = {},
                                        std::vector<RadialState>* snapshots
                                        = nullptr,
                                        const std::vector<double>*
                                        snapshot_levels = nullptr);

struct Trajectory {
    std::vector<ExtinctionSample> series;    // (t, sup, center, dt, iters)
    std::vector<RadialState> snapshots;
};

// Implicit evolution of the u-form equation up to t_end, storing
// snapshots at the requested times (step sizes land on them exactly).
Trajectory simulate_yamabe(const RadialState& init, double t_end,
                           const std::vector<double>& snapshot_times,
                           double coupling = 1.0,
                           const SolverConfig& cfg = {});

// Pointwise change of variables u = (T-tau)^{-m/(1-m)} w^m with
// tau = T (1 - e^{-t}); exact inverse pair.
RadialState transform_w_to_u(const RadialState& state, double T);
RadialState transform_u_to_w(const RadialState& state, double T);

// Samples the ansatz on the grid. WForm applies the inverse transformation
// with remaining-lifetime scale theta (amplitude gauge of the w problem).
RadialState init_from_ansatz(const AnsatzConfig& cfg, const ScalingLaw& law,
                             double t0, const RadialGrid& grid,
                             StateForm form, double theta = 1.0,
                             const GreensConfig& gcfg = {});

}  // namespace fdlab

#endif
