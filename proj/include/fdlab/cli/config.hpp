#ifndef FDLAB_CLI_CONFIG_HPP
#define FDLAB_CLI_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fdlab/ansatz.hpp"
#include "fdlab/asymptotics.hpp"
#include "fdlab/pde.hpp"

namespace fdlab::cli {

using json = nlohmann::json;

// Fully resolved run configuration. Parsing validates against the schema,
// rejects unknown keys and fills defaults; the resolved form is echoed
// into every output directory.
struct RunConfig {
    int dimension = 3;
    bool critical = true;          // exponent: "critical" or a number
    double exponent_m = 0.2;       // resolved m (critical -> (n-2)/(n+2))
    DomainSpec domain;

    // ansatz block
    int k = 1;
    std::vector<Point> points;
    double t0 = 1.0;
    double eps_cutoff = 0.4;
    std::vector<double> b;                    // empty -> solve_b
    std::vector<double> gamma_tilde;          // empty -> fitted
    bool use_mu_corrected_h = false;
    MuConvention mu_convention = MuConvention::WithP;
    double lifetime_scale = 0.0;              // 0 -> auto calibration
    std::vector<double> sample_times;
    double projection_radius_factor = 0.5;    // R = factor * eps / mu

    // grid block
    int grid_intervals = 2048;
    GridStretching stretching = GridStretching::Graded;
    double grading_blend = 0.1;

    SolverConfig solver;
    GreensConfig greens;

    // fit block
    std::pair<double, double> fit_window{1e-4, 1e-1};
    RateModel fit_model = RateModel::LogCorrected;
    std::string fit_input;

    // simulate block
    StateForm sim_form = StateForm::WForm;
    std::string initial = "ansatz";           // or "file"
    std::string initial_file;
    double coupling = 0.0;                    // 0 -> 1/(1-m) image value
    double t_end = 2.0;
    std::vector<double> snapshot_times;

    std::string output_prefix = "run";
    unsigned long long seed = 20240901ULL;

    std::vector<json> sweep;                  // per-run config overrides

    json resolved() const;
};

RunConfig parse_config(const json& j);
RunConfig parse_config_file(const std::string& path);

// numeric exit codes declared by the interface contract
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitCheckFailed = 4;

}  // namespace fdlab::cli

#endif
