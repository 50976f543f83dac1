#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fdlab/asymptotics.hpp"
#include "fdlab/bubble.hpp"
#include "fdlab/oracles.hpp"
#include "fdlab/residual.hpp"
#include "fdlab/sphere.hpp"

namespace py = pybind11;
using namespace fdlab;

namespace {

DomainSpec make_domain(const std::string& kind, double radius,
                       const std::vector<double>& lengths, int n) {
    if (kind == "unit_ball") return DomainSpec::unit_ball(n, radius);
    if (kind == "box") return DomainSpec::box(lengths);
    fail(ErrorCode::ConfigInvalid, "domain kind must be unit_ball or box");
}

}  // namespace

PYBIND11_MODULE(_fdlab, m) {
    m.doc() = "bubble-ansatz construction and fast diffusion extinction lab";

    py::register_exception<Error>(m, "FdlabError");

    // ---- bubbles ----
    m.def("alpha_n", &alpha_n, py::arg("n"));
    m.def("critical_m", &critical_m, py::arg("n"));
    m.def("critical_p", &critical_p, py::arg("n"));
    m.def("bubble_U", &bubble_U, py::arg("y"), py::arg("n"));
    m.def("kernel_Z", &kernel_Z, py::arg("i"), py::arg("y"), py::arg("n"));
    m.def("loewner_nirenberg_S", &loewner_nirenberg_S, py::arg("lam"),
          py::arg("r"), py::arg("n"));

    // ---- domains and Green's functions ----
    py::class_<DomainSpec>(m, "DomainSpec")
        .def(py::init(&make_domain), py::arg("kind"),
             py::arg("radius") = 1.0,
             py::arg("lengths") = std::vector<double>{}, py::arg("n") = 3)
        .def_readonly("n", &DomainSpec::n)
        .def_readonly("radius", &DomainSpec::radius)
        .def_readonly("lengths", &DomainSpec::lengths)
        .def("contains", &DomainSpec::contains)
        .def("boundary_distance", &DomainSpec::boundary_distance);

    py::class_<GreensMatrix>(m, "GreensMatrix")
        .def_readonly("k", &GreensMatrix::k)
        .def_readonly("entries", &GreensMatrix::entries)
        .def_readonly("points", &GreensMatrix::points)
        .def("at", &GreensMatrix::at);

    m.def("green", [](const DomainSpec& d, const Point& x, const Point& y) {
        return green(d, x, y);
    });
    m.def("regular_part",
          [](const DomainSpec& d, const Point& x, const Point& y) {
              return regular_part(d, x, y);
          });
    m.def("robin_matrix",
          [](const DomainSpec& d, const std::vector<Point>& pts) {
              return robin_matrix(d, pts);
          });
    m.def("is_positive_definite",
          [](const GreensMatrix& g, double tol) {
              return is_positive_definite(g, tol);
          },
          py::arg("matrix"), py::arg("tol") = 1e-12);

    // ---- parameters ----
    m.def("constants_c1_c2", [](int n) { return constants_c1_c2(n); });
    py::enum_<MuConvention>(m, "MuConvention")
        .value("WithP", MuConvention::WithP)
        .value("WithoutP", MuConvention::WithoutP);
    py::class_<ScalingLaw>(m, "ScalingLaw")
        .def_static("make",
                    [](int n, double t0, MuConvention conv) {
                        return ScalingLaw::make(n, t0, conv);
                    },
                    py::arg("n"), py::arg("t0"),
                    py::arg("convention") = MuConvention::WithP)
        .def_readonly("n", &ScalingLaw::n)
        .def_readonly("c1", &ScalingLaw::c1)
        .def_readonly("c2", &ScalingLaw::c2)
        .def_readonly("gamma_n", &ScalingLaw::gamma_n)
        .def_readonly("t0", &ScalingLaw::t0);
    m.def("mu0", &mu0, py::arg("t"), py::arg("law"));
    m.def("solve_b", [](const GreensMatrix& g, int n) {
        return solve_b({g.k, g, n});
    });
    m.def("functional_I",
          [](const std::vector<double>& b, const GreensMatrix& g, int n) {
              return functional_I(b, {g.k, g, n});
          });
    m.def("grad_I",
          [](const std::vector<double>& b, const GreensMatrix& g, int n) {
              return grad_I(b, {g.k, g, n});
          });

    // ---- ansatz ----
    py::class_<AnsatzConfig>(m, "AnsatzConfig")
        .def(py::init([](int n, const DomainSpec& d,
                         const std::vector<Point>& q,
                         const std::vector<double>& b, double eps,
                         const std::vector<double>& gamma_tilde,
                         bool mu_corrected) {
                 AnsatzConfig c;
                 c.n = n;
                 c.domain = d;
                 c.k = static_cast<int>(q.size());
                 c.q = q;
                 c.b = b;
                 c.eps_cutoff = eps;
                 c.gamma_tilde = gamma_tilde;
                 c.use_mu_corrected_H = mu_corrected;
                 c.validate();
                 return c;
             }),
             py::arg("n"), py::arg("domain"), py::arg("q"), py::arg("b"),
             py::arg("eps_cutoff") = 0.25,
             py::arg("gamma_tilde") = std::vector<double>{},
             py::arg("use_mu_corrected_H") = false);

    py::class_<AnsatzEvaluator>(m, "AnsatzEvaluator")
        .def(py::init<const AnsatzConfig&, const ScalingLaw&>())
        .def("tilde_z", &AnsatzEvaluator::tilde_z)
        .def("tilde_z_at", &AnsatzEvaluator::tilde_z_at)
        .def("z", &AnsatzEvaluator::z)
        .def("mu_j", &AnsatzEvaluator::mu_j)
        .def("gamma_tilde", &AnsatzEvaluator::gamma_tilde);

    m.def("cutoff_eta0", &cutoff_eta0);
    m.def("correction_p0", [](const std::vector<double>& grid, int n) {
        RadialProfile p = correction_p0(grid, n);
        return py::make_tuple(p.r, p.v, p.dv, p.tail_coeff);
    });

    m.def("project_residual",
          [](int l, int j, double t, const AnsatzEvaluator& ev, double R) {
              return project_residual(l, j, t, ev, R);
          });
    m.def("residual_S",
          [](const std::function<double(const Point&, double)>& u,
             const Point& x, double t, double hx, double ht, int n) {
              return residual_S(u, x, t, hx, ht, n);
          });

    // ---- radial evolution ----
    py::enum_<GridStretching>(m, "GridStretching")
        .value("Uniform", GridStretching::Uniform)
        .value("Graded", GridStretching::Graded);
    py::enum_<StateForm>(m, "StateForm")
        .value("WForm", StateForm::WForm)
        .value("UForm", StateForm::UForm);
    py::class_<RadialGrid>(m, "RadialGrid")
        .def_static("make", &RadialGrid::make, py::arg("n"), py::arg("R"),
                    py::arg("intervals"), py::arg("stretching"),
                    py::arg("grading_blend") = 0.1)
        .def_readonly("nodes", &RadialGrid::nodes)
        .def_readonly("R", &RadialGrid::R);
    py::class_<RadialState>(m, "RadialState")
        .def(py::init([](const RadialGrid& g, double t,
                         const std::vector<double>& values, StateForm form,
                         double m_exp) {
                 RadialState s;
                 s.grid = std::make_shared<RadialGrid>(g);
                 s.t = t;
                 s.values = values;
                 s.form = form;
                 s.m = m_exp;
                 s.validate();
                 return s;
             }),
             py::arg("grid"), py::arg("t"), py::arg("values"),
             py::arg("form"), py::arg("m"))
        .def_readonly("t", &RadialState::t)
        .def_readonly("values", &RadialState::values)
        .def_readonly("form", &RadialState::form)
        .def_readonly("m", &RadialState::m)
        .def("sup", &RadialState::sup)
        .def("center", &RadialState::center);
    py::class_<ExtinctionSample>(m, "ExtinctionSample")
        .def_readonly("tau", &ExtinctionSample::tau)
        .def_readonly("sup", &ExtinctionSample::sup)
        .def_readonly("center", &ExtinctionSample::center)
        .def_readonly("dt", &ExtinctionSample::dt)
        .def_readonly("newton_iters", &ExtinctionSample::newton_iters);
    py::class_<ExtinctionRecord>(m, "ExtinctionRecord")
        .def_readonly("samples", &ExtinctionRecord::samples)
        .def_readonly("T_est", &ExtinctionRecord::T_est)
        .def_readonly("T_ci", &ExtinctionRecord::T_ci);
    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("newton_tol", &SolverConfig::newton_tol)
        .def_readwrite("dt_init", &SolverConfig::dt_init)
        .def_readwrite("rel_change_cap", &SolverConfig::rel_change_cap)
        .def_readwrite("floor_rel", &SolverConfig::floor_rel)
        .def_readwrite("records_per_decade",
                       &SolverConfig::records_per_decade);
    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("series", &Trajectory::series)
        .def_readonly("snapshots", &Trajectory::snapshots);

    m.def("step_fast_diffusion",
          [](const RadialState& s, double dt, const SolverConfig& cfg) {
              return step_fast_diffusion(s, dt, cfg);
          },
          py::arg("state"), py::arg("dt"),
          py::arg("config") = SolverConfig{});
    m.def("step_yamabe",
          [](const RadialState& s, double dt, double coupling,
             const SolverConfig& cfg) {
              return step_yamabe(s, dt, coupling, cfg);
          },
          py::arg("state"), py::arg("dt"), py::arg("coupling") = 1.0,
          py::arg("config") = SolverConfig{});
    m.def("simulate_to_extinction",
          [](const RadialState& init, const SolverConfig& cfg) {
              return simulate_to_extinction(init, cfg);
          },
          py::arg("init"), py::arg("config") = SolverConfig{});
    m.def("simulate_yamabe",
          [](const RadialState& init, double t_end,
             const std::vector<double>& snaps, double coupling,
             const SolverConfig& cfg) {
              return simulate_yamabe(init, t_end, snaps, coupling, cfg);
          },
          py::arg("init"), py::arg("t_end"),
          py::arg("snapshot_times") = std::vector<double>{},
          py::arg("coupling") = 1.0, py::arg("config") = SolverConfig{});
    m.def("transform_w_to_u", &transform_w_to_u);
    m.def("transform_u_to_w", &transform_u_to_w);
    m.def("init_from_ansatz",
          [](const AnsatzConfig& cfg, const ScalingLaw& law, double t0,
             const RadialGrid& grid, StateForm form, double theta) {
              return init_from_ansatz(cfg, law, t0, grid, form, theta);
          },
          py::arg("config"), py::arg("law"), py::arg("t0"), py::arg("grid"),
          py::arg("form"), py::arg("theta") = 1.0);

    // ---- asymptotics ----
    py::enum_<RateModel>(m, "RateModel")
        .value("PurePower", RateModel::PurePower)
        .value("LogCorrected", RateModel::LogCorrected);
    py::class_<RateFit>(m, "RateFit")
        .def_readonly("amplitude", &RateFit::amplitude)
        .def_readonly("power", &RateFit::power)
        .def_readonly("log_power", &RateFit::log_power)
        .def_readonly("rms_residual", &RateFit::rms_residual)
        .def_readonly("window", &RateFit::window)
        .def_readonly("samples_used", &RateFit::samples_used);
    py::class_<MuTrack>(m, "MuTrack")
        .def_readonly("t", &MuTrack::t)
        .def_readonly("mu", &MuTrack::mu)
        .def_readonly("beta", &MuTrack::beta)
        .def_readonly("slope", &MuTrack::slope)
        .def_readonly("rms", &MuTrack::rms)
        .def_readonly("correlation", &MuTrack::correlation)
        .def_readonly("poor_fit", &MuTrack::poor_fit);
    m.def("estimate_T",
          [](const ExtinctionRecord& rec, double m_exp) {
              return estimate_T(rec, m_exp);
          });
    m.def("fit_rate",
          [](const ExtinctionRecord& rec, double T, RateModel model,
             std::pair<double, double> window) {
              FitRateOptions o;
              o.window = window;
              return fit_rate(rec, T, model, o);
          },
          py::arg("record"), py::arg("T"), py::arg("model"),
          py::arg("window") = std::pair<double, double>{1e-4, 1e-1});
    m.def("theoretical_rates", &theoretical_rates, py::arg("n"),
          py::arg("m"));
    m.def("extract_mu", &extract_mu, py::arg("times"), py::arg("centers"),
          py::arg("n"));
    m.def("extract_mu_tilde",
          [](const ExtinctionRecord& rec, double T, int n,
             std::pair<double, double> window) {
              return extract_mu_tilde(rec, T, n, window);
          },
          py::arg("record"), py::arg("T"), py::arg("n"),
          py::arg("window") = std::pair<double, double>{1e-4, 1e-1});

    // ---- sphere lift ----
    py::class_<SpherePoint>(m, "SpherePoint")
        .def_readonly("coords", &SpherePoint::coords);
    m.def("stereographic", [](const Point& y) {
        return stereographic(y).coords;
    });
    m.def("inverse_stereographic", [](const std::vector<double>& coords) {
        return inverse_stereographic({coords});
    });
    m.def("conformal_laplacian_check",
          [](const std::function<double(const Point&)>& phi,
             const std::vector<Point>& samples, int n, double h_flat,
             double h_sphere) {
              return conformal_laplacian_check(phi, samples, n, h_flat,
                                               h_sphere);
          });
    m.def("lifted_kernel_eigen_defect", &lifted_kernel_eigen_defect);

    // ---- oracles ----
    auto oracle = m.def_submodule("oracles");
    oracle.def("box_green_series", &oracles::box_green_series,
               py::arg("lengths"), py::arg("x"), py::arg("y"),
               py::arg("modes") = 80);
    oracle.def("c1c2_closed_form", &oracles::c1c2_closed_form);
    oracle.def("mu0_rk4", &oracles::mu0_rk4);
    oracle.def("separable_profile", [](int n, double m_exp, double R) {
        RadialProfile p = oracles::separable_profile(n, m_exp, R);
        return py::make_tuple(p.r, p.v);
    });
    oracle.def("ln_profile_ode_residual",
               &oracles::ln_profile_ode_residual);
}
