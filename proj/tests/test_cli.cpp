#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fdlab/cli/commands.hpp"
#include "fdlab/cli/io.hpp"

using namespace fdlab;
using namespace fdlab::cli;
namespace fs = std::filesystem;

namespace {

fs::path make_tmpdir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("fdlab_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string write_config(const fs::path& dir, const json& j) {
    fs::path p = dir / "config.json";
    std::ofstream out(p);
    out << j.dump(2);
    return p.string();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json base_config() {
    return json{
        {"dimension", 3},
        {"exponent", "critical"},
        {"domain", {{"kind", "unit_ball"}, {"radius", 1.0}}},
        {"ansatz",
         {{"k", 1}, {"points", {{0.0, 0.0, 0.0}}}, {"t0", 1.0},
          {"eps", 0.4}}},
        {"grid", {{"intervals", 128}, {"stretching", "graded"}}},
        {"output", {{"prefix", "t"}}},
    };
}

}  // namespace

TEST_CASE("config parsing") {
    RunConfig cfg = parse_config(base_config());
    CHECK(cfg.dimension == 3);
    CHECK(cfg.critical);
    CHECK(cfg.exponent_m == doctest::Approx(0.2));
    CHECK(cfg.k == 1);
    CHECK(cfg.grid_intervals == 128);

    json bad = base_config();
    bad["unknown_block"] = 1;
    CHECK_THROWS_AS(parse_config(bad), Error);

    json bad2 = base_config();
    bad2["ansatz"]["typo_key"] = 2;
    CHECK_THROWS_AS(parse_config(bad2), Error);

    json sup = base_config();
    sup["exponent"] = 0.5;
    RunConfig c2 = parse_config(sup);
    CHECK(!c2.critical);
    CHECK(c2.exponent_m == 0.5);

    // resolved form parses back to itself
    RunConfig c3 = parse_config(cfg.resolved());
    CHECK(c3.resolved() == cfg.resolved());
}

TEST_CASE("csv round trip keeps 17 significant digits") {
    fs::path dir = make_tmpdir("csv");
    CsvTable t;
    t.header = {"a", "b"};
    t.rows = {{1.0 / 3.0, 2.718281828459045},
              {1e-300, 0.1 + 0.2}};
    write_csv((dir / "x.csv").string(), t);
    CsvTable r = read_csv((dir / "x.csv").string());
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0][0] == t.rows[0][0]);
    CHECK(r.rows[0][1] == t.rows[0][1]);
    CHECK(r.rows[1][0] == t.rows[1][0]);
    CHECK(r.rows[1][1] == t.rows[1][1]);
    fs::remove_all(dir);
}

TEST_CASE("greens and solve-b subcommands") {
    fs::path dir = make_tmpdir("greens");
    json cfg = base_config();
    cfg["ansatz"]["k"] = 2;
    cfg["ansatz"]["points"] = {{0.4, 0.0, 0.0}, {-0.4, 0.0, 0.0}};
    std::string cpath = write_config(dir, cfg);

    int rc = run_cli({"greens", "--config", cpath, "--out",
                      (dir / "o").string()});
    CHECK(rc == kExitOk);
    CHECK(fs::exists(dir / "o" / "t_greens.json"));
    CHECK(fs::exists(dir / "o" / "t_config.json"));

    rc = run_cli({"solve-b", "--config", cpath, "--out",
                  (dir / "o").string()});
    CHECK(rc == kExitOk);
    json out = json::parse(slurp(dir / "o" / "t_solve_b.json"));
    CHECK(out["b"].size() == 2);
    CHECK(out["b"][0].get<double>() ==
          doctest::Approx(out["b"][1].get<double>()).epsilon(1e-10));
    CHECK(out["grad_norm"].get<double>() <= 1e-10);
    for (const auto& ev : out["hessian_eigenvalues"])
        CHECK(ev.get<double>() > 0.0);
    fs::remove_all(dir);
}

TEST_CASE("solve-b matches the decoupled closed form through the cli") {
    fs::path dir = make_tmpdir("solveb");
    std::string cpath = write_config(dir, base_config());
    REQUIRE(run_cli({"solve-b", "--config", cpath, "--out",
                     (dir / "o").string()}) == kExitOk);
    json out = json::parse(slurp(dir / "o" / "t_solve_b.json"));
    CHECK(out["b"][0].get<double>() ==
          doctest::Approx(1.5196713713031850).epsilon(1e-10));
    fs::remove_all(dir);
}

TEST_CASE("simulate and fit round trip with deterministic outputs") {
    fs::path dir = make_tmpdir("simfit");
    json cfg = base_config();
    cfg["grid"]["intervals"] = 192;
    cfg["solver"] = {{"records_per_decade", 24}};
    std::string cpath = write_config(dir, cfg);

    REQUIRE(run_cli({"simulate", "--config", cpath, "--out",
                     (dir / "a").string()}) == kExitOk);
    REQUIRE(run_cli({"simulate", "--config", cpath, "--out",
                     (dir / "b").string()}) == kExitOk);
    // determinism: identical config -> byte-identical outputs
    CHECK(slurp(dir / "a" / "t_series.csv") ==
          slurp(dir / "b" / "t_series.csv"));
    CHECK(slurp(dir / "a" / "t_summary.json") ==
          slurp(dir / "b" / "t_summary.json"));

    json fitcfg = cfg;
    fitcfg["fit"] = {{"window", {1e-3, 1e-1}},
                     {"model", "log_corrected"},
                     {"input", (dir / "a" / "t_series.csv").string()}};
    std::string fpath = write_config(dir, fitcfg);
    REQUIRE(run_cli({"fit", "--config", fpath, "--out",
                     (dir / "a").string()}) == kExitOk);
    json fit = json::parse(slurp(dir / "a" / "t_fit.json"));
    CHECK(fit.contains("T_est"));
    CHECK(fit.contains("power"));
    CHECK(fit.contains("log_power"));
    CHECK(fit.contains("rms"));
    CHECK(fit.contains("window"));
    CHECK(fit.contains("beta"));
    CHECK(fs::exists(dir / "a" / "t_fit_points.csv"));
    fs::remove_all(dir);
}

TEST_CASE("fit recovers a synthetic pure power series") {
    fs::path dir = make_tmpdir("synfit");
    CsvTable t;
    t.header = {"tau", "t", "sup_w", "center_w", "sup_u", "dt",
                "newton_iters"};
    const double T = 1.0, m = 0.5;
    for (double rem = 0.9; rem >= 1e-6; rem *= std::pow(10.0, -1.0 / 24)) {
        double sup = 2.5 * rem * rem;
        t.rows.push_back({T - rem, 0.0, sup, sup, 0.0, 0.0, 0.0});
    }
    write_csv((dir / "series.csv").string(), t);
    json cfg = base_config();
    cfg["exponent"] = m;
    cfg["fit"] = {{"window", {1e-4, 1e-1}},
                  {"model", "pure_power"},
                  {"input", (dir / "series.csv").string()}};
    std::string cpath = write_config(dir, cfg);
    REQUIRE(run_cli({"fit", "--config", cpath, "--out",
                     (dir / "o").string()}) == kExitOk);
    json fit = json::parse(slurp(dir / "o" / "t_fit.json"));
    CHECK(std::abs(fit["power"].get<double>() - 2.0) <= 1e-12);
    CHECK(std::abs(fit["T_est"].get<double>() - T) <= 1e-10);
    fs::remove_all(dir);
}

TEST_CASE("exit codes") {
    fs::path dir = make_tmpdir("exit");
    // config error -> 2
    CHECK(run_cli({"simulate", "--config",
                   (dir / "missing.json").string()}) == kExitConfig);
    json bad = base_config();
    bad["grid"]["stretching"] = "bogus";
    std::string cpath = write_config(dir, bad);
    CHECK(run_cli({"simulate", "--config", cpath}) == kExitConfig);
    CHECK(run_cli({"frobnicate", "--config", cpath}) == kExitConfig);
    CHECK(run_cli({}) == kExitConfig);

    // numerical failure -> 3: b-system on an indefinite configuration
    json npd = base_config();
    npd["ansatz"]["k"] = 2;
    npd["ansatz"]["points"] = {{0.03, 0.0, 0.0}, {-0.03, 0.0, 0.0}};
    npd["ansatz"]["eps"] = 0.02;
    std::string npath = write_config(dir, npd);
    CHECK(run_cli({"solve-b", "--config", npath, "--out",
                   (dir / "o").string()}) == kExitNumerical);
    fs::remove_all(dir);
}

TEST_CASE("ansatz subcommand emits profile and projections") {
    fs::path dir = make_tmpdir("ansatz");
    json cfg = base_config();
    cfg["ansatz"]["sample_times"] = {40.0};
    cfg["ansatz"]["t0"] = 40.0;
    std::string cpath = write_config(dir, cfg);
    REQUIRE(run_cli({"ansatz", "--config", cpath, "--out",
                     (dir / "o").string()}) == kExitOk);
    CsvTable prof = read_csv((dir / "o" / "t_ansatz_profile.csv").string());
    CHECK(prof.column("z") >= 0);
    CHECK(prof.column("tilde_z") >= 0);
    CHECK(prof.rows.size() == 401);
    CsvTable proj = read_csv((dir / "o" / "t_projections.csv").string());
    REQUIRE(proj.rows.size() == 4);   // l = 1..n+1 for the single bubble
    const int cl = proj.column("l"), cv = proj.column("value");
    for (const auto& row : proj.rows)
        if (int(row[cl]) <= 3) CHECK(std::abs(row[cv]) <= 1e-9);
    fs::remove_all(dir);
}

TEST_CASE("check subcommand passes on a pristine build") {
    CHECK(run_cli({"check"}) == kExitOk);
}

TEST_CASE("sweep fans out runs") {
    fs::path dir = make_tmpdir("sweep");
    json cfg = base_config();
    cfg["grid"]["intervals"] = 96;
    cfg["sweep"] = {json{{"ansatz", {{"t0", 1.0}}}},
                    json{{"ansatz", {{"t0", 1.5}}}}};
    std::string cpath = write_config(dir, cfg);
    REQUIRE(run_cli({"simulate", "--config", cpath, "--out",
                     (dir / "o").string(), "--threads", "2"}) == kExitOk);
    CHECK(fs::exists(dir / "o" / "t_000_series.csv"));
    CHECK(fs::exists(dir / "o" / "t_001_series.csv"));
    CHECK(fs::exists(dir / "o" / "t_000_config.json"));
    fs::remove_all(dir);
}
