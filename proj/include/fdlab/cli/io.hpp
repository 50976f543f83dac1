#ifndef FDLAB_CLI_IO_HPP
#define FDLAB_CLI_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "fdlab/pde.hpp"

namespace fdlab::cli {

// doubles serialized with 17 significant digits for bit-faithful round trips
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const;   // -1 if absent
};

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

// time-series schema shared by the simulate and fit subcommands:
// tau,t,sup_w,center_w,sup_u,dt,newton_iters (nan where undefined)
CsvTable record_to_csv(const ExtinctionRecord& rec, double m, double T_est);
CsvTable trajectory_to_csv(const Trajectory& traj, double m, double T);
ExtinctionRecord csv_to_record(const CsvTable& table);

void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace fdlab::cli

#endif
