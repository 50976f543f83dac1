#include "fdlab/cli/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace fdlab::cli {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int CsvTable::column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::ConfigInvalid, "cannot write " + path);
    for (size_t i = 0; i < table.header.size(); ++i)
        out << (i ? "," : "") << table.header[i];
    out << "\n";
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_double(row[i]);
        out << "\n";
    }
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ConfigInvalid, "cannot open " + path);
    CsvTable t;
    std::string line;
    if (!std::getline(in, line))
        fail(ErrorCode::ConfigInvalid, "empty CSV: " + path);
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) t.header.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream rs(line);
        std::vector<double> row;
        while (std::getline(rs, cell, ','))
            row.push_back(std::strtod(cell.c_str(), nullptr));
        if (row.size() != t.header.size())
            fail(ErrorCode::ConfigInvalid, "ragged CSV row in " + path);
        t.rows.push_back(std::move(row));
    }
    return t;
}

static const double kNan = std::numeric_limits<double>::quiet_NaN();

CsvTable record_to_csv(const ExtinctionRecord& rec, double m, double T_est) {
    CsvTable t;
    t.header = {"tau", "t", "sup_w", "center_w", "sup_u", "dt",
                "newton_iters"};
    for (const auto& s : rec.samples) {
        double tt = kNan, sup_u = kNan;
        if (std::isfinite(T_est) && s.tau < T_est) {
            tt = -std::log1p(-s.tau / T_est);
            sup_u = std::pow(T_est - s.tau, -m / (1.0 - m)) *
                    std::pow(s.sup, m);
        }
        t.rows.push_back({s.tau, tt, s.sup, s.center, sup_u, s.dt,
                          double(s.newton_iters)});
    }
    return t;
}

CsvTable trajectory_to_csv(const Trajectory& traj, double m, double T) {
    CsvTable t;
    t.header = {"tau", "t", "sup_w", "center_w", "sup_u", "dt",
                "newton_iters"};
    for (const auto& s : traj.series) {
        double tau = kNan, sup_w = kNan, center_w = kNan;
        if (std::isfinite(T)) {
            tau = -T * std::expm1(-s.tau);   // series stores u-time in tau
            const double rem = T * std::exp(-s.tau);
            sup_w = std::pow(s.sup, 1.0 / m) * std::pow(rem, 1.0 / (1.0 - m));
            center_w = std::pow(s.center, 1.0 / m) *
                       std::pow(rem, 1.0 / (1.0 - m));
        }
        t.rows.push_back({tau, s.tau, sup_w, center_w, s.sup, s.dt,
                          double(s.newton_iters)});
    }
    return t;
}

ExtinctionRecord csv_to_record(const CsvTable& table) {
    const int ctau = table.column("tau");
    const int csup = table.column("sup_w");
    const int ccen = table.column("center_w");
    const int cdt = table.column("dt");
    const int cit = table.column("newton_iters");
    if (ctau < 0 || csup < 0)
        fail(ErrorCode::ConfigInvalid, "CSV needs tau and sup_w columns");
    ExtinctionRecord rec;
    for (const auto& row : table.rows) {
        ExtinctionSample s;
        s.tau = row[ctau];
        s.sup = row[csup];
        s.center = ccen >= 0 ? row[ccen] : kNan;
        s.dt = cdt >= 0 ? row[cdt] : 0.0;
        s.newton_iters = cit >= 0 ? int(row[cit]) : 0;
        if (!std::isfinite(s.tau) || !std::isfinite(s.sup)) continue;
        rec.samples.push_back(s);
    }
    return rec;
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::ConfigInvalid, "cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace fdlab::cli
