/**
 * @file report_io.hpp
 * @brief CSV and JSON serialization of solve reports.
 *
 * CSV has the fixed header `m,h,cycles,wu,residual0,residualN,error`; the
 * error column is empty outside manufactured-solution mode. Doubles are
 * written with 17 significant digits so parsing and re-writing is exact.
 */
#pragma once

#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cycles.hpp"

namespace fas1d {

inline constexpr const char* kCsvHeader = "m,h,cycles,wu,residual0,residualN,error";

struct CsvRow {
    index_t m = 0;
    double h = 0.0;
    int cycles = 0;
    double wu = 0.0;
    double residual0 = 0.0;
    double residualN = 0.0;
    std::optional<double> error;
};

namespace detail {

inline std::string exact_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace detail

inline CsvRow to_csv_row(const SolveReport& rep) {
    CsvRow row;
    row.m = rep.solution.level.m;
    row.h = rep.solution.level.h;
    row.cycles = rep.cycles_run;
    row.wu = rep.work_units;
    row.residual0 = rep.residual_history.front();
    row.residualN = rep.final_residual;
    row.error = rep.error_norm;
    return row;
}

inline std::string format_csv_row(const CsvRow& row) {
    std::string s = std::to_string(row.m) + "," + detail::exact_double(row.h) + "," + std::to_string(row.cycles) +
                    "," + detail::exact_double(row.wu) + "," + detail::exact_double(row.residual0) + "," +
                    detail::exact_double(row.residualN) + ",";
    if (row.error)
        s += detail::exact_double(*row.error);
    return s;
}

inline CsvRow parse_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ','))
        fields.push_back(f);
    if (!line.empty() && line.back() == ',')
        fields.emplace_back();
    if (fields.size() != 7)
        throw std::invalid_argument("fas1d: CSV row must have 7 fields: " + line);
    try {
        CsvRow row;
        row.m = std::stoll(fields[0]);
        row.h = std::stod(fields[1]);
        row.cycles = std::stoi(fields[2]);
        row.wu = std::stod(fields[3]);
        row.residual0 = std::stod(fields[4]);
        row.residualN = std::stod(fields[5]);
        if (!fields[6].empty())
            row.error = std::stod(fields[6]);
        return row;
    } catch (const std::logic_error&) {
        throw std::invalid_argument("fas1d: malformed CSV row: " + line);
    }
}

inline std::string format_csv(const SolveReport& rep) {
    return std::string(kCsvHeader) + "\n" + format_csv_row(to_csv_row(rep)) + "\n";
}

inline const char* to_string(SolveStatus s) {
    return s == SolveStatus::converged ? "converged" : "cyclemax_reached";
}

inline nlohmann::json to_json(const SolveReport& rep) {
    nlohmann::json j;
    j["m"] = rep.solution.level.m;
    j["h"] = rep.solution.level.h;
    j["K"] = rep.solution.level.k;
    j["status"] = to_string(rep.status);
    j["cycles_run"] = rep.cycles_run;
    j["residual_history"] = rep.residual_history;
    j["work_history"] = rep.work_history;
    j["work_units"] = rep.work_units;
    j["final_residual"] = rep.final_residual;
    j["error_norm"] = rep.error_norm ? nlohmann::json(*rep.error_norm) : nlohmann::json(nullptr);
    j["solution"] = rep.solution.values;
    return j;
}

inline SolveReport report_from_json(const nlohmann::json& j) {
    SolveReport rep;
    const std::string status = j.at("status").get<std::string>();
    if (status == "converged")
        rep.status = SolveStatus::converged;
    else if (status == "cyclemax_reached")
        rep.status = SolveStatus::cyclemax_reached;
    else
        throw std::invalid_argument("fas1d: unknown status '" + status + "'");
    rep.cycles_run = j.at("cycles_run").get<int>();
    rep.residual_history = j.at("residual_history").get<std::vector<double>>();
    rep.work_history = j.at("work_history").get<std::vector<double>>();
    rep.work_units = j.at("work_units").get<double>();
    rep.final_residual = j.at("final_residual").get<double>();
    if (!j.at("error_norm").is_null())
        rep.error_norm = j.at("error_norm").get<double>();
    const Level lev(j.at("K").get<int>(), j.at("m").get<index_t>());
    rep.solution = MeshFunction(lev, j.at("solution").get<std::vector<double>>());
    return rep;
}

}  // namespace fas1d
