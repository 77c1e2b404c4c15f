/**
 * @file studies.hpp
 * @brief Multi-run studies: error vs mesh size (verification) and run time /
 *        work vs mesh size (performance).
 */
#pragma once

#include <chrono>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "driver.hpp"

namespace fas1d {

struct ConvergenceRow {
    int K = 0;
    index_t m = 0;
    double h = 0.0;
    int cycles = 0;
    double error = 0.0;
    double wu = 0.0;
    std::string failure;  ///< non-empty when the run diverged
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    std::optional<RateFit> fit;  ///< error vs h, when >= 3 rows succeeded
};

/**
 * One MMS run per K with rtol = 0, so every run does exactly
 * base.cyclemax cycles (or sweeps). A diverging row is recorded and the
 * remaining rows still run.
 */
inline ConvergenceTable study_convergence(const std::vector<int>& Ks, RunConfig base) {
    base.mms = true;
    base.rtol = 0.0;
    ConvergenceTable table;
    std::vector<std::pair<double, double>> pairs;
    for (int K : Ks) {
        RunConfig cfg = base;
        cfg.K = K;
        ConvergenceRow row;
        row.K = K;
        try {
            const Hierarchy hier(cfg.m0, K);
            row.m = hier.finest().m;
            row.h = hier.finest().h;
            const SolveReport rep = solve(cfg);
            row.cycles = rep.cycles_run;
            row.error = rep.error_norm.value_or(0.0);
            row.wu = rep.work_units;
            if (row.error > 0.0)
                pairs.emplace_back(row.h, row.error);
        } catch (const std::exception& e) {
            row.failure = e.what();
        }
        table.rows.push_back(row);
    }
    if (pairs.size() >= 3)
        table.fit = fit_rate(pairs);
    return table;
}

enum class Variant { fcycle, vcycles, ngsonly };

inline const char* to_string(Variant v) {
    switch (v) {
    case Variant::fcycle: return "F-cycle+V(1,0)";
    case Variant::vcycles: return "V(1,1)";
    case Variant::ngsonly: return "NGS";
    }
    return "?";
}

struct PerformanceOptions {
    double lambda = 1.0;
    /// Total finest-level V(1,0) cycles for the F-cycle variant (ascent included).
    int fcycle_cycles = 3;
    int vcycles = 12;
    /// NGS-only budgets double from this value.
    int ngs_start = 1;
    double time_cap_seconds = 100.0;
    /// Short runs are repeated until this much time has elapsed; the mean is reported.
    double min_timing_seconds = 0.05;
};

struct PerformanceRow {
    int K = 0;
    index_t m = 0;
    Variant variant = Variant::vcycles;
    double seconds = 0.0;
    double wu = 0.0;
    double error = 0.0;
    int cycles = 0;
    double discretization_error = 0.0;
    bool capped = false;
    std::string failure;
};

namespace detail {

/// Mean wall time per call, repeating short calls up to min_seconds total.
template <class Fn>
double time_run(Fn&& fn, double min_seconds, int max_reps = 1000) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    int reps = 0;
    double elapsed = 0.0;
    do {
        fn();
        ++reps;
        elapsed = std::chrono::duration<double>(clock::now() - start).count();
    } while (elapsed < min_seconds && reps < max_reps);
    return elapsed / reps;
}

inline RunConfig variant_config(Variant v, int K, const PerformanceOptions& opt) {
    RunConfig cfg;
    cfg.K = K;
    cfg.lambda = opt.lambda;
    cfg.mms = true;
    cfg.rtol = 0.0;
    switch (v) {
    case Variant::fcycle:
        cfg.fcycle = true;
        cfg.up = 0;
        cfg.cyclemax = opt.fcycle_cycles;
        break;
    case Variant::vcycles:
        cfg.cyclemax = opt.vcycles;
        break;
    case Variant::ngsonly:
        cfg.ngsonly = true;
        cfg.cyclemax = opt.ngs_start;
        break;
    }
    return cfg;
}

inline PerformanceRow timed_row(const RunConfig& cfg, Variant v, double disc_error, double min_seconds) {
    PerformanceRow row;
    row.K = cfg.K;
    row.m = Hierarchy(cfg.m0, cfg.K).finest().m;
    row.variant = v;
    row.discretization_error = disc_error;
    SolveReport rep;
    row.seconds = time_run([&] { rep = solve(cfg); }, min_seconds);
    row.wu = rep.work_units;
    row.error = rep.error_norm.value_or(0.0);
    row.cycles = rep.cycles_run;
    return row;
}

}  // namespace detail

/**
 * Wall time, work and error for each (K, variant). The discretization error
 * at each K is taken from the 12-V-cycle run. NGS-only doubles its sweep
 * budget until its error is within 2x of that, or a single run exceeds the
 * time cap; after a capped row, NGS-only is skipped for larger K.
 */
inline std::vector<PerformanceRow> study_performance(const std::vector<int>& Ks, const std::vector<Variant>& variants,
                                                     const PerformanceOptions& opt = {}) {
    std::vector<PerformanceRow> rows;
    bool ngs_gave_up = false;
    for (int K : Ks) {
        double disc_error = 0.0;
        try {
            disc_error = solve(detail::variant_config(Variant::vcycles, K, opt)).error_norm.value_or(0.0);
        } catch (const std::exception& e) {
            PerformanceRow row;
            row.K = K;
            row.failure = e.what();
            rows.push_back(row);
            continue;
        }
        for (Variant v : variants) {
            RunConfig cfg = detail::variant_config(v, K, opt);
            try {
                if (v != Variant::ngsonly) {
                    rows.push_back(detail::timed_row(cfg, v, disc_error, opt.min_timing_seconds));
                    continue;
                }
                if (ngs_gave_up)
                    continue;
                PerformanceRow row;
                for (;;) {
                    row = detail::timed_row(cfg, v, disc_error, 0.0);
                    if (row.error <= 2.0 * disc_error)
                        break;
                    if (row.seconds > opt.time_cap_seconds) {
                        row.capped = true;
                        ngs_gave_up = true;
                        break;
                    }
                    cfg.cyclemax *= 2;
                }
                if (!row.capped && row.seconds < opt.min_timing_seconds)
                    row = detail::timed_row(cfg, v, disc_error, opt.min_timing_seconds);
                rows.push_back(row);
            } catch (const std::exception& e) {
                PerformanceRow row;
                row.K = K;
                row.variant = v;
                row.failure = e.what();
                rows.push_back(row);
            }
        }
    }
    return rows;
}

/// Fitted exponent of time vs m over the completed, uncapped rows of one variant.
inline std::optional<RateFit> fit_time_exponent(const std::vector<PerformanceRow>& rows, Variant v) {
    std::vector<std::pair<double, double>> pairs;
    for (const auto& r : rows)
        if (r.variant == v && r.failure.empty() && !r.capped && r.seconds > 0.0)
            pairs.emplace_back(static_cast<double>(r.m), r.seconds);
    if (pairs.size() < 3)
        return std::nullopt;
    return fit_rate(pairs);
}

inline void write_convergence_table(std::ostream& out, const ConvergenceTable& t, OutputFormat fmt) {
    char buf[256];
    if (fmt == OutputFormat::json) {
        nlohmann::json j;
        j["rows"] = nlohmann::json::array();
        for (const auto& r : t.rows)
            j["rows"].push_back({{"K", r.K}, {"m", r.m}, {"h", r.h}, {"cycles", r.cycles},
                                 {"error", r.error}, {"wu", r.wu}, {"failure", r.failure}});
        j["slope"] = t.fit ? nlohmann::json(t.fit->slope) : nlohmann::json(nullptr);
        out << j.dump(2) << "\n";
        return;
    }
    const bool csv = fmt == OutputFormat::csv;
    out << (csv ? "K,m,h,cycles,error,wu\n" : "    K        m            h  cycles        error        WU\n");
    for (const auto& r : t.rows) {
        if (!r.failure.empty()) {
            out << (csv ? "# " : "") << "K=" << r.K << " failed: " << r.failure << "\n";
            continue;
        }
        std::snprintf(buf, sizeof buf, csv ? "%d,%lld,%.17g,%d,%.17g,%.17g\n" : "%5d %8lld %12.6e %7d %12.6e %9.2f\n",
                      r.K, static_cast<long long>(r.m), r.h, r.cycles, r.error, r.wu);
        out << buf;
    }
    if (t.fit) {
        std::snprintf(buf, sizeof buf, "%sfitted rate: error ~ h^%.4f\n", csv ? "# " : "", t.fit->slope);
        out << buf;
    }
}

inline void write_performance_table(std::ostream& out, const std::vector<PerformanceRow>& rows, OutputFormat fmt) {
    char buf[256];
    if (fmt == OutputFormat::json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : rows)
            j.push_back({{"K", r.K}, {"m", r.m}, {"variant", to_string(r.variant)}, {"seconds", r.seconds},
                         {"wu", r.wu}, {"error", r.error}, {"cycles", r.cycles},
                         {"discretization_error", r.discretization_error}, {"capped", r.capped},
                         {"failure", r.failure}});
        out << j.dump(2) << "\n";
        return;
    }
    const bool csv = fmt == OutputFormat::csv;
    out << (csv ? "K,m,variant,seconds,wu,error,cycles,discretization_error,capped\n"
                : "    K        m  variant          seconds          WU        error  cycles\n");
    for (const auto& r : rows) {
        if (!r.failure.empty()) {
            out << (csv ? "# " : "") << "K=" << r.K << " " << to_string(r.variant) << " failed: " << r.failure << "\n";
            continue;
        }
        if (csv)
            std::snprintf(buf, sizeof buf, "%d,%lld,%s,%.6e,%.17g,%.17g,%d,%.17g,%d\n", r.K,
                          static_cast<long long>(r.m), to_string(r.variant), r.seconds, r.wu, r.error, r.cycles,
                          r.discretization_error, static_cast<int>(r.capped));
        else
            std::snprintf(buf, sizeof buf, "%5d %8lld  %-15s %9.3e %11.2f %12.4e %7d%s\n", r.K,
                          static_cast<long long>(r.m), to_string(r.variant), r.seconds, r.wu, r.error, r.cycles,
                          r.capped ? "  (time cap)" : "");
        out << buf;
    }
    for (Variant v : {Variant::fcycle, Variant::vcycles, Variant::ngsonly}) {
        if (auto fit = fit_time_exponent(rows, v)) {
            std::snprintf(buf, sizeof buf, "%s%s: time ~ m^%.3f\n", csv ? "# " : "", to_string(v), fit->slope);
            out << buf;
        }
    }
}

}  // namespace fas1d
