/**
 * @file driver.hpp
 * @brief Run configuration and the single-run driver behind the fas1d CLI.
 *
 * Summary line contract (text format), one line per run:
 *
 *   m=<m> mesh, [F-cycle with ]<n> V(<down>,<up>) cycles (<wu> WU): |u|_2=<norm>[ |u-u_ex|_2=<err>]
 *   m=<m> mesh, <n> NGS sweeps (<wu> WU): |u|_2=<norm>[ |u-u_ex|_2=<err>]
 *
 * <wu> has two decimals, <norm> six significant digits and <err> is in
 * %.4e form. kSummaryRegex matches every line produced by summary_line().
 */
#pragma once

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cycles.hpp"
#include "report_io.hpp"

namespace fas1d {

inline constexpr const char* kSummaryRegex =
    R"(^m=([0-9]+) mesh, (F-cycle with )?([0-9]+) (V\(([0-9]+),([0-9]+)\) cycles|NGS sweeps) )"
    R"(\(([0-9]+\.[0-9]{2}) WU\): \|u\|_2=([-+.eE0-9]+)( \|u-u_ex\|_2=([-+.eE0-9]+))?$)";

enum class OutputFormat { text, csv, json };

/// Process exit codes of the CLI.
enum ExitCode : int {
    exit_converged = 0,
    exit_cyclemax = 2,
    exit_divergence = 3,
    exit_usage = 64,
};

struct RunConfig {
    int K = 2;
    index_t m0 = 2;
    double lambda = 1.0;
    bool mms = false;
    bool fcycle = false;
    bool ngsonly = false;
    int down = 1;
    int up = 1;
    int coarse = 1;
    int niters = 2;
    double rtol = 1.0e-4;
    int cyclemax = 100;
    RestrictionKind restriction = RestrictionKind::full_weighting;
    OutputFormat format = OutputFormat::text;
    bool show = false;

    [[nodiscard]] ProblemParams problem() const { return {lambda, mms ? SourceKind::mms : SourceKind::zero}; }
    [[nodiscard]] CycleParams cycle() const { return {down, up, coarse, restriction, niters}; }
    [[nodiscard]] SolverParams solver() const { return {rtol, cyclemax}; }
    [[nodiscard]] SmootherParams smoother() const { return {niters, lambda}; }

    /// Throws std::invalid_argument on any out-of-range field.
    void validate() const {
        if (fcycle && ngsonly)
            throw std::invalid_argument("-fcycle and -ngsonly are mutually exclusive");
        if (K < 0)
            throw std::invalid_argument("-K must be >= 0");
        problem().validate();
        cycle().validate();
        solver().validate();
        Hierarchy(m0, K);
    }
};

/// Runs the solver selected by cfg. DivergenceError propagates.
inline SolveReport solve(const RunConfig& cfg) {
    cfg.validate();
    const Hierarchy hier(cfg.m0, cfg.K);
    if (cfg.fcycle)
        return fas_fcycle(hier, cfg.solver(), cfg.cycle(), cfg.problem());
    MeshFunction w(hier.finest());
    if (cfg.ngsonly)
        return ngs_only(w, cfg.solver(), cfg.smoother(), cfg.problem());
    return fas_solver(w, cfg.solver(), cfg.cycle(), cfg.problem());
}

inline std::string summary_line(const RunConfig& cfg, const SolveReport& rep) {
    char buf[256];
    std::string s = "m=" + std::to_string(rep.solution.level.m) + " mesh, ";
    if (cfg.ngsonly) {
        s += std::to_string(rep.cycles_run) + " NGS sweeps";
    } else {
        if (cfg.fcycle)
            s += "F-cycle with ";
        std::snprintf(buf, sizeof buf, "%d V(%d,%d) cycles", rep.cycles_run, cfg.down, cfg.up);
        s += buf;
    }
    std::snprintf(buf, sizeof buf, " (%.2f WU): |u|_2=%.6g", rep.work_units, norm_l2(rep.solution));
    s += buf;
    if (rep.error_norm) {
        std::snprintf(buf, sizeof buf, " |u-u_ex|_2=%.4e", *rep.error_norm);
        s += buf;
    }
    return s;
}

/// Plot data: columns `x w` (plus `u_exact` in MMS mode), boundary nodes included.
inline void write_show(std::ostream& out, const RunConfig& cfg, const SolveReport& rep) {
    const MeshFunction& w = rep.solution;
    out << (cfg.mms ? "# x w u_exact\n" : "# x w\n");
    char buf[96];
    for (index_t p = 0; p <= w.level.m; ++p) {
        const double x = w.level.x(p);
        if (cfg.mms)
            std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", x, w.at(p), mms_exact(x));
        else
            std::snprintf(buf, sizeof buf, "%.17g %.17g\n", x, w.at(p));
        out << buf;
    }
}

inline int exit_code_for(const SolveReport& rep) {
    return rep.status == SolveStatus::converged ? exit_converged : exit_cyclemax;
}

/**
 * Validates cfg, runs it and streams the report to `out` in the chosen
 * format. Diagnostics go to `err`. Returns the process exit code.
 */
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }
    if (!cfg.ngsonly && cfg.cycle().smoothing_free())
        err << "warning: -down 0 -up 0 performs no smoothing; cycles will not converge\n";

    SolveReport rep;
    try {
        rep = solve(cfg);
    } catch (const DivergenceError& e) {
        err << "divergence: " << e.what() << "\n";
        return exit_divergence;
    }

    switch (cfg.format) {
    case OutputFormat::text:
        out << "  " << summary_line(cfg, rep) << "\n";
        if (cfg.show)
            write_show(out, cfg, rep);
        break;
    case OutputFormat::csv:
        out << format_csv(rep);
        if (cfg.show)
            write_show(out, cfg, rep);
        break;
    case OutputFormat::json: {
        nlohmann::json j = to_json(rep);
        if (cfg.show) {
            std::vector<double> x, exact;
            for (index_t p = 1; p < rep.solution.level.m; ++p) {
                x.push_back(rep.solution.level.x(p));
                exact.push_back(mms_exact(x.back()));
            }
            j["x"] = x;
            if (cfg.mms)
                j["exact"] = exact;
        }
        out << j.dump(2) << "\n";
        break;
    }
    }
    return exit_code_for(rep);
}

}  // namespace fas1d
