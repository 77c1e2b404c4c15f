// fas1: FAS multigrid solver for the 1D Liouville-Bratu problem
//   -u'' - lambda e^u = g,  u(0) = u(1) = 0
//
// Options use a single dash (-K 3 -mms); double dashes are accepted too.

#include <cctype>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fas1d/driver.hpp"
#include "fas1d/studies.hpp"

namespace {

/// Rewrites "-name" (multi-letter) as "--name" so CLI11 sees long options.
std::vector<std::string> normalize_args(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1; --i) {
        std::string a = argv[i];
        if (a.size() > 2 && a[0] == '-' && a[1] != '-' && std::isalpha(static_cast<unsigned char>(a[1])))
            a = "-" + a;
        args.push_back(std::move(a));
    }
    return args;  // CLI11 wants reverse order
}

std::vector<int> k_range(int kmin, int kmax) {
    std::vector<int> Ks;
    for (int K = kmin; K <= kmax; ++K)
        Ks.push_back(K);
    return Ks;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace fas1d;
    RunConfig cfg;
    bool rin = false;
    std::string format = "text";
    std::string study;
    int kmin = 3, kmax = 10;
    std::vector<std::string> variant_names{"fcycle", "vcycles", "ngsonly"};
    PerformanceOptions perf;

    CLI::App app{"FAS nonlinear multigrid for -u'' - lambda e^u = g on [0,1] with P1 elements", "fas1"};
    app.footer("Options may be given with one dash (-K 3 -mms -rtol 0).\n"
               "Exit status: 0 converged, 2 cyclemax reached, 3 divergence, 64 usage error.");
    app.get_formatter()->column_width(34);
    app.add_option("-K,--K", cfg.K, "number of refinements; finest mesh has m0*2^K elements")->capture_default_str();
    app.add_option("--m0", cfg.m0, "coarsest element count (even, >= 2)")->capture_default_str();
    app.add_option("--lam", cfg.lambda, "reaction coefficient lambda")->capture_default_str();
    app.add_flag("--mms", cfg.mms, "manufactured solution u = sin(3 pi x) with matching source");
    app.add_flag("--fcycle", cfg.fcycle, "F-cycle, then V-cycles; cyclemax counts all finest V-cycles");
    app.add_flag("--ngsonly", cfg.ngsonly, "NGS sweeps on the finest mesh only");
    app.add_option("--down", cfg.down, "pre-smoothing sweeps")->capture_default_str();
    app.add_option("--up", cfg.up, "post-smoothing sweeps")->capture_default_str();
    app.add_option("--coarse", cfg.coarse, "sweeps on the coarsest mesh")->capture_default_str();
    app.add_option("--niters", cfg.niters, "Newton steps per node in NGS")->capture_default_str();
    app.add_option("--rtol", cfg.rtol, "relative residual tolerance")->capture_default_str();
    auto* cyclemax_opt =
        app.add_option("--cyclemax", cfg.cyclemax, "maximum cycles (or sweeps with -ngsonly)")->capture_default_str();
    app.add_flag("--rin", rin, "injection restriction instead of full weighting");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "csv", "json"}))->capture_default_str();
    app.add_flag("--show", cfg.show, "emit nodal values (and exact solution with -mms) for plotting");
    app.add_option("--study", study, "run a multi-K study instead of one solve")
        ->check(CLI::IsMember({"convergence", "performance"}));
    app.add_option("--Kmin", kmin, "smallest K in a study")->capture_default_str();
    app.add_option("--Kmax", kmax, "largest K in a study")->capture_default_str();
    app.add_option("--variants", variant_names, "performance study solvers")
        ->check(CLI::IsMember({"fcycle", "vcycles", "ngsonly"}))
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--timecap", perf.time_cap_seconds, "performance study: seconds before NGS-only gives up")
        ->capture_default_str();

    try {
        app.parse(normalize_args(argc, argv));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    cfg.restriction = rin ? RestrictionKind::injection : RestrictionKind::full_weighting;
    cfg.format = format == "csv" ? OutputFormat::csv : format == "json" ? OutputFormat::json : OutputFormat::text;

    if (study.empty())
        return run(cfg, std::cout, std::cerr);

    if (kmin < 0 || kmax < kmin) {
        std::cerr << "usage error: need 0 <= Kmin <= Kmax\n";
        return exit_usage;
    }
    if (study == "convergence") {
        if (cyclemax_opt->count() == 0)
            cfg.cyclemax = 12;
        try {
            RunConfig probe = cfg;
            probe.K = kmin;
            probe.validate();
        } catch (const std::exception& e) {
            std::cerr << "usage error: " << e.what() << "\n";
            return exit_usage;
        }
        write_convergence_table(std::cout, study_convergence(k_range(kmin, kmax), cfg), cfg.format);
        return exit_converged;
    }

    const std::map<std::string, Variant> by_name{
        {"fcycle", Variant::fcycle}, {"vcycles", Variant::vcycles}, {"ngsonly", Variant::ngsonly}};
    std::vector<Variant> variants;
    for (const auto& n : variant_names)
        variants.push_back(by_name.at(n));
    perf.lambda = cfg.lambda;
    write_performance_table(std::cout, study_performance(k_range(kmin, kmax), variants, perf), cfg.format);
    return exit_converged;
}
