// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
//
// Usage: acceptance [--skip-slow]
//   --skip-slow  skips the NGS stagnation criterion (the slowest one)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "fas1d/cycles.hpp"
#include "fas1d/driver.hpp"
#include "fas1d/studies.hpp"
#include "oracle.hpp"

using namespace fas1d;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
        }
    }
    void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SolveReport vcycles(int K, ProblemParams pp, SolverParams sp = {}, CycleParams cp = {}) {
    MeshFunction w(build_hierarchy(2, K).finest());
    return fas_solver(w, sp, cp, pp);
}

SolveReport fcycle(int K, int cyclemax, int up, RestrictionKind kind = RestrictionKind::full_weighting) {
    CycleParams cp;
    cp.up = up;
    cp.restriction = kind;
    return fas_fcycle(build_hierarchy(2, K), {0.0, cyclemax}, cp, {1.0, SourceKind::mms});
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

/// Discretization error reference: 12 V(1,1) cycles, rtol = 0.
double discretization_error(int K) {
    return *vcycles(K, {1.0, SourceKind::mms}, {0.0, 12}).error_norm;
}

/// Minimum over repeats of the mean wall time of a solve.
double best_time(const std::function<void()>& fn, int repeats = 3) {
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < repeats; ++r)
        best = std::min(best, detail::time_run(fn, 0.05));
    return best;
}

// 1. default transcript
Outcome golden_default() {
    Outcome o;
    const SolveReport rep = vcycles(2, {1.0});
    const double u2 = norm_l2(rep.solution);
    o.check(rep.cycles_run == 6, "cycles == 6");
    o.check(rep.work_units == 19.5, "WU == 19.50 exactly");
    o.check(std::abs(u2 - 0.102443) <= 1e-5, "|u|_2 within 1e-5 of 0.102443");
    o.note("cycles=" + std::to_string(rep.cycles_run) + fmt(" WU=%.17g", rep.work_units) + fmt(" |u|_2=%.9f", u2));
    return o;
}

// 2. MMS transcript
Outcome golden_mms() {
    Outcome o;
    const SolveReport rep = vcycles(3, {1.0, SourceKind::mms});
    const double err = *rep.error_norm;
    o.check(rep.cycles_run == 6, "cycles == 6");
    o.check(rep.work_units == 21.75, "WU == 21.75 exactly");
    o.check(std::abs(err - 2.1315e-02) <= 0.005 * 2.1315e-02, "error within 0.5% of 2.1315e-02");
    o.note("cycles=" + std::to_string(rep.cycles_run) + fmt(" WU=%.17g", rep.work_units) + fmt(" err=%.6e", err));
    return o;
}

// 3. O(h^2) convergence
Outcome convergence_rate() {
    Outcome o;
    RunConfig base;
    base.cyclemax = 12;
    std::vector<int> Ks;
    for (int K = 3; K <= 10; ++K) Ks.push_back(K);
    const ConvergenceTable t = study_convergence(Ks, base);
    o.check(t.fit.has_value(), "fit available");
    if (t.fit) {
        o.check(t.fit->slope >= 1.9 && t.fit->slope <= 2.1, "slope in [1.9, 2.1]");
        o.note(fmt("slope=%.4f", t.fit->slope));
    }
    return o;
}

// 4. WU at depth
Outcome wu_at_depth() {
    Outcome o;
    const SolveReport v = vcycles(10, {1.0, SourceKind::mms}, {0.0, 12});
    const SolveReport f = fcycle(10, 3, 0);
    o.check(std::abs(v.work_units - 47.96) <= 0.01, "12 V(1,1) WU within 0.01 of 47.96");
    o.check(std::abs(f.work_units - 8.98) <= 0.01, "F-cycle + V(1,0) (3 finest) WU within 0.01 of 8.98");
    o.note(fmt("V: %.4f WU, F: %.4f WU", v.work_units, f.work_units));
    return o;
}

// 5. single F(1,0) within 2x discretization error
Outcome textbook_efficiency() {
    Outcome o;
    double worst = 0;
    for (int K = 7; K <= 14; ++K) {
        const double disc = discretization_error(K);
        for (auto kind : {RestrictionKind::full_weighting, RestrictionKind::injection}) {
            const SolveReport f = fcycle(K, 1, 0, kind);
            const double ratio = *f.error_norm / disc;
            worst = std::max(worst, ratio);
            o.check(ratio <= 2.0, "K=" + std::to_string(K) +
                                      (kind == RestrictionKind::injection ? " R_in" : " R_fw") + fmt(" ratio=%.3f", ratio));
        }
    }
    o.note(fmt("worst error/discretization ratio=%.3f", worst));
    return o;
}

// 6. optimal complexity
Outcome optimal_complexity() {
    Outcome o;
    // largest decade of m in reach: K = 14..18 spans m = 32768..524288
    std::vector<std::pair<double, double>> vpts, fpts;
    for (int K = 14; K <= 18; ++K) {
        const double m = std::ldexp(2.0, K);
        const double tv = best_time([&] { vcycles(K, {1.0, SourceKind::mms}, {0.0, 12}); });
        const double tf = best_time([&] { fcycle(K, 3, 0); });
        o.check(tv < 60.0 && tf < 60.0, "per-point time < 60 s");
        vpts.emplace_back(m, tv);
        fpts.emplace_back(m, tf);
    }
    const double sv = fit_rate(vpts).slope, sf = fit_rate(fpts).slope;
    o.check(std::abs(sv - 1.0) <= 0.15, "V-cycle time exponent in 1 +- 0.15");
    o.check(std::abs(sf - 1.0) <= 0.15, "F-cycle time exponent in 1 +- 0.15");

    PerformanceOptions opt;
    opt.min_timing_seconds = 0.05;
    const auto rows = study_performance({3, 4, 5, 6, 7}, {Variant::ngsonly}, opt);
    const auto fit = fit_time_exponent(rows, Variant::ngsonly);
    o.check(fit.has_value(), "NGS-only rows completed");
    if (fit) {
        o.check(fit->slope >= 2.5, "NGS-only time exponent >= 2.5");
        o.note(fmt("NGS exponent=%.3f", fit->slope));
    }
    o.note(fmt("V exponent=%.3f, F exponent=%.3f", sv, sf));
    return o;
}

// 7. dense Newton oracle
Outcome oracle_equivalence() {
    Outcome o;
    double worst = 0;
    for (int K : {1, 2, 3}) {
        const Level L = build_hierarchy(2, K).finest();
        for (double lambda : {0.0, 1.0}) {
            const ProblemParams pp{lambda, SourceKind::mms};
            const SolveReport rep = vcycles(K, pp, {1e-10, 500});
            const auto exact = oracle::newton_solve(source_functional(L, pp).values, lambda);
            const double d = max_diff(rep.solution.values, exact);
            worst = std::max(worst, d);
            o.check(d <= 1e-8, "m=" + std::to_string(L.m) + fmt(" lambda=%g", lambda));
        }
    }
    o.note(fmt("max |w - oracle|=%.3e", worst));
    return o;
}

// 8. property suite
Outcome property_suite() {
    Outcome o;
    std::mt19937 rng(20211215);
    std::uniform_real_distribution<double> U(-1, 1);
    bool dual = true, fw_half = true, inject = true, colsum = true;
    for (int trial = 0; trial < 1000; ++trial) {
        const index_t mf = index_t{4} << (trial % 8);
        MeshFunction v(Level(0, mf / 2));
        DualFunctional ell(Level(1, mf));
        for (auto& x : v.values) x = U(rng);
        for (auto& x : ell.values) x = U(rng);
        const auto Rl = restrict_functional(ell).values;
        const auto Pv = prolong(v).values;
        const double lhs = std::inner_product(Rl.begin(), Rl.end(), v.values.begin(), 0.0);
        const double rhs = std::inner_product(ell.values.begin(), ell.values.end(), Pv.begin(), 0.0);
        dual &= std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(lhs));
        const auto fw = restrict_fullweighting(MeshFunction(ell.level, ell.values)).values;
        for (std::size_t q = 0; q < fw.size(); ++q) fw_half &= fw[q] == 0.5 * Rl[q];
        inject &= restrict_injection(prolong(v)).values == v.values;
    }
    for (index_t mf : {4, 8, 16, 32}) {
        for (index_t q = 1; q < mf / 2; ++q) {
            MeshFunction e(Level(0, mf / 2));
            e[q] = 1.0;
            const auto col = prolong(e).values;
            colsum &= std::accumulate(col.begin(), col.end(), 0.0) == 2.0;
        }
    }
    o.check(dual, "duality <R'l,v> = <l,Pv> on 1000 instances");
    o.check(colsum, "P column sums == 2");
    o.check(fw_half, "R_fw == R'/2");
    o.check(inject, "R_in P == I");

    double drift = 0, smoother_drift = 0;
    for (int K = 1; K <= 5; ++K) {
        const Level L = build_hierarchy(2, K).finest();
        for (auto src : {SourceKind::zero, SourceKind::mms}) {
            const ProblemParams pp{1.0, src};
            const DualFunctional ell = source_functional(L, pp);
            const MeshFunction u(L, oracle::newton_solve(ell.values, 1.0));
            for (auto kind : {RestrictionKind::full_weighting, RestrictionKind::injection}) {
                MeshFunction w = u;
                CycleParams cp;
                cp.restriction = kind;
                fas_vcycle(w, ell, cp, pp);
                drift = std::max(drift, max_diff(w.values, u.values));
            }
            for (auto dir : {SweepDirection::forward, SweepDirection::backward}) {
                MeshFunction w = u;
                ngs_sweep(w, ell, {2, 1.0}, dir);
                smoother_drift = std::max(smoother_drift, max_diff(w.values, u.values));
            }
        }
    }
    o.check(drift < 1e-12, fmt("V-cycle fixed-point drift %.2e < 1e-12", drift));
    o.check(smoother_drift < 1e-12, fmt("smoother fixed-point drift %.2e < 1e-12", smoother_drift));

    double asym = 0;
    for (int K : {2, 4, 6, 8}) {
        const SolveReport rep = vcycles(K, {1.0}, {1e-12, 200});
        const MeshFunction& w = rep.solution;
        for (index_t p = 1; p < w.level.m; ++p) asym = std::max(asym, std::abs(w[p] - w[w.level.m - p]));
    }
    o.check(asym <= 1e-10, fmt("g=0 solution symmetry defect %.2e <= 1e-10", asym));
    o.note(fmt("V drift=%.2e, symmetry defect=%.2e", drift, asym));
    return o;
}

// 9. NGS-only stagnation
Outcome ngs_stagnation() {
    Outcome o;
    for (int K = 3; K <= 7; ++K) {
        MeshFunction w(build_hierarchy(2, K).finest());
        const SolveReport rep = ngs_only(w, {0.0, 10000}, {2, 1.0}, {1.0, SourceKind::mms});
        const double ratio = *rep.error_norm / discretization_error(K);
        const index_t m = w.level.m;
        if (m <= 128)
            o.check(ratio <= 2.0, "m=" + std::to_string(m) + " reaches 2x discretization error");
        else
            o.check(ratio > 2.0, "m=" + std::to_string(m) + " does not reach 2x discretization error");
        o.note("m=" + std::to_string(m) + fmt(" ratio=%.3g", ratio));
    }
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double time_limit;
    Outcome (*fn)();
    bool slow;
};

}  // namespace

int main(int argc, char** argv) {
    bool skip_slow = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--skip-slow") == 0) skip_slow = true;

    const std::vector<Criterion> criteria{
        {1, "golden transcript, default run", 1.0, golden_default, false},
        {2, "golden transcript, MMS run", 1.0, golden_mms, false},
        {3, "MMS convergence rate O(h^2)", 30.0, convergence_rate, false},
        {4, "work units at depth K=10", 30.0, wu_at_depth, false},
        {5, "single F(1,0) within 2x discretization error", 60.0, textbook_efficiency, false},
        {6, "optimal complexity", 600.0, optimal_complexity, false},
        {7, "dense Newton oracle equivalence", 5.0, oracle_equivalence, false},
        {8, "property suite", 10.0, property_suite, false},
        {9, "NGS-only stagnation", 120.0, ngs_stagnation, true},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        if (c.slow && skip_slow) {
            std::printf("[SKIP] %d. %s\n", c.id, c.name);
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.fn();
        } catch (const std::exception& e) {
            out.check(false, std::string("exception: ") + e.what());
        }
        const double secs = seconds_since(t0);
        out.check(secs < c.time_limit, fmt("runtime %.2f s < %.0f s", secs, c.time_limit));
        std::printf("[%s] %d. %s (%.2f s): %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, secs, out.detail.c_str());
        std::fflush(stdout);
        failed += out.pass ? 0 : 1;
    }
    std::printf("%s: %d criteria failed\n", failed == 0 ? "ALL PASS" : "FAILURES", failed);
    return failed == 0 ? 0 : 1;
}
