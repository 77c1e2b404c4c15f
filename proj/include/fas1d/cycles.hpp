/**
 * @file cycles.hpp
 * @brief Full approximation storage (FAS) cycles: the coarse-level source
 *        functional, recursive V-cycle, iterated V-cycle solver, F-cycle and
 *        the single-level NGS-only iteration.
 */
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "bratu.hpp"
#include "diagnostics.hpp"
#include "mesh.hpp"
#include "smoother.hpp"
#include "transfer.hpp"

namespace fas1d {

struct CycleParams {
    int down = 1;
    int up = 1;
    int coarse = 1;
    RestrictionKind restriction = RestrictionKind::full_weighting;
    int niters = 2;

    void validate() const {
        if (down < 0 || up < 0)
            throw std::invalid_argument("fas1d: down/up sweep counts must be >= 0");
        if (coarse < 1)
            throw std::invalid_argument("fas1d: coarse sweep count must be >= 1");
        if (niters < 1)
            throw std::invalid_argument("fas1d: niters must be >= 1");
    }

    /// A cycle with neither pre- nor post-smoothing; allowed, but it will not converge.
    [[nodiscard]] bool smoothing_free() const noexcept { return down + up == 0; }
};

struct SolverParams {
    double rtol = 1.0e-4;
    int cyclemax = 100;

    void validate() const {
        if (!(rtol >= 0.0))
            throw std::invalid_argument("fas1d: rtol must be >= 0");
        if (cyclemax < 1)
            throw std::invalid_argument("fas1d: cyclemax must be >= 1");
    }
};

enum class SolveStatus { converged, cyclemax_reached };

struct SolveReport {
    SolveStatus status = SolveStatus::cyclemax_reached;
    int cycles_run = 0;
    /// Residual norm of the initial iterate followed by one entry per finest-level cycle.
    std::vector<double> residual_history;
    /// Accumulated WU at the same points as residual_history.
    std::vector<double> work_history;
    double work_units = 0.0;
    double final_residual = 0.0;
    std::optional<double> error_norm;
    MeshFunction solution;
};

namespace detail {

inline SmootherParams smoother_params(const CycleParams& cp, const ProblemParams& pp) {
    return SmootherParams{cp.niters, pp.lambda};
}

/// ell^{k-1} = R'(ell - F^k(w)) + F^{k-1}(Rw) given Rw already formed.
inline DualFunctional coarse_source_from(const MeshFunction& fine_w, const MeshFunction& restricted_w,
                                         const DualFunctional& fine_ell, const ProblemParams& pp) {
    DualFunctional coarse = restrict_functional(residual(fine_w, fine_ell, pp));
    const DualFunctional f_coarse = apply_operator(restricted_w, pp);
    for (std::size_t i = 0; i < coarse.values.size(); ++i)
        coarse.values[i] += f_coarse.values[i];
    return coarse;
}

}  // namespace detail

/// FAS source functional for the next coarser level.
inline DualFunctional coarse_source(const MeshFunction& fine_w, const DualFunctional& fine_ell,
                                    const ProblemParams& pp, RestrictionKind restriction) {
    require_same_level(fine_w.level, fine_ell.level, "coarse_source");
    if (fine_w.level.k < 1)
        throw std::invalid_argument("fas1d: coarse_source needs a level above the coarsest");
    return detail::coarse_source_from(fine_w, restrict_function(fine_w, restriction), fine_ell, pp);
}

/// One in-place FAS V-cycle on level w.level.k; level 0 is the coarsest.
inline void fas_vcycle(MeshFunction& w, const DualFunctional& ell, const CycleParams& cp,
                       const ProblemParams& pp, WorkCounter& wc) {
    require_same_level(w.level, ell.level, "fas_vcycle");
    const SmootherParams sp = detail::smoother_params(cp, pp);
    const int k = w.level.k;
    if (k == 0) {
        coarse_solve(w, ell, sp, cp.coarse);
        charge_sweep(wc, 0, static_cast<double>(cp.coarse));
        return;
    }
    for (int j = 0; j < cp.down; ++j) {
        ngs_sweep(w, ell, sp, SweepDirection::forward);
        charge_sweep(wc, k);
    }
    const MeshFunction restricted = restrict_function(w, cp.restriction);
    const DualFunctional ell_coarse = detail::coarse_source_from(w, restricted, ell, pp);
    MeshFunction w_coarse = restricted;
    fas_vcycle(w_coarse, ell_coarse, cp, pp, wc);
    for (std::size_t i = 0; i < w_coarse.values.size(); ++i)
        w_coarse.values[i] -= restricted.values[i];
    const MeshFunction correction = prolong(w_coarse, w.level);
    for (std::size_t i = 0; i < w.values.size(); ++i)
        w.values[i] += correction.values[i];
    for (int j = 0; j < cp.up; ++j) {
        ngs_sweep(w, ell, sp, SweepDirection::backward);
        charge_sweep(wc, k);
    }
}

inline void fas_vcycle(MeshFunction& w, const DualFunctional& ell, const CycleParams& cp,
                       const ProblemParams& pp) {
    WorkCounter wc(w.level.k);
    fas_vcycle(w, ell, cp, pp, wc);
}

namespace detail {

inline void finish_report(SolveReport& rep, const MeshFunction& w, const ProblemParams& pp, double wu) {
    rep.work_units = wu;
    rep.final_residual = rep.residual_history.back();
    if (pp.source == SourceKind::mms)
        rep.error_norm = mms_error(w);
    rep.solution = w;
}

/// Shared rtol/cyclemax loop. `step` performs one finest-level cycle.
template <class Step>
void iterate(SolveReport& rep, MeshFunction& w, const DualFunctional& ell, const SolverParams& sp,
             const ProblemParams& pp, WorkCounter& wc, int first_cycle, double r0, Step&& step) {
    for (int s = first_cycle; s <= sp.cyclemax; ++s) {
        step();
        ++rep.cycles_run;
        const double r = norm_l2(residual(w, ell, pp));
        rep.residual_history.push_back(r);
        rep.work_history.push_back(wc.total_wu);
        // an exactly zero residual counts as converged even when r0 = 0
        if (r < sp.rtol * r0 || r == 0.0) {
            rep.status = SolveStatus::converged;
            return;
        }
    }
    rep.status = SolveStatus::cyclemax_reached;
}

}  // namespace detail

/**
 * Iterated V-cycles on the finest level until ||ell - F(w)|| < rtol * r0 or
 * cyclemax cycles have run. At least one cycle always runs. w is updated in
 * place and also copied into the report.
 */
inline SolveReport fas_solver(MeshFunction& w, const SolverParams& sp, const CycleParams& cp,
                              const ProblemParams& pp) {
    sp.validate();
    cp.validate();
    pp.validate();
    const DualFunctional ell = source_functional(w.level, pp);
    WorkCounter wc(w.level.k);
    SolveReport rep;
    const double r0 = norm_l2(residual(w, ell, pp));
    rep.residual_history.push_back(r0);
    rep.work_history.push_back(0.0);
    detail::iterate(rep, w, ell, sp, pp, wc, 1, r0, [&] { fas_vcycle(w, ell, cp, pp, wc); });
    detail::finish_report(rep, w, pp, wc.total_wu);
    return rep;
}

/**
 * F-cycle from a zero coarsest iterate, ascending with the enhanced
 * prolongation and one V-cycle per level. The V-cycle done on arrival at
 * the finest level is cycle 1 of cyclemax; further V-cycles follow under the
 * same stopping rule as fas_solver. r0 is the residual of the zero iterate
 * on the finest level.
 */
inline SolveReport fas_fcycle(const Hierarchy& hier, const SolverParams& sp, const CycleParams& cp,
                              const ProblemParams& pp) {
    sp.validate();
    cp.validate();
    pp.validate();
    const int K = hier.finest_index();
    const SmootherParams smp = detail::smoother_params(cp, pp);
    WorkCounter wc(K);
    SolveReport rep;

    const DualFunctional ell_finest = source_functional(hier.finest(), pp);
    const double r0 = norm_l2(residual(MeshFunction(hier.finest()), ell_finest, pp));
    rep.residual_history.push_back(r0);
    rep.work_history.push_back(0.0);

    MeshFunction w(hier.coarsest());
    coarse_solve(w, source_functional(hier.coarsest(), pp), smp, cp.coarse);
    charge_sweep(wc, 0, static_cast<double>(cp.coarse));

    if (K == 0) {
        // no V-cycles: the history holds only r0
        detail::finish_report(rep, w, pp, wc.total_wu);
        rep.final_residual = norm_l2(residual(w, ell_finest, pp));
        rep.status = rep.final_residual < sp.rtol * r0 ? SolveStatus::converged : SolveStatus::cyclemax_reached;
        return rep;
    }

    for (int k = 1; k < K; ++k) {
        const DualFunctional ell = source_functional(hier.level(k), pp);
        w = enhanced_prolong(w, ell, smp);
        charge_sweep(wc, k, 0.5);
        fas_vcycle(w, ell, cp, pp, wc);
    }
    w = enhanced_prolong(w, ell_finest, smp);
    charge_sweep(wc, K, 0.5);

    detail::iterate(rep, w, ell_finest, sp, pp, wc, 1, r0, [&] { fas_vcycle(w, ell_finest, cp, pp, wc); });
    detail::finish_report(rep, w, pp, wc.total_wu);
    return rep;
}

/// Single-level NGS iteration with the fas_solver stopping rule; each sweep is 1 WU.
inline SolveReport ngs_only(MeshFunction& w, const SolverParams& sp, const SmootherParams& smp,
                            const ProblemParams& pp) {
    sp.validate();
    smp.validate();
    pp.validate();
    const DualFunctional ell = source_functional(w.level, pp);
    WorkCounter wc(w.level.k);
    SolveReport rep;
    const double r0 = norm_l2(residual(w, ell, pp));
    rep.residual_history.push_back(r0);
    rep.work_history.push_back(0.0);
    detail::iterate(rep, w, ell, sp, pp, wc, 1, r0, [&] {
        ngs_sweep(w, ell, smp, SweepDirection::forward);
        charge_sweep(wc, w.level.k);
    });
    detail::finish_report(rep, w, pp, wc.total_wu);
    return rep;
}

}  // namespace fas1d
