/**
 * @file smoother.hpp
 * @brief Nonlinear Gauss-Seidel (Gauss-Seidel-Newton) sweeps.
 *
 * At each node the scalar equation phi(c) = r(w + c psi_p)[psi_p] = 0 is
 * attacked with a fixed number of Newton steps starting from c = 0, and the
 * correction is applied immediately so later nodes see the updated value.
 */
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "bratu.hpp"

namespace fas1d {

enum class SweepDirection { forward, backward };

struct SmootherParams {
    int niters = 2;
    double lambda = 1.0;

    void validate() const {
        if (niters < 1)
            throw std::invalid_argument("fas1d: niters must be >= 1");
        if (!std::isfinite(lambda))
            throw std::invalid_argument("fas1d: lambda must be finite");
    }
};

/// Visitor that ignores node visits.
struct NoVisit {
    void operator()(index_t) const noexcept {}
};

namespace detail {

/// Newton solve of the pointwise residual equation at node p; updates w[p].
inline void ngs_point(MeshFunction& w, const DualFunctional& ell, index_t p, const SmootherParams& sp) {
    const double h = w.level.h;
    const double wp = w[p];
    const double neighbors = w.at(p - 1) + w.at(p + 1);
    const double lp = ell[p];
    double c = 0.0;
    for (int it = 0; it < sp.niters; ++it) {
        const double hle = h * sp.lambda * checked_exp(wp + c);
        const double phi = lp - (2.0 * (wp + c) - neighbors) / h + hle;
        const double dphi = -2.0 / h + hle;
        if (dphi == 0.0)
            throw DivergenceError("fas1d: zero Newton derivative at node " + std::to_string(p));
        c -= phi / dphi;
    }
    if (!std::isfinite(c))
        throw DivergenceError("fas1d: non-finite NGS correction at node " + std::to_string(p));
    w[p] = wp + c;
}

}  // namespace detail

/**
 * One in-place NGS sweep. `visit` is called with each node index just
 * before it is updated; pass a recorder to observe the ordering.
 */
template <class Visitor = NoVisit>
void ngs_sweep(MeshFunction& w, const DualFunctional& ell, const SmootherParams& params,
               SweepDirection dir = SweepDirection::forward, Visitor&& visit = {}) {
    require_same_level(w.level, ell.level, "ngs_sweep");
    const index_t m = w.level.m;
    if (dir == SweepDirection::forward) {
        for (index_t p = 1; p < m; ++p) {
            visit(p);
            detail::ngs_point(w, ell, p, params);
        }
    } else {
        for (index_t p = m - 1; p >= 1; --p) {
            visit(p);
            detail::ngs_point(w, ell, p, params);
        }
    }
}

/// Coarsest-level "solve": a fixed number of forward sweeps.
inline void coarse_solve(MeshFunction& w, const DualFunctional& ell, const SmootherParams& params, int coarse_sweeps) {
    if (coarse_sweeps < 0)
        throw std::invalid_argument("fas1d: coarse sweep count must be >= 0");
    for (int j = 0; j < coarse_sweeps; ++j)
        ngs_sweep(w, ell, params, SweepDirection::forward);
}

}  // namespace fas1d
