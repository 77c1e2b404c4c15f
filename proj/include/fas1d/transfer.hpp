/**
 * @file transfer.hpp
 * @brief Inter-level transfers between level k-1 (coarse) and level k (fine).
 *
 * All operators are index stencils; no matrices are stored. Coarse node q
 * coincides with fine node 2q. Boundary nodes read as zero.
 */
#pragma once

#include <stdexcept>

#include "bratu.hpp"
#include "smoother.hpp"

namespace fas1d {

enum class RestrictionKind { full_weighting, injection };

namespace detail {

inline Level coarse_of(const Level& fine) {
    if (fine.m % 2 != 0 || fine.m < 2)
        throw std::invalid_argument("fas1d: odd element count cannot be coarsened");
    return Level(fine.k > 0 ? fine.k - 1 : 0, fine.m / 2);
}

inline void require_child(const Level& coarse, const Level& fine, const char* what) {
    if (fine.m != 2 * coarse.m)
        throw std::invalid_argument(std::string("fas1d: level mismatch in ") + what);
}

}  // namespace detail

/// Piecewise-linear interpolation from level k-1 onto level k.
inline MeshFunction prolong(const MeshFunction& coarse, const Level& fine_level) {
    detail::require_child(coarse.level, fine_level, "prolong");
    MeshFunction fine(fine_level);
    const index_t mc = coarse.level.m;
    for (index_t q = 1; q < mc; ++q)
        fine[2 * q] = coarse[q];
    for (index_t q = 0; q < mc; ++q)
        fine[2 * q + 1] = 0.5 * (coarse.at(q) + coarse.at(q + 1));
    return fine;
}

inline MeshFunction prolong(const MeshFunction& coarse) {
    return prolong(coarse, coarse.level.finer());
}

/// Canonical restriction of functionals, (R'ell)[v] = ell[P v].
inline DualFunctional restrict_functional(const DualFunctional& fine) {
    const Level coarse_level = detail::coarse_of(fine.level);
    DualFunctional coarse(coarse_level);
    for (index_t q = 1; q < coarse_level.m; ++q)
        coarse[q] = 0.5 * fine.at(2 * q - 1) + fine[2 * q] + 0.5 * fine.at(2 * q + 1);
    return coarse;
}

/// Pointwise injection: keeps the values at coarse-coincident nodes.
inline MeshFunction restrict_injection(const MeshFunction& fine) {
    const Level coarse_level = detail::coarse_of(fine.level);
    MeshFunction coarse(coarse_level);
    for (index_t q = 1; q < coarse_level.m; ++q)
        coarse[q] = fine[2 * q];
    return coarse;
}

/// Full weighting with stencil (1/4, 1/2, 1/4); equals R'/2 as matrices.
inline MeshFunction restrict_fullweighting(const MeshFunction& fine) {
    const Level coarse_level = detail::coarse_of(fine.level);
    MeshFunction coarse(coarse_level);
    for (index_t q = 1; q < coarse_level.m; ++q)
        coarse[q] = 0.25 * fine.at(2 * q - 1) + 0.5 * fine[2 * q] + 0.25 * fine.at(2 * q + 1);
    return coarse;
}

inline MeshFunction restrict_function(const MeshFunction& fine, RestrictionKind kind) {
    return kind == RestrictionKind::injection ? restrict_injection(fine) : restrict_fullweighting(fine);
}

/**
 * Enhanced prolongation used on F-cycle ascent: prolong, then one NGS pass
 * over the new (odd-index) fine nodes in increasing order. Values at
 * coarse-coincident nodes are not touched. `ell_fine` is the fine-level
 * source functional.
 */
inline MeshFunction enhanced_prolong(const MeshFunction& coarse, const DualFunctional& ell_fine,
                                     const SmootherParams& params) {
    MeshFunction fine = prolong(coarse, ell_fine.level);
    for (index_t p = 1; p < fine.level.m; p += 2)
        detail::ngs_point(fine, ell_fine, p, params);
    return fine;
}

}  // namespace fas1d
