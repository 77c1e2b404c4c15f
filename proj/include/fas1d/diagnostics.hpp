/**
 * @file diagnostics.hpp
 * @brief Discrete norms, manufactured-solution error, work-unit accounting
 *        and log-log rate fits.
 */
#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bratu.hpp"

namespace fas1d {

/// sqrt(h * sum v[p]^2) over interior values.
inline double norm_l2(std::span<const double> v, double h) {
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(h * s);
}

template <class Tag>
double norm_l2(const detail::NodalVector<Tag>& v) {
    return norm_l2(v.span(), v.level.h);
}

/// ||w - u_exact||_2 for the manufactured solution u_exact = sin(3 pi x).
inline double mms_error(const MeshFunction& w) {
    const Level& lev = w.level;
    double s = 0.0;
    for (index_t p = 1; p < lev.m; ++p) {
        const double e = w[p] - mms_exact(lev.x(p));
        s += e * e;
    }
    return std::sqrt(lev.h * s);
}

/**
 * Work units: a smoother sweep on the finest level costs 1 WU, on level k
 * it costs 2^-(K-k). Transfers are free except the enhanced prolongation,
 * which is charged as half a sweep on its target level.
 */
struct WorkCounter {
    int finest_level = 0;
    double total_wu = 0.0;

    explicit WorkCounter(int K = 0) : finest_level(K) {}
};

inline void charge_sweep(WorkCounter& wc, int level_k, double fraction = 1.0) {
    if (level_k < 0 || level_k > wc.finest_level)
        throw std::invalid_argument("fas1d: charge_sweep level out of range");
    wc.total_wu += std::ldexp(fraction, level_k - wc.finest_level);
}

/// Least-squares fit of log(y) = slope * log(x) + intercept.
struct RateFit {
    std::vector<std::pair<double, double>> pairs;
    double slope = 0.0;
    double intercept = 0.0;
};

inline RateFit fit_rate(std::vector<std::pair<double, double>> pairs) {
    if (pairs.size() < 3)
        throw std::invalid_argument("fas1d: rate fit needs at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pairs) {
        if (!(x > 0.0) || !(y > 0.0))
            throw std::invalid_argument("fas1d: rate fit needs positive data");
        const double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(pairs.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0)
        throw std::invalid_argument("fas1d: rate fit needs distinct abscissae");
    RateFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.pairs = std::move(pairs);
    return fit;
}

}  // namespace fas1d
