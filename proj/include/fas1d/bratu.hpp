/**
 * @file bratu.hpp
 * @brief P1 finite element discretization of  -u'' - lambda e^u = g  on [0,1],
 *        u(0) = u(1) = 0, with trapezoid-rule quadrature.
 *
 * Functions in the FE space are stored by their interior nodal values
 * (hat-basis coefficients). Functionals on that space are stored by their
 * values on the interior hat functions. Both are vectors of length m-1 but
 * are kept as distinct types so they cannot be mixed up.
 */
#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mesh.hpp"

namespace fas1d {

/// Raised when the iteration blows up (overflow of e^u, zero Newton slope).
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

template <class Tag>
struct NodalVector {
    Level level;
    std::vector<double> values;

    NodalVector() = default;
    explicit NodalVector(const Level& lev)
        : level(lev), values(static_cast<std::size_t>(lev.interior_count()), 0.0) {}
    NodalVector(const Level& lev, std::vector<double> v) : level(lev), values(std::move(v)) {
        if (static_cast<index_t>(values.size()) != level.interior_count())
            throw std::invalid_argument("fas1d: vector length " + std::to_string(values.size()) +
                                        " does not match interior count " +
                                        std::to_string(level.interior_count()));
    }

    [[nodiscard]] index_t size() const noexcept { return static_cast<index_t>(values.size()); }

    /// Value at node p in 0..m; the boundary nodes read as zero.
    [[nodiscard]] double at(index_t p) const noexcept {
        return (p <= 0 || p >= level.m) ? 0.0 : values[static_cast<std::size_t>(p - 1)];
    }
    /// Interior node p in 1..m-1.
    double& operator[](index_t p) noexcept { return values[static_cast<std::size_t>(p - 1)]; }
    double operator[](index_t p) const noexcept { return values[static_cast<std::size_t>(p - 1)]; }

    std::span<double> span() noexcept { return values; }
    std::span<const double> span() const noexcept { return values; }
};

struct FunctionTag {};
struct FunctionalTag {};

}  // namespace detail

/// Element of S^h: interior nodal values.
using MeshFunction = detail::NodalVector<detail::FunctionTag>;
/// Element of (S^h)': values on the interior hat functions.
using DualFunctional = detail::NodalVector<detail::FunctionalTag>;

enum class SourceKind { zero, mms };

struct ProblemParams {
    double lambda = 1.0;
    SourceKind source = SourceKind::zero;

    void validate() const {
        if (!std::isfinite(lambda))
            throw std::invalid_argument("fas1d: lambda must be finite");
    }
};

inline void require_same_level(const Level& a, const Level& b, const char* what) {
    if (!(a == b))
        throw std::invalid_argument(std::string("fas1d: level mismatch in ") + what);
}

namespace detail {

inline double checked_exp(double u) {
    const double e = std::exp(u);
    if (!std::isfinite(e)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6g", u);
        throw DivergenceError(std::string("fas1d: overflow of exp(u) at u = ") + buf);
    }
    return e;
}

}  // namespace detail

/// Exact solution of the manufactured problem.
inline double mms_exact(double x) { return std::sin(3.0 * std::numbers::pi * x); }

/// g(x) such that mms_exact solves -u'' - lambda e^u = g.
inline double mms_source(double x, double lambda) {
    const double s = std::sin(3.0 * std::numbers::pi * x);
    return 9.0 * std::numbers::pi * std::numbers::pi * s - lambda * std::exp(s);
}

/// F^h(w)[psi_p] = (2w[p] - w[p-1] - w[p+1])/h - h lambda e^{w[p]}.
inline DualFunctional apply_operator(const MeshFunction& w, const ProblemParams& params) {
    const Level& lev = w.level;
    const double h = lev.h;
    DualFunctional out(lev);
    for (index_t p = 1; p < lev.m; ++p) {
        const double wp = w[p];
        out[p] = (2.0 * wp - w.at(p - 1) - w.at(p + 1)) / h - h * params.lambda * detail::checked_exp(wp);
    }
    return out;
}

/// ell^h[psi_p] = h g(x_p).
inline DualFunctional source_functional(const Level& level, const ProblemParams& params) {
    DualFunctional out(level);
    if (params.source == SourceKind::mms) {
        for (index_t p = 1; p < level.m; ++p)
            out[p] = level.h * mms_source(level.x(p), params.lambda);
    }
    return out;
}

/// r^h(w)[psi_p] = ell[psi_p] - F^h(w)[psi_p].
inline DualFunctional residual(const MeshFunction& w, const DualFunctional& ell, const ProblemParams& params) {
    require_same_level(w.level, ell.level, "residual");
    const Level& lev = w.level;
    const double h = lev.h;
    DualFunctional out(lev);
    for (index_t p = 1; p < lev.m; ++p) {
        const double wp = w[p];
        out[p] = ell[p] - (2.0 * wp - w.at(p - 1) - w.at(p + 1)) / h + h * params.lambda * detail::checked_exp(wp);
    }
    return out;
}

/// Samples the manufactured solution at the interior nodes.
inline MeshFunction sample_exact(const Level& level) {
    MeshFunction u(level);
    for (index_t p = 1; p < level.m; ++p)
        u[p] = mms_exact(level.x(p));
    return u;
}

}  // namespace fas1d
