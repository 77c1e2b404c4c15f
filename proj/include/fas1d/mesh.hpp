/**
 * @file mesh.hpp
 * @brief Nested uniform meshes on [0,1] refined by factors of two.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace fas1d {

using index_t = std::int64_t;

/// One uniform mesh of the hierarchy. Level 0 is the coarsest.
struct Level {
    int k = 0;
    index_t m = 2;       ///< element count
    double h = 0.5;      ///< element length, 1/m

    Level() = default;
    Level(int k_, index_t m_) : k(k_), m(m_), h(1.0 / static_cast<double>(m_)) {}

    [[nodiscard]] index_t interior_count() const noexcept { return m - 1; }

    /// Coordinate of node p, 0 <= p <= m.
    [[nodiscard]] double x(index_t p) const noexcept { return static_cast<double>(p) * h; }

    [[nodiscard]] bool has_coarser() const noexcept { return k > 0 && m % 2 == 0; }

    [[nodiscard]] Level coarser() const {
        if (!has_coarser())
            throw std::invalid_argument("fas1d: level " + std::to_string(k) + " has no coarser level");
        return Level(k - 1, m / 2);
    }

    [[nodiscard]] Level finer() const {
        if (m > std::numeric_limits<index_t>::max() / 2)
            throw std::overflow_error("fas1d: refined element count overflows");
        return Level(k + 1, 2 * m);
    }

    friend bool operator==(const Level& a, const Level& b) noexcept {
        return a.k == b.k && a.m == b.m;
    }
};

class Hierarchy {
public:
    Hierarchy(index_t m0, int K) : m0_(m0) {
        if (m0 < 2)
            throw std::invalid_argument("fas1d: coarsest element count must be >= 2");
        if (m0 % 2 != 0)
            throw std::invalid_argument("fas1d: coarsest element count must be even");
        if (K < 0)
            throw std::invalid_argument("fas1d: number of refinements must be >= 0");
        // m0 * 2^K must fit, with headroom for m+1 node indices
        const int bits = std::numeric_limits<index_t>::digits;
        if (K >= bits || m0 > (std::numeric_limits<index_t>::max() >> (K + 1)))
            throw std::overflow_error("fas1d: finest element count overflows the index type");
        levels_.reserve(static_cast<std::size_t>(K) + 1);
        levels_.emplace_back(0, m0);
        for (int k = 1; k <= K; ++k)
            levels_.push_back(levels_.back().finer());
    }

    [[nodiscard]] index_t m0() const noexcept { return m0_; }
    [[nodiscard]] int finest_index() const noexcept { return static_cast<int>(levels_.size()) - 1; }
    [[nodiscard]] const Level& level(int k) const { return levels_.at(static_cast<std::size_t>(k)); }
    [[nodiscard]] const Level& finest() const noexcept { return levels_.back(); }
    [[nodiscard]] const Level& coarsest() const noexcept { return levels_.front(); }
    [[nodiscard]] const std::vector<Level>& levels() const noexcept { return levels_; }
    [[nodiscard]] std::size_t size() const noexcept { return levels_.size(); }

private:
    index_t m0_;
    std::vector<Level> levels_;
};

/// Builds levels k = 0..K with m_k = m0 * 2^k.
inline Hierarchy build_hierarchy(index_t m0, int K) { return Hierarchy(m0, K); }

}  // namespace fas1d
