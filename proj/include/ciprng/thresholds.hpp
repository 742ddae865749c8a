#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace ciprng {

// Integer cut points realizing the binomially weighted draw of the
// per-round flip count m in [0, N]:
//
//   m = j  iff  cuts[j] <= y < cuts[j+1],   cuts[N+1] taken as 2^32,
//
// where cuts[j] = floor(2^32 * sum_{i<j} C(N,i) / 2^N). With a uniform
// 32-bit y this gives P(m = j) = C(N,j)/2^N up to less than 2^-32 per cut.
// Binomials are summed exactly in 64-bit arithmetic (the full row sum for
// N = 64 is 2^64 - 1, which still fits).
//
// For N > 32 several leading cuts collapse onto the same value because the
// true probabilities are below the 32-bit resolution; those m values simply
// never occur, and map() returns the largest j whose cut is <= y.
class m_thresholds {
public:
    static constexpr int min_cells = 2;
    static constexpr int max_cells = 64;

    explicit m_thresholds(int n_cells) : n_(n_cells) {
        if (n_cells < min_cells || n_cells > max_cells)
            throw std::invalid_argument("m_thresholds: cell count must be in [2,64]");
        const int n = n_cells;
        std::vector<std::uint64_t> binom(static_cast<std::size_t>(n) + 1);
        binom[0] = 1;
        for (int j = 1; j <= n; ++j)
            binom[static_cast<std::size_t>(j)] =
                binom[static_cast<std::size_t>(j - 1)] * static_cast<std::uint64_t>(n - j + 1)
                / static_cast<std::uint64_t>(j);

        cuts_.resize(static_cast<std::size_t>(n) + 1);
        cuts_[0] = 0;
        std::uint64_t cum = 0;
        for (int j = 1; j <= n; ++j) {
            cum += binom[static_cast<std::size_t>(j - 1)];
            // floor(cum * 2^32 / 2^n), exactly
            std::uint64_t cut = n >= 32 ? (cum >> (n - 32)) : (cum << (32 - n));
            cuts_[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(cut);
        }
    }

    int n_cells() const { return n_; }
    std::span<const std::uint32_t> cuts() const { return cuts_; }

    int map(std::uint32_t y) const {
        auto it = std::upper_bound(cuts_.begin(), cuts_.end(), y);
        return static_cast<int>(it - cuts_.begin()) - 1;
    }

private:
    int n_;
    std::vector<std::uint32_t> cuts_;
};

} // namespace ciprng
