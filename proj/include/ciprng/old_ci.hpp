#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "ciprng/bits.hpp"
#include "ciprng/logistic.hpp"

namespace ciprng {

// The predecessor generator driven by two logistic maps. Each round draws
// a from the first map and flips d + c + 1 cells (d = [a > 0.5]), with the
// target cell of every flip taken from the second map as
// floor(100000 * b) mod N. There is no decimation: repeated cells simply
// flip back and forth.
//
// MapA and MapB expose `double step()`; logistic_map is the production
// choice.
template <class MapA, class MapB>
class basic_old_ci_generator {
public:
    basic_old_ci_generator(bit_state x0, MapA map_a, MapB map_b, int c)
        : x_(x0), map_a_(std::move(map_a)), map_b_(std::move(map_b)), c_(c) {
        if (c < 3 * x0.n_cells())
            throw std::invalid_argument("old_ci_generator: c must be >= 3N");
    }

    int n_cells() const { return x_.n_cells(); }
    const bit_state& state() const { return x_; }
    int last_m() const { return last_m_; }

    const bit_state& round() {
        const double a = map_a_.step();
        const int d = a > 0.5 ? 1 : 0;
        const int m = d + c_;
        for (int i = 0; i <= m; ++i) {
            const double b = map_b_.step();
            const int s = static_cast<int>(
                static_cast<std::uint64_t>(100000.0 * b) % static_cast<std::uint64_t>(n_cells()));
            x_.flip_cell(s + 1);
        }
        last_m_ = m;
        return x_;
    }

    // bit-source interface, same framing as the new generator
    int block_bits() const { return x_.n_cells(); }
    std::uint64_t next_block() {
        const std::uint64_t out = x_.value();
        round();
        return out;
    }

private:
    bit_state x_;
    MapA map_a_;
    MapB map_b_;
    int c_;
    int last_m_ = 0;
};

using old_ci_generator = basic_old_ci_generator<logistic_map, logistic_map>;

} // namespace ciprng
