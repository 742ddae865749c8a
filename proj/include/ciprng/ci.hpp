#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ciprng/bits.hpp"
#include "ciprng/thresholds.hpp"
#include "ciprng/xorshift.hpp"

namespace ciprng {

// Per-round flags recording which cells have already been flipped. A cell
// may be marked at most once per round; the whole sequence is cleared when
// a new round starts.
class mark_sequence {
public:
    explicit mark_sequence(int n_cells) : n_(n_cells) {}

    int n_cells() const { return n_; }
    bool marked(int cell) const { return (mask_ >> (cell - 1)) & 1u; }
    void mark(int cell) { mask_ |= std::uint64_t{1} << (cell - 1); }
    void reset() { mask_ = 0; }
    int count() const { return __builtin_popcountll(mask_); }

private:
    std::uint64_t mask_ = 0;
    int n_ = 0;
};

// Irregular decimation of the raw cell stream b: candidate cells are drawn
// until m distinct ones have been accepted; a draw whose mark is already
// set is discarded and the underlying stream simply advances. Accepted
// cells are written to `block` in arrival order. For m = 0 nothing is
// drawn at all.
template <class BSource>
int next_strategy_block(BSource& b_source, mark_sequence& marks, int m,
                        std::span<int> block) {
    if (m < 0 || m > marks.n_cells())
        throw std::invalid_argument("next_strategy_block: m out of range");
    if (marks.count() != 0)
        throw std::logic_error("next_strategy_block: marks not reset");
    int accepted = 0;
    while (accepted < m) {
        const int cell = b_source.next_cell();
        if (cell < 1 || cell > marks.n_cells())
            throw std::invalid_argument("next_strategy_block: cell out of range");
        if (marks.marked(cell)) continue;
        marks.mark(cell);
        block[static_cast<std::size_t>(accepted++)] = cell;
    }
    return accepted;
}

// Applies the vectorial negation to the listed cells only: the returned
// state differs from x in exactly the block's positions. Indices must be
// distinct and within [1, N].
inline bit_state ci_next_state(bit_state x, std::span<const int> block) {
    std::uint64_t seen = 0;
    for (int cell : block) {
        if (cell < 1 || cell > x.n_cells())
            throw std::invalid_argument("ci_next_state: cell index out of range");
        const std::uint64_t bit = std::uint64_t{1} << (cell - 1);
        if (seen & bit)
            throw std::invalid_argument("ci_next_state: duplicate cell index");
        seen |= bit;
        x.flip_cell(cell);
    }
    return x;
}

// Draw sources for the generator. The m source yields the number of cells
// to flip this round; the b source yields raw 1-based candidate cells.

class xorshift_m_source {
public:
    xorshift_m_source(std::uint32_t seed, int n_cells)
        : gen_(seed), thresholds_(n_cells) {}

    int next_m() { return thresholds_.map(gen_.next()); }
    const m_thresholds& thresholds() const { return thresholds_; }

private:
    xorshift32 gen_;
    m_thresholds thresholds_;
};

class xorshift_b_source {
public:
    xorshift_b_source(std::uint32_t seed, int n_cells)
        : gen_(seed), n_(static_cast<std::uint32_t>(n_cells)) {}

    // low-bits reduction; exact for power-of-two N, bias < 2^-26 otherwise
    int next_cell() { return 1 + static_cast<int>(gen_.next() % n_); }

private:
    xorshift32 gen_;
    std::uint32_t n_;
};

struct stream_exhausted : std::runtime_error {
    stream_exhausted() : std::runtime_error("injected stream exhausted") {}
};

// Fixture sources fed from explicit value lists, used to replay worked
// traces where m and b are given directly instead of drawn.
class injected_m_source {
public:
    explicit injected_m_source(std::vector<int> values) : values_(std::move(values)) {}
    int next_m() {
        if (pos_ >= values_.size()) throw stream_exhausted{};
        return values_[pos_++];
    }
    std::size_t remaining() const { return values_.size() - pos_; }

private:
    std::vector<int> values_;
    std::size_t pos_ = 0;
};

class injected_b_source {
public:
    explicit injected_b_source(std::vector<int> values) : values_(std::move(values)) {}
    int next_cell() {
        if (pos_ >= values_.size()) throw stream_exhausted{};
        return values_[pos_++];
    }
    std::size_t remaining() const { return values_.size() - pos_; }

private:
    std::vector<int> values_;
    std::size_t pos_ = 0;
};

// The CI generator: an N-cell boolean state iterated by the vectorial
// negation along a decimated strategy. Each round draws m, collects m
// distinct cells from the b stream and flips exactly those, so consecutive
// outputs differ in exactly m positions.
//
// The emitted state stream starts with x^0 itself and then appends one
// state per round; next_block() realizes that framing.
template <class MSource, class BSource>
class basic_ci_generator {
public:
    basic_ci_generator(bit_state x0, MSource m_source, BSource b_source)
        : x_(x0),
          m_source_(std::move(m_source)),
          b_source_(std::move(b_source)),
          marks_(x0.n_cells()),
          block_(static_cast<std::size_t>(x0.n_cells())) {
        if (x0.n_cells() < 2)
            throw std::invalid_argument("ci generator: need at least 2 cells");
    }

    int n_cells() const { return x_.n_cells(); }
    const bit_state& state() const { return x_; }
    int last_m() const { return last_m_; }

    // One full round; returns the new state.
    const bit_state& round() {
        const int m = m_source_.next_m();
        marks_.reset();
        next_strategy_block(b_source_, marks_, m, block_);
        x_ = ci_next_state(x_, std::span<const int>(block_.data(),
                                                    static_cast<std::size_t>(m)));
        last_m_ = m;
        return x_;
    }

    // bit-source interface: emits the current state, then advances
    int block_bits() const { return x_.n_cells(); }
    std::uint64_t next_block() {
        const std::uint64_t out = x_.value();
        round();
        return out;
    }

    MSource& m_source() { return m_source_; }
    BSource& b_source() { return b_source_; }

private:
    bit_state x_;
    MSource m_source_;
    BSource b_source_;
    mark_sequence marks_;
    std::vector<int> block_;
    int last_m_ = 0;
};

using ci_generator = basic_ci_generator<xorshift_m_source, xorshift_b_source>;
using injected_ci_generator = basic_ci_generator<injected_m_source, injected_b_source>;

// Standard seeding: nonzero seeds for the two internal xorshift streams.
// Time-based defaults live in the CLI, not here.
inline ci_generator seed_ci_generator(bit_state x0, std::uint32_t seed_m,
                                      std::uint32_t seed_b) {
    if (seed_m == 0 || seed_b == 0)
        throw std::invalid_argument("ci generator: zero state");
    return ci_generator(x0, xorshift_m_source(seed_m, x0.n_cells()),
                        xorshift_b_source(seed_b, x0.n_cells()));
}

inline injected_ci_generator make_injected_ci_generator(bit_state x0,
                                                        std::vector<int> m_values,
                                                        std::vector<int> b_values) {
    return injected_ci_generator(x0, injected_m_source(std::move(m_values)),
                                 injected_b_source(std::move(b_values)));
}

} // namespace ciprng
