#pragma once

#include <cstdint>
#include <stdexcept>

namespace ciprng {

// One step of Marsaglia's 32-bit xorshift with the (13, 17, 5) triple.
// The map is a bijection on nonzero words with a single cycle of length
// 2^32 - 1; zero is its fixed point and must never enter the state.
constexpr std::uint32_t xorshift32_step(std::uint32_t z) {
    z ^= z << 13;
    z ^= z >> 17;
    z ^= z << 5;
    return z;
}

class xorshift32 {
public:
    explicit xorshift32(std::uint32_t seed) : z_(seed) {
        if (seed == 0)
            throw std::invalid_argument("xorshift32: zero state");
    }

    std::uint32_t next() { return z_ = xorshift32_step(z_); }
    std::uint32_t state() const { return z_; }

    // bit-source interface: one 32-bit word per block
    int block_bits() const { return 32; }
    std::uint64_t next_block() { return next(); }

private:
    std::uint32_t z_;
};

} // namespace ciprng
