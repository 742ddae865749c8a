#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ciprng {

// A bit sequence is stored unpacked, one byte per bit, values 0 or 1.
using bit_sequence = std::vector<std::uint8_t>;

// State of an N-cell boolean vector, N in [1,64]. Cell 1 is the most
// significant bit of the packed word, so the integer value of a state
// reads the cells left to right as a binary number.
class bit_state {
public:
    bit_state() = default;

    bit_state(std::uint64_t value, int n_cells) : word_(value), n_(n_cells) {
        if (n_cells < 1 || n_cells > 64)
            throw std::invalid_argument("bit_state: cell count must be in [1,64]");
        if (n_cells < 64 && (value >> n_cells) != 0)
            throw std::invalid_argument("bit_state: value does not fit in cell count");
    }

    static bit_state from_string(std::string_view bits) {
        if (bits.empty() || bits.size() > 64)
            throw std::invalid_argument("bit_state: string length must be in [1,64]");
        std::uint64_t w = 0;
        for (char c : bits) {
            if (c != '0' && c != '1')
                throw std::invalid_argument("bit_state: string must contain only 0/1");
            w = (w << 1) | static_cast<std::uint64_t>(c - '0');
        }
        return bit_state(w, static_cast<int>(bits.size()));
    }

    int n_cells() const { return n_; }
    std::uint64_t value() const { return word_; }

    // cell index is 1-based, cell 1 = most significant
    bool cell(int i) const { return (word_ >> (n_ - i)) & 1u; }
    void flip_cell(int i) { word_ ^= std::uint64_t{1} << (n_ - i); }

    std::string to_string() const {
        std::string s(static_cast<std::size_t>(n_), '0');
        for (int i = 1; i <= n_; ++i)
            if (cell(i)) s[static_cast<std::size_t>(i - 1)] = '1';
        return s;
    }

    friend bool operator==(const bit_state&, const bit_state&) = default;

private:
    std::uint64_t word_ = 0;
    int n_ = 1;
};

inline int hamming_distance(const bit_state& a, const bit_state& b) {
    return __builtin_popcountll(a.value() ^ b.value());
}

inline std::size_t hamming_distance(const bit_sequence& a, const bit_sequence& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("hamming_distance: length mismatch");
    std::size_t h = 0;
    for (std::size_t i = 0; i < a.size(); ++i) h += a[i] != b[i];
    return h;
}

// Appends the low `nbits` bits of `word` to `out`, most significant first.
inline void append_word_msb(bit_sequence& out, std::uint64_t word, int nbits) {
    for (int i = nbits - 1; i >= 0; --i)
        out.push_back(static_cast<std::uint8_t>((word >> i) & 1u));
}

// Pulls `count` bits (or less, see below) out of a block generator. A block
// generator exposes `block_bits()` and `next_block()`; the low block_bits()
// of each block are consumed most significant bit first, and the final
// block is truncated so exactly `count` bits are appended.
template <class Gen>
void append_bits(Gen& gen, bit_sequence& out, std::size_t count) {
    const int nb = gen.block_bits();
    while (count >= static_cast<std::size_t>(nb)) {
        append_word_msb(out, gen.next_block(), nb);
        count -= static_cast<std::size_t>(nb);
    }
    if (count > 0) {
        std::uint64_t w = gen.next_block();
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(static_cast<std::uint8_t>((w >> (nb - 1 - static_cast<int>(i))) & 1u));
    }
}

template <class Gen>
bit_sequence collect_bits(Gen& gen, std::size_t count) {
    bit_sequence out;
    out.reserve(count);
    append_bits(gen, out, count);
    return out;
}

// ASCII '0'/'1' stream, no separators. This is the format the NIST STS
// file reader consumes.
inline std::string to_ascii(const bit_sequence& bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

inline bit_sequence from_ascii(std::string_view s) {
    bit_sequence bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c == '0' || c == '1')
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        else if (c != '\n' && c != '\r' && c != ' ' && c != '\t')
            throw std::invalid_argument("bit stream: unexpected character");
    }
    return bits;
}

// Raw byte packing, most significant bit first; the tail of the last byte
// is zero-filled.
inline std::vector<std::uint8_t> pack_msb(const bit_sequence& bits) {
    std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) bytes[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    return bytes;
}

} // namespace ciprng
