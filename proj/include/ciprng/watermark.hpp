#pragma once

#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ciprng/bits.hpp"
#include "ciprng/ci.hpp"
#include "ciprng/image.hpp"

namespace ciprng {

// Secret key of the watermarking scheme: the full parameter set of one
// CI(xorshift, xorshift) generator with N = 64 cells.
struct watermark_key {
    int n_cells = 64;
    std::uint64_t x0 = 0;
    std::uint32_t seed_m = 0;
    std::uint32_t seed_b = 0;

    void validate() const {
        if (n_cells < 2 || n_cells > 64)
            throw std::invalid_argument("watermark_key: N must be in [2,64]");
        if (seed_m == 0 || seed_b == 0)
            throw std::invalid_argument("watermark_key: zero state");
    }

    ci_generator make_generator() const {
        validate();
        return seed_ci_generator(bit_state(x0, n_cells), seed_m, seed_b);
    }

    // text form: N=64 x0=<hex> sm=<u32> sb=<u32>
    std::string to_string() const {
        std::ostringstream os;
        os << "N=" << n_cells << " x0=" << std::hex << x0 << std::dec
           << " sm=" << seed_m << " sb=" << seed_b;
        return os.str();
    }

    static watermark_key from_string(const std::string& text) {
        const auto parse_value = [](const std::string& value, int base,
                                    const std::string& token) -> std::uint64_t {
            try {
                std::size_t pos = 0;
                const std::uint64_t v = std::stoull(value, &pos, base);
                if (pos != value.size() || value.empty() || value[0] == '-'
                    || value[0] == '+')
                    throw std::invalid_argument("");
                return v;
            } catch (const std::exception&) {
                throw std::invalid_argument("watermark_key: malformed value: " + token);
            }
        };
        watermark_key key;
        std::istringstream is(text);
        std::string token;
        bool have_n = false, have_x0 = false, have_sm = false, have_sb = false;
        while (is >> token) {
            const auto eq = token.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("watermark_key: malformed field: " + token);
            const std::string name = token.substr(0, eq);
            const std::string value = token.substr(eq + 1);
            if (name == "N") {
                const std::uint64_t v = parse_value(value, 10, token);
                if (v > 64)
                    throw std::invalid_argument("watermark_key: N out of range");
                key.n_cells = static_cast<int>(v);
                have_n = true;
            } else if (name == "x0") {
                key.x0 = parse_value(value, 16, token);
                have_x0 = true;
            } else if (name == "sm") {
                const std::uint64_t v = parse_value(value, 10, token);
                if (v > 0xFFFFFFFFull)
                    throw std::invalid_argument("watermark_key: sm out of range");
                key.seed_m = static_cast<std::uint32_t>(v);
                have_sm = true;
            } else if (name == "sb") {
                const std::uint64_t v = parse_value(value, 10, token);
                if (v > 0xFFFFFFFFull)
                    throw std::invalid_argument("watermark_key: sb out of range");
                key.seed_b = static_cast<std::uint32_t>(v);
                have_sb = true;
            } else {
                throw std::invalid_argument("watermark_key: unknown field: " + name);
            }
        }
        if (!have_n || !have_x0 || !have_sm || !have_sb)
            throw std::invalid_argument("watermark_key: need N, x0, sm and sb");
        key.validate();
        return key;
    }
};

// Key-driven index stream over [1, cells]: the generator's output
// bitstream is cut into consecutive ceil(log2(cells))-bit windows and each
// window is reduced mod cells. One stream instance drives a whole
// embed/extract pipeline, so the encryption strategy and the embedding
// positions never reuse bits.
class strategy_stream {
public:
    strategy_stream(const watermark_key& key, std::uint64_t cells)
        : gen_(key.make_generator()), cells_(cells) {
        if (cells < 1)
            throw std::invalid_argument("strategy_stream: empty cell range");
        window_bits_ = cells == 1 ? 1 : std::bit_width(cells - 1);
    }

    int window_bits() const { return window_bits_; }

    // 1-based index into the cell range
    std::uint64_t next_index() {
        std::uint64_t window = 0;
        for (int i = 0; i < window_bits_; ++i)
            window = (window << 1) | next_bit();
        return 1 + window % cells_;
    }

private:
    std::uint64_t next_bit() {
        if (avail_ == 0) {
            block_ = gen_.next_block();
            avail_ = gen_.block_bits();
        }
        --avail_;
        return (block_ >> avail_) & 1u;
    }

    ci_generator gen_;
    std::uint64_t cells_;
    int window_bits_ = 1;
    std::uint64_t block_ = 0;
    int avail_ = 0;
};

// One step of the position recurrence built on the dyadic doubling map:
// U^{n+1} = (S^{n+1} + 2 U^n + n) mod modulus, with U^0 = S^0.
inline std::uint64_t u_sequence_step(std::uint64_t u_prev, std::uint64_t s_next,
                                     std::uint64_t n, std::uint64_t modulus) {
    return (s_next + 2 * u_prev + n) % modulus;
}

// Number of encryption iterations: twice the watermark size, so every
// cell's visit parity is key-dependent.
inline std::uint64_t encryption_iterations(std::uint64_t cells) { return 2 * cells; }

// Parity mask of a chaotic-iteration run under the vectorial negation:
// bit i ends up 1 exactly when cell i+1 is visited an odd number of times.
template <class IndexSource>
bit_sequence visit_parity_mask(IndexSource& strategy, std::size_t cells,
                               std::uint64_t iterations) {
    bit_sequence mask(cells, 0);
    for (std::uint64_t k = 0; k < iterations; ++k) {
        const std::uint64_t cell = strategy.next_index();
        mask[static_cast<std::size_t>(cell - 1)] ^= 1u;
    }
    return mask;
}

// Encryption and decryption are both plain XOR with the key-determined
// parity mask.
template <class IndexSource>
bit_sequence encryption_mask(IndexSource& strategy, std::size_t cells) {
    return visit_parity_mask(strategy, cells, encryption_iterations(cells));
}

inline bit_sequence encrypt_watermark(const bit_matrix& w, const watermark_key& key) {
    strategy_stream strategy(key, w.bit_count());
    const bit_sequence mask = encryption_mask(strategy, w.bit_count());
    bit_sequence out(w.bit_count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = w.bits[i] ^ mask[i];
    return out;
}

// The ordered list of `count` distinct positions in [0, modulus) visited
// by the U recurrence; already-used candidates advance the recurrence
// without being emitted. Embed and extract run this identically, which is
// what makes extraction blind.
template <class IndexSource>
std::vector<std::uint64_t> embedding_positions(IndexSource& strategy,
                                               std::size_t count,
                                               std::uint64_t modulus) {
    if (count > modulus)
        throw std::invalid_argument("embedding_positions: count exceeds modulus");
    std::vector<bool> used(modulus, false);
    std::vector<std::uint64_t> positions;
    positions.reserve(count);
    std::uint64_t u = strategy.next_index() % modulus; // U^0 = S^0
    std::uint64_t n = 0;
    while (positions.size() < count) {
        if (!used[u]) {
            used[u] = true;
            positions.push_back(u);
        }
        u = u_sequence_step(u, strategy.next_index(), n, modulus);
        ++n;
    }
    return positions;
}

namespace detail {

// The carrier's low bit plane L: the three last bits of each pixel,
// most significant of the three first.
inline bit_sequence extract_low_plane(const gray_image& img) {
    bit_sequence plane;
    plane.reserve(3 * img.pixel_count());
    for (auto p : img.pixels) {
        plane.push_back((p >> 2) & 1u);
        plane.push_back((p >> 1) & 1u);
        plane.push_back(p & 1u);
    }
    return plane;
}

inline void fold_low_plane(gray_image& img, const bit_sequence& plane) {
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const std::uint8_t low = static_cast<std::uint8_t>(
            (plane[3 * i] << 2) | (plane[3 * i + 1] << 1) | plane[3 * i + 2]);
        img.pixels[i] = static_cast<std::uint8_t>((img.pixels[i] & 0xF8u) | low);
    }
}

} // namespace detail

// Embeds the encrypted watermark into the carrier's three low bit planes
// by substitution at the key-determined positions. Only the used
// positions change, so the per-pixel error is at most 7.
inline gray_image embed(const gray_image& carrier, const bit_matrix& w,
                        const watermark_key& key) {
    key.validate();
    const std::size_t wsize = w.bit_count();
    const std::uint64_t plane_len = 3 * static_cast<std::uint64_t>(carrier.pixel_count());
    if (plane_len < wsize)
        throw std::invalid_argument("embed: carrier too small for watermark");

    strategy_stream strategy(key, wsize);
    const bit_sequence mask = encryption_mask(strategy, wsize);
    const auto positions = embedding_positions(strategy, wsize, plane_len);

    bit_sequence plane = detail::extract_low_plane(carrier);
    for (std::size_t i = 0; i < wsize; ++i)
        plane[static_cast<std::size_t>(positions[i])] = w.bits[i] ^ mask[i];

    gray_image out = carrier;
    detail::fold_low_plane(out, plane);
    return out;
}

// Blind extraction: regenerates the mask and position sequence from the
// key alone, reads the embedded bits back and cancels the encryption
// parity.
inline bit_matrix extract(const gray_image& watermarked, const watermark_key& key,
                          int w_width, int w_height) {
    key.validate();
    if (w_width <= 0 || w_height <= 0)
        throw std::invalid_argument("extract: non-positive watermark dimensions");
    const std::size_t wsize =
        static_cast<std::size_t>(w_width) * static_cast<std::size_t>(w_height);
    const std::uint64_t plane_len =
        3 * static_cast<std::uint64_t>(watermarked.pixel_count());
    if (plane_len < wsize)
        throw std::invalid_argument("extract: image too small for watermark dimensions");

    strategy_stream strategy(key, wsize);
    const bit_sequence mask = encryption_mask(strategy, wsize);
    const auto positions = embedding_positions(strategy, wsize, plane_len);

    const bit_sequence plane = detail::extract_low_plane(watermarked);
    bit_matrix out;
    out.width = w_width;
    out.height = w_height;
    out.bits.resize(wsize);
    for (std::size_t i = 0; i < wsize; ++i)
        out.bits[i] = plane[static_cast<std::size_t>(positions[i])] ^ mask[i];
    return out;
}

} // namespace ciprng
