#include "ciprng/watermark.hpp"

#include <cstdlib>
#include <random>
#include <vector>

#include "gtest/gtest.h"

using ciprng::bit_matrix;
using ciprng::embed;
using ciprng::embedding_positions;
using ciprng::encrypt_watermark;
using ciprng::extract;
using ciprng::gray_image;
using ciprng::strategy_stream;
using ciprng::u_sequence_step;
using ciprng::watermark_key;

namespace {

watermark_key test_key(std::uint64_t x0 = 0x0123456789ABCDEFull,
                       std::uint32_t sm = 1111u, std::uint32_t sb = 2222u) {
    return watermark_key{64, x0, sm, sb};
}

gray_image random_image(std::mt19937& rng, int w, int h) {
    gray_image img;
    img.width = w;
    img.height = h;
    img.pixels.resize(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng());
    return img;
}

bit_matrix random_matrix(std::mt19937& rng, int w, int h) {
    bit_matrix m;
    m.width = w;
    m.height = h;
    m.bits.resize(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
    for (auto& b : m.bits) b = static_cast<std::uint8_t>(rng() & 1);
    return m;
}

// scripted index source standing in for strategy_stream
struct scripted_indices {
    std::vector<std::uint64_t> values;
    std::size_t pos = 0;
    std::uint64_t next_index() { return values.at(pos++); }
};

} // namespace

TEST(USequence, RecurrenceExamples) {
    EXPECT_EQ(u_sequence_step(5, 3, 0, 196608), 13u);
    const std::uint64_t mod = 196608;
    EXPECT_EQ(u_sequence_step(mod - 1, 1, 0, mod), mod - 1); // (2*mod - 1) mod mod
    EXPECT_EQ(u_sequence_step(10, 7, 5, 100), 32u);
}

TEST(USequence, FirstCandidateIsFirstStrategyValue) {
    scripted_indices src{{5, 1, 1, 1, 1, 1, 1, 1}};
    const auto positions = embedding_positions(src, 3, 100);
    EXPECT_EQ(positions[0], 5u); // U^0 = S^0
}

TEST(USequence, SkipsUsedPositionsButKeepsAdvancing) {
    // modulus 4 forces collisions quickly; all 4 positions must come out
    scripted_indices src{std::vector<std::uint64_t>(64, 1)};
    const auto positions = embedding_positions(src, 4, 4);
    std::vector<bool> seen(4, false);
    for (auto p : positions) {
        EXPECT_LT(p, 4u);
        EXPECT_FALSE(seen[p]);
        seen[p] = true;
    }
}

TEST(Encryption, SameKeyTwiceIsIdentity) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto w = random_matrix(rng, 16, 8);
        const auto key = test_key(rng(), static_cast<std::uint32_t>(rng() | 1u),
                                  static_cast<std::uint32_t>(rng() | 1u));
        bit_matrix enc;
        enc.width = w.width;
        enc.height = w.height;
        enc.bits = encrypt_watermark(w, key);
        const auto dec = encrypt_watermark(enc, key);
        EXPECT_EQ(dec, w.bits);
    }
}

TEST(Encryption, SingleVisitFlipsSingleCell) {
    scripted_indices once{{1}};
    EXPECT_EQ(ciprng::visit_parity_mask(once, 4, 1),
              (ciprng::bit_sequence{1, 0, 0, 0}));

    scripted_indices mixed{{1, 3, 3, 2, 2, 4, 4}};
    EXPECT_EQ(ciprng::visit_parity_mask(mixed, 4, 7),
              (ciprng::bit_sequence{1, 0, 0, 0}));
}

TEST(Encryption, KeyDiffusion) {
    std::mt19937 rng(11);
    int trials = 0;
    double sum = 0.0;
    for (int t = 0; t < 20; ++t) {
        const auto w = random_matrix(rng, 64, 64);
        const std::uint32_t sm = static_cast<std::uint32_t>(rng() | 1u);
        const std::uint32_t sb = static_cast<std::uint32_t>(rng() | 1u);
        const auto k1 = test_key(rng(), sm, sb);
        auto k2 = k1;
        k2.seed_m ^= 1u << (rng() % 32);
        if (k2.seed_m == 0) k2.seed_m = k1.seed_m ^ 2u;
        const auto e1 = encrypt_watermark(w, k1);
        const auto e2 = encrypt_watermark(w, k2);
        const double ratio =
            static_cast<double>(ciprng::hamming_distance(e1, e2)) / e1.size();
        EXPECT_GT(ratio, 0.40) << "trial " << t;
        EXPECT_LT(ratio, 0.60) << "trial " << t;
        sum += ratio;
        ++trials;
    }
    EXPECT_NEAR(sum / trials, 0.5, 0.03);
}

TEST(Watermark, RoundTrip) {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 5; ++trial) {
        const auto carrier = random_image(rng, 128, 128);
        const auto w = random_matrix(rng, 32, 32);
        const auto key = test_key(rng(), static_cast<std::uint32_t>(rng() | 1u),
                                  static_cast<std::uint32_t>(rng() | 1u));
        const auto marked = embed(carrier, w, key);
        const auto recovered = extract(marked, key, w.width, w.height);
        EXPECT_EQ(recovered.bits, w.bits);
    }
}

TEST(Watermark, PerPixelChangeBounded) {
    std::mt19937 rng(31);
    const auto carrier = random_image(rng, 64, 64);
    const auto w = random_matrix(rng, 32, 32);
    const auto marked = embed(carrier, w, test_key());
    for (std::size_t i = 0; i < carrier.pixels.size(); ++i)
        EXPECT_LE(std::abs(static_cast<int>(marked.pixels[i])
                           - static_cast<int>(carrier.pixels[i])),
                  7);
}

TEST(Watermark, PsnrStaysHigh) {
    // 64x64 watermark in a 256x256 carrier: at most 4096 of 196608 plane
    // bits change, so the PSNR bound is comfortably above 37 dB
    std::mt19937 rng(59);
    const auto carrier = random_image(rng, 256, 256);
    const auto w = random_matrix(rng, 64, 64);
    const auto marked = embed(carrier, w, test_key());
    double mse = 0.0;
    for (std::size_t i = 0; i < carrier.pixels.size(); ++i) {
        const double d = static_cast<double>(marked.pixels[i])
                         - static_cast<double>(carrier.pixels[i]);
        mse += d * d;
    }
    mse /= static_cast<double>(carrier.pixels.size());
    const double psnr = 10.0 * std::log10(255.0 * 255.0 / mse);
    EXPECT_GT(psnr, 37.0) << "psnr=" << psnr;
}

TEST(Watermark, PositionSequenceDependsOnlyOnKey) {
    const auto key = test_key();
    const auto make_positions = [&] {
        strategy_stream strategy(key, 1024);
        ciprng::encryption_mask(strategy, 1024);
        return embedding_positions(strategy, 1024, 196608);
    };
    EXPECT_EQ(make_positions(), make_positions());
}

TEST(Watermark, OnlyUsedPositionsChange) {
    std::mt19937 rng(37);
    const auto carrier = random_image(rng, 64, 64);
    bit_matrix zeros, ones;
    zeros.width = ones.width = 32;
    zeros.height = ones.height = 32;
    zeros.bits.assign(1024, 0);
    ones.bits.assign(1024, 1);
    const auto key = test_key();
    const auto a = embed(carrier, zeros, key);
    const auto b = embed(carrier, ones, key);

    strategy_stream strategy(key, 1024);
    ciprng::encryption_mask(strategy, 1024); // consume the encryption draws
    const auto positions =
        embedding_positions(strategy, 1024, 3 * carrier.pixel_count());
    std::vector<bool> used_pixel(carrier.pixels.size(), false);
    for (auto p : positions) used_pixel[static_cast<std::size_t>(p / 3)] = true;

    for (std::size_t i = 0; i < carrier.pixels.size(); ++i)
        if (!used_pixel[i]) {
            EXPECT_EQ(a.pixels[i], b.pixels[i]);
            EXPECT_EQ(a.pixels[i], carrier.pixels[i]);
        }
    EXPECT_NE(a.pixels, b.pixels);
}

TEST(Watermark, TamperLocality) {
    std::mt19937 rng(41);
    const auto carrier = random_image(rng, 100, 80);
    const auto w = random_matrix(rng, 40, 20);
    const auto key = test_key(0xFEDCBA9876543210ull, 777u, 888u);
    auto marked = embed(carrier, w, key);

    strategy_stream strategy(key, w.bit_count());
    ciprng::encryption_mask(strategy, w.bit_count());
    const auto positions =
        embedding_positions(strategy, w.bit_count(), 3 * carrier.pixel_count());

    // flip t used low-plane bits -> exactly t wrong extracted bits
    const int t = 5;
    for (int i = 0; i < t; ++i) {
        const auto pos = positions[static_cast<std::size_t>(100 + 37 * i)];
        const std::size_t pixel = static_cast<std::size_t>(pos / 3);
        const int bit = 2 - static_cast<int>(pos % 3);
        marked.pixels[pixel] = static_cast<std::uint8_t>(
            marked.pixels[pixel] ^ (1u << bit));
    }
    const auto tampered = extract(marked, key, w.width, w.height);
    EXPECT_EQ(ciprng::hamming_distance(tampered.bits, w.bits),
              static_cast<std::size_t>(t));
}

TEST(Watermark, UntouchedPlanesDoNotAffectExtraction) {
    std::mt19937 rng(43);
    const auto carrier = random_image(rng, 64, 64);
    const auto w = random_matrix(rng, 16, 16);
    const auto key = test_key();
    auto marked = embed(carrier, w, key);
    // flipping high bits never reaches the low plane
    marked.pixels[10] ^= 0x80u;
    marked.pixels[500] ^= 0x40u;
    const auto recovered = extract(marked, key, w.width, w.height);
    EXPECT_EQ(recovered.bits, w.bits);
}

TEST(Watermark, WrongKeyScrambles) {
    std::mt19937 rng(47);
    const auto carrier = random_image(rng, 128, 128);
    const auto w = random_matrix(rng, 32, 32);
    const auto key = test_key();
    auto wrong = key;
    wrong.seed_b ^= 4u;
    const auto marked = embed(carrier, w, key);
    const auto recovered = extract(marked, wrong, w.width, w.height);
    const double ratio =
        static_cast<double>(ciprng::hamming_distance(recovered.bits, w.bits))
        / w.bits.size();
    EXPECT_GT(ratio, 0.40);
    EXPECT_LT(ratio, 0.60);
}

TEST(Watermark, CapacityEnforced) {
    std::mt19937 rng(53);
    const auto carrier = random_image(rng, 4, 4); // plane of 48 bits
    const auto w = random_matrix(rng, 7, 7);      // needs 49
    EXPECT_THROW(embed(carrier, w, test_key()), std::invalid_argument);
    EXPECT_THROW(extract(carrier, test_key(), 7, 7), std::invalid_argument);
}

TEST(WatermarkKey, TextRoundTripAndValidation) {
    const auto key = test_key(0xDEADBEEF12345678ull, 10u, 20u);
    const auto parsed = watermark_key::from_string(key.to_string());
    EXPECT_EQ(parsed.n_cells, key.n_cells);
    EXPECT_EQ(parsed.x0, key.x0);
    EXPECT_EQ(parsed.seed_m, key.seed_m);
    EXPECT_EQ(parsed.seed_b, key.seed_b);

    EXPECT_THROW(watermark_key::from_string("N=64 x0=ff sm=0 sb=1"),
                 std::invalid_argument);
    EXPECT_THROW(watermark_key::from_string("x0=ff sm=1 sb=1"), std::invalid_argument);
    EXPECT_THROW(watermark_key::from_string("N=64 x0=zz sm=1 sb=1"),
                 std::invalid_argument);
    EXPECT_THROW(watermark_key::from_string("bogus"), std::invalid_argument);
    EXPECT_THROW(watermark_key::from_string("N=64 x0=ff sm=-1 sb=1"),
                 std::invalid_argument);
    EXPECT_THROW(watermark_key::from_string("N=64x x0=ff sm=1 sb=1"),
                 std::invalid_argument);
    EXPECT_THROW(watermark_key::from_string("N=64 x0=ff sm=99999999999 sb=1"),
                 std::invalid_argument);
}
