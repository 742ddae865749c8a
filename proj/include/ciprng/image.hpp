#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ciprng {

struct gray_image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // row-major, one byte per pixel

    std::size_t pixel_count() const { return pixels.size(); }
};

struct bit_matrix {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits; // row-major, 0 or 1

    std::size_t bit_count() const { return bits.size(); }
};

struct netpbm_error : std::runtime_error {
    std::size_t offset;
    netpbm_error(const std::string& what, std::size_t offset_)
        : std::runtime_error(what + " (byte offset " + std::to_string(offset_) + ")"),
          offset(offset_) {}
};

namespace detail {

// Token scanner over a fully loaded netpbm header; keeps the byte offset
// for error reporting. Comments run from '#' to end of line.
class pnm_scanner {
public:
    explicit pnm_scanner(std::string_view data) : data_(data) {}

    std::size_t offset() const { return pos_; }
    bool at_end() const { return pos_ >= data_.size(); }

    void skip_space_and_comments() {
        while (pos_ < data_.size()) {
            const char c = data_[pos_];
            if (c == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view magic() {
        if (data_.size() < 2)
            throw netpbm_error("truncated magic", data_.size());
        pos_ = 2;
        return data_.substr(0, 2);
    }

    long next_int(const char* what) {
        skip_space_and_comments();
        if (at_end())
            throw netpbm_error(std::string("missing ") + what, pos_);
        if (data_[pos_] < '0' || data_[pos_] > '9')
            throw netpbm_error(std::string("malformed ") + what, pos_);
        long v = 0;
        while (pos_ < data_.size() && data_[pos_] >= '0' && data_[pos_] <= '9') {
            v = v * 10 + (data_[pos_] - '0');
            if (v > 1'000'000'000L)
                throw netpbm_error(std::string("oversized ") + what, pos_);
            ++pos_;
        }
        return v;
    }

    // the single whitespace byte separating header from binary raster
    void expect_raster_separator() {
        if (at_end())
            throw netpbm_error("missing raster", pos_);
        const char c = data_[pos_];
        if (c != ' ' && c != '\t' && c != '\r' && c != '\n')
            throw netpbm_error("missing whitespace before raster", pos_);
        ++pos_;
    }

    std::string_view rest() const { return data_.substr(pos_); }

private:
    std::string_view data_;
    std::size_t pos_ = 0;
};

inline std::string load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::string data((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return data;
}

} // namespace detail

// Grayscale carrier: binary P5 or plain P2, maxval must be 255.
inline gray_image parse_pgm(std::string_view data) {
    detail::pnm_scanner sc(data);
    const auto magic = sc.magic();
    const bool binary = magic == "P5";
    if (!binary && magic != "P2")
        throw netpbm_error("not a PGM file", 0);
    const long w = sc.next_int("width");
    const long h = sc.next_int("height");
    const long maxval = sc.next_int("maxval");
    if (w <= 0 || h <= 0)
        throw netpbm_error("non-positive dimensions", sc.offset());
    if (w > 65536 || h > 65536)
        throw netpbm_error("oversized dimensions", sc.offset());
    if (maxval != 255)
        throw netpbm_error("unsupported maxval (must be 255)", sc.offset());

    gray_image img;
    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    const std::size_t count = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    img.pixels.reserve(count);

    if (binary) {
        sc.expect_raster_separator();
        const auto raster = sc.rest();
        if (raster.size() < count)
            throw netpbm_error("truncated raster", sc.offset() + raster.size());
        for (std::size_t i = 0; i < count; ++i)
            img.pixels.push_back(static_cast<std::uint8_t>(raster[i]));
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const long v = sc.next_int("pixel");
            if (v > maxval)
                throw netpbm_error("pixel exceeds maxval", sc.offset());
            img.pixels.push_back(static_cast<std::uint8_t>(v));
        }
    }
    return img;
}

// Bitmap watermark: binary P4 or plain P1. Netpbm 1 = black; the bit is
// stored as-is.
inline bit_matrix parse_pbm(std::string_view data) {
    detail::pnm_scanner sc(data);
    const auto magic = sc.magic();
    const bool binary = magic == "P4";
    if (!binary && magic != "P1")
        throw netpbm_error("not a PBM file", 0);
    const long w = sc.next_int("width");
    const long h = sc.next_int("height");
    if (w <= 0 || h <= 0)
        throw netpbm_error("non-positive dimensions", sc.offset());
    if (w > 65536 || h > 65536)
        throw netpbm_error("oversized dimensions", sc.offset());

    bit_matrix m;
    m.width = static_cast<int>(w);
    m.height = static_cast<int>(h);
    const std::size_t count = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    m.bits.reserve(count);

    if (binary) {
        sc.expect_raster_separator();
        const auto raster = sc.rest();
        const std::size_t row_bytes = (static_cast<std::size_t>(w) + 7) / 8;
        if (raster.size() < row_bytes * static_cast<std::size_t>(h))
            throw netpbm_error("truncated raster", sc.offset() + raster.size());
        for (long y = 0; y < h; ++y)
            for (long x = 0; x < w; ++x) {
                const std::uint8_t byte = static_cast<std::uint8_t>(
                    raster[static_cast<std::size_t>(y) * row_bytes
                           + static_cast<std::size_t>(x) / 8]);
                m.bits.push_back((byte >> (7 - x % 8)) & 1u);
            }
    } else {
        std::size_t got = 0;
        std::size_t pos = sc.offset();
        while (got < count) {
            if (pos >= data.size())
                throw netpbm_error("truncated bitmap", pos);
            const char c = data[pos];
            if (c == '0' || c == '1') {
                m.bits.push_back(static_cast<std::uint8_t>(c - '0'));
                ++got;
                ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos;
            } else if (c == '#') {
                while (pos < data.size() && data[pos] != '\n') ++pos;
            } else {
                throw netpbm_error("malformed bitmap digit", pos);
            }
        }
    }
    return m;
}

inline gray_image read_pgm(const std::string& path) {
    return parse_pgm(detail::load_file(path));
}

inline bit_matrix read_pbm(const std::string& path) {
    return parse_pbm(detail::load_file(path));
}

inline void write_pgm(std::ostream& os, const gray_image& img) {
    os << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    os.write(reinterpret_cast<const char*>(img.pixels.data()),
             static_cast<std::streamsize>(img.pixels.size()));
}

inline void write_pbm(std::ostream& os, const bit_matrix& m) {
    os << "P4\n" << m.width << ' ' << m.height << '\n';
    const std::size_t row_bytes = (static_cast<std::size_t>(m.width) + 7) / 8;
    std::vector<std::uint8_t> row(row_bytes);
    for (int y = 0; y < m.height; ++y) {
        std::fill(row.begin(), row.end(), 0);
        for (int x = 0; x < m.width; ++x)
            if (m.bits[static_cast<std::size_t>(y) * static_cast<std::size_t>(m.width)
                       + static_cast<std::size_t>(x)])
                row[static_cast<std::size_t>(x) / 8] |=
                    static_cast<std::uint8_t>(0x80u >> (x % 8));
        os.write(reinterpret_cast<const char*>(row.data()),
                 static_cast<std::streamsize>(row_bytes));
    }
}

inline void write_pgm(const std::string& path, const gray_image& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    write_pgm(out, img);
}

inline void write_pbm(const std::string& path, const bit_matrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    write_pbm(out, m);
}

} // namespace ciprng
