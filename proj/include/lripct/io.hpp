#ifndef LRIPCT_IO_HPP
#define LRIPCT_IO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "projector.hpp"

namespace lripct {

enum class ArrayKind : std::uint8_t { image = 0, sinogram = 1 };

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t v)
{
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xFF),
                          static_cast<unsigned char>((v >> 8) & 0xFF),
                          static_cast<unsigned char>((v >> 16) & 0xFF),
                          static_cast<unsigned char>((v >> 24) & 0xFF)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

inline void put_f32(std::ostream& os, float v)
{
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(os, bits);
}

} // namespace detail

// Binary array file: "LRIP", u32 version (1), kind byte, u32 rows,
// u32 cols, then rows*cols little-endian binary32 values row-major.
inline void write_array(const std::string& path, ArrayKind kind, int rows, int cols,
                        const std::vector<double>& values)
{
    if (rows <= 0 || cols <= 0 || values.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("write_array: inconsistent dimensions");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("write_array: non-finite value");

    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("write_array: cannot open " + path);
    os.write("LRIP", 4);
    detail::put_u32(os, 1);
    char kb = static_cast<char>(kind);
    os.write(&kb, 1);
    detail::put_u32(os, static_cast<std::uint32_t>(rows));
    detail::put_u32(os, static_cast<std::uint32_t>(cols));
    for (double v : values)
        detail::put_f32(os, static_cast<float>(v));
    if (!os)
        throw std::runtime_error("write_array: write failed for " + path);
}

struct StoredArray {
    ArrayKind kind;
    int rows;
    int cols;
    std::vector<double> values;

    Image as_image() const
    {
        Image img(rows, cols);
        img.values() = values;
        return img;
    }

    Sinogram as_sinogram() const
    {
        Sinogram s(rows, cols);
        s.values() = values;
        return s;
    }
};

inline StoredArray read_array(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw format_error("read_array: cannot open " + path, 0);

    auto need = [&](char* buf, std::size_t count, std::size_t offset) {
        is.read(buf, static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(is.gcount()) != count)
            throw format_error("read_array: truncated file, expected " + std::to_string(count)
                                   + " more bytes",
                               offset);
    };
    auto get_u32 = [&](std::size_t offset) {
        unsigned char b[4];
        need(reinterpret_cast<char*>(b), 4, offset);
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8)
            | (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    };

    char magic[4];
    need(magic, 4, 0);
    if (std::memcmp(magic, "LRIP", 4) != 0)
        throw format_error("read_array: bad magic", 0);
    std::uint32_t version = get_u32(4);
    if (version != 1)
        throw format_error("read_array: unsupported version " + std::to_string(version), 4);
    char kb;
    need(&kb, 1, 8);
    if (kb != 0 && kb != 1)
        throw format_error("read_array: unknown kind byte", 8);

    StoredArray out;
    out.kind = static_cast<ArrayKind>(kb);
    out.rows = static_cast<int>(get_u32(9));
    out.cols = static_cast<int>(get_u32(13));
    if (out.rows <= 0 || out.cols <= 0)
        throw format_error("read_array: bad dimensions", 9);

    const std::size_t count = static_cast<std::size_t>(out.rows) * out.cols;
    out.values.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint32_t bits = get_u32(17 + 4 * i);
        float f;
        std::memcpy(&f, &bits, 4);
        out.values[i] = f;
    }
    return out;
}

// 8-bit binary PGM with linear windowing, round-half-up.
inline void export_pgm(const Image& img, const std::string& path, double lo, double hi)
{
    if (lo >= hi)
        throw std::invalid_argument("export_pgm: window lo must be < hi");
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("export_pgm: cannot open " + path);
    os << "P5\n" << img.cols() << ' ' << img.rows() << "\n255\n";
    for (int i = img.rows() - 1; i >= 0; --i)
        for (int j = 0; j < img.cols(); ++j) {
            double t = std::clamp((img(i, j) - lo) / (hi - lo), 0.0, 1.0);
            unsigned char b = static_cast<unsigned char>(std::floor(255.0 * t + 0.5));
            os.write(reinterpret_cast<const char*>(&b), 1);
        }
}

// Text triplet export: "rows cols nnz" header then one entry per line,
// 17 significant digits.
inline void write_triplets(const SystemMatrix& sm, std::ostream& os)
{
    os.precision(17);
    os << sm.n_rows << ' ' << sm.n_cols << ' ' << sm.entries.size() << '\n';
    for (const auto& t : sm.entries)
        os << t.row << ' ' << t.col << ' ' << t.value << '\n';
}

} // namespace lripct

#endif
