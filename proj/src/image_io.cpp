#include "flsim/image_io.hpp"

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <zlib.h>

namespace flsim {

void write_pgm(const std::string& path, const DisplayImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_pgm: cannot open '" + path + "'");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) throw std::runtime_error("write_pgm: write failed for '" + path + "'");
}

namespace {

/// Next whitespace-separated token, skipping '#' comments to end of line.
std::string next_pgm_token(std::istream& in) {
    std::string tok;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != EOF && !std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    return tok;
}

}  // namespace

DisplayImage read_pgm(const std::string& path, ImageGeometry geometry) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_pgm: cannot open '" + path + "'");
    if (next_pgm_token(in) != "P5")
        throw std::runtime_error("read_pgm: '" + path + "' is not a binary (P5) PGM");
    DisplayImage img;
    img.geometry = geometry;
    try {
        img.width = std::stoi(next_pgm_token(in));
        img.height = std::stoi(next_pgm_token(in));
        const int maxval = std::stoi(next_pgm_token(in));
        if (maxval < 1 || maxval > 255)
            throw std::runtime_error("maxval " + std::to_string(maxval) + " unsupported");
    } catch (const std::exception& e) {
        throw std::runtime_error("read_pgm: bad header in '" + path + "': " + e.what());
    }
    if (img.width < 1 || img.height < 1)
        throw std::runtime_error("read_pgm: bad dimensions in '" + path + "'");
    // The maxval token is terminated by exactly one whitespace byte,
    // already consumed by the tokenizer.
    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw std::runtime_error("read_pgm: truncated pixel data in '" + path + "'");
    return img;
}

namespace {

void append_u32_be(std::vector<unsigned char>& out, std::uint32_t v) {
    out.push_back(static_cast<unsigned char>(v >> 24));
    out.push_back(static_cast<unsigned char>(v >> 16));
    out.push_back(static_cast<unsigned char>(v >> 8));
    out.push_back(static_cast<unsigned char>(v));
}

void append_chunk(std::vector<unsigned char>& out, const char type[4],
                  const std::vector<unsigned char>& data) {
    append_u32_be(out, static_cast<std::uint32_t>(data.size()));
    const std::size_t crc_start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    const uLong crc = crc32(crc32(0L, Z_NULL, 0), out.data() + crc_start,
                            static_cast<uInt>(4 + data.size()));
    append_u32_be(out, static_cast<std::uint32_t>(crc));
}

}  // namespace

void write_png(const std::string& path, const DisplayImage& img) {
    // One filter byte (0 = none) per scanline, then the raw row.
    std::vector<unsigned char> raw;
    raw.reserve(static_cast<std::size_t>(img.height) * (img.width + 1));
    for (int row = 0; row < img.height; ++row) {
        raw.push_back(0);
        const unsigned char* src = img.pixels.data()
            + static_cast<std::size_t>(row) * img.width;
        raw.insert(raw.end(), src, src + img.width);
    }

    uLongf compressed_size = compressBound(static_cast<uLong>(raw.size()));
    std::vector<unsigned char> compressed(compressed_size);
    if (compress2(compressed.data(), &compressed_size, raw.data(),
                  static_cast<uLong>(raw.size()), Z_BEST_COMPRESSION) != Z_OK)
        throw std::runtime_error("write_png: zlib compression failed");
    compressed.resize(compressed_size);

    std::vector<unsigned char> png = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    std::vector<unsigned char> ihdr;
    append_u32_be(ihdr, static_cast<std::uint32_t>(img.width));
    append_u32_be(ihdr, static_cast<std::uint32_t>(img.height));
    ihdr.push_back(8);   // bit depth
    ihdr.push_back(0);   // color type: grayscale
    ihdr.push_back(0);   // compression
    ihdr.push_back(0);   // filter
    ihdr.push_back(0);   // interlace
    append_chunk(png, "IHDR", ihdr);
    append_chunk(png, "IDAT", compressed);
    append_chunk(png, "IEND", {});

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_png: cannot open '" + path + "'");
    out.write(reinterpret_cast<const char*>(png.data()),
              static_cast<std::streamsize>(png.size()));
    if (!out) throw std::runtime_error("write_png: write failed for '" + path + "'");
}

void write_polar_csv(const std::string& path, const PolarImage& img) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_polar_csv: cannot open '" + path + "'");
    char buf[32];
    for (int p = 0; p < img.n_beams(); ++p) {
        for (int d = 0; d < img.n_bins(); ++d) {
            std::snprintf(buf, sizeof(buf), "%.17g", img.at(p, d));
            if (d) out << ',';
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_polar_csv: write failed for '" + path + "'");
}

}  // namespace flsim
