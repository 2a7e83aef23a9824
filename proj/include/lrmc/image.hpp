#pragma once

// 8-bit raster image I/O in the binary netpbm formats: PGM (P5) for
// grayscale, PPM (P6) for RGB. Channels are carried as real-valued matrices
// in [0, 255] so solver output can be scored before quantization.

#include "spectral.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lrmc {

struct Image {
    std::vector<Matrix> channels;  // 1 (gray) or 3 (RGB), equal dimensions
    double peak = 255.0;

    int rows() const { return channels.empty() ? 0 : static_cast<int>(channels[0].rows()); }
    int cols() const { return channels.empty() ? 0 : static_cast<int>(channels[0].cols()); }
    bool gray() const { return channels.size() == 1; }
};

namespace detail {

// Reads one whitespace-delimited header token, skipping '#' comment lines.
inline std::string pnm_token(std::istream& in, const std::string& path) {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {}
            continue;
        }
        if (std::isspace(ch)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(ch));
    }
    if (tok.empty())
        throw std::runtime_error("load_image: truncated header in '" + path + "'");
    return tok;
}

inline int pnm_number(std::istream& in, const std::string& path) {
    const std::string tok = pnm_token(in, path);
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("load_image: bad header field '" + tok + "' in '" + path + "'");
    }
}

}  // namespace detail

inline Image load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("load_image: cannot open '" + path + "'");
    const std::string magic = detail::pnm_token(in, path);
    if (magic != "P5" && magic != "P6")
        throw std::runtime_error("load_image: '" + path + "' is not a binary PGM/PPM file");
    const int cols = detail::pnm_number(in, path);
    const int rows = detail::pnm_number(in, path);
    const int maxval = detail::pnm_number(in, path);
    if (rows <= 0 || cols <= 0 || maxval <= 0 || maxval > 255)
        throw std::runtime_error("load_image: unsupported dimensions or depth in '" + path + "'");
    // pnm_token consumed the single whitespace byte that ends the header, so
    // the stream now sits on the first raster byte.

    const int nch = magic == "P5" ? 1 : 3;
    std::vector<unsigned char> raw(static_cast<std::size_t>(rows) * cols * nch);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size())
        throw std::runtime_error("load_image: truncated pixel data in '" + path + "'");

    Image img;
    img.channels.assign(nch, Matrix(rows, cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            for (int c = 0; c < nch; ++c)
                img.channels[c](i, j) =
                    raw[(static_cast<std::size_t>(i) * cols + j) * nch + c];
    return img;
}

// Round half away from zero, then clamp to the 8-bit range.
inline Matrix quantize_8bit(const Matrix& m) {
    return m.unaryExpr([](double v) {
        return std::min(255.0, std::max(0.0, std::round(v)));
    });
}

inline void save_image(const std::string& path, const Image& img) {
    if (img.channels.size() != 1 && img.channels.size() != 3)
        throw std::invalid_argument("save_image: expected 1 or 3 channels");
    for (const auto& ch : img.channels)
        if (ch.rows() != img.rows() || ch.cols() != img.cols())
            throw std::invalid_argument("save_image: channel dimensions disagree");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("save_image: cannot open '" + path + "' for writing");
    const int nch = static_cast<int>(img.channels.size());
    out << (nch == 1 ? "P5" : "P6") << "\n"
        << img.cols() << " " << img.rows() << "\n255\n";
    std::vector<unsigned char> raw(static_cast<std::size_t>(img.rows()) * img.cols() * nch);
    for (int i = 0; i < img.rows(); ++i)
        for (int j = 0; j < img.cols(); ++j)
            for (int c = 0; c < nch; ++c) {
                const double v = std::min(255.0, std::max(0.0, std::round(img.channels[c](i, j))));
                raw[(static_cast<std::size_t>(i) * img.cols() + j) * nch + c] =
                    static_cast<unsigned char>(v);
            }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out)
        throw std::runtime_error("save_image: write failed for '" + path + "'");
}

}  // namespace lrmc
