#include "disguise/image.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "disguise/errors.hpp"

namespace disguise {

namespace {

[[noreturn]] void fail_at(std::size_t offset, const std::string& what) {
    throw ParseError("pgm parse error at offset " + std::to_string(offset) + ": " + what);
}

bool is_pgm_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Cursor over the header region: skips whitespace and '#' comment lines.
struct HeaderCursor {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;

    void skip_separators() {
        while (pos < bytes.size()) {
            if (is_pgm_space(bytes[pos])) {
                ++pos;
            } else if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    std::size_t read_number(const char* what) {
        skip_separators();
        if (pos >= bytes.size()) fail_at(pos, std::string("unexpected end of data reading ") + what);
        if (bytes[pos] < '0' || bytes[pos] > '9')
            fail_at(pos, std::string("expected digit for ") + what);
        std::size_t value = 0;
        while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
            value = value * 10 + (bytes[pos] - '0');
            if (value > 1'000'000'000) fail_at(pos, std::string(what) + " out of range");
            ++pos;
        }
        return value;
    }
};

}  // namespace

Image::Image(std::size_t w, std::size_t h) : width(w), height(h), pixels(w * h, 0) {
    if (w == 0 || h == 0) throw std::invalid_argument("image: dimensions must be positive");
}

Image::Image(std::size_t w, std::size_t h, std::vector<std::uint8_t> px)
    : width(w), height(h), pixels(std::move(px)) {
    if (w == 0 || h == 0) throw std::invalid_argument("image: dimensions must be positive");
    if (pixels.size() != w * h)
        throw std::invalid_argument("image: pixel count must equal width*height");
}

Image read_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        fail_at(0, "expected magic \"P5\"");
    HeaderCursor cur{bytes, 2};
    const std::size_t dims_off = (cur.skip_separators(), cur.pos);
    const std::size_t width = cur.read_number("width");
    const std::size_t height = cur.read_number("height");
    const std::size_t maxval_off = (cur.skip_separators(), cur.pos);
    const std::size_t maxval = cur.read_number("maxval");
    if (maxval != 255) fail_at(maxval_off, "maxval must be 255, got " + std::to_string(maxval));
    if (width == 0 || height == 0) fail_at(dims_off, "dimensions must be positive");
    if (cur.pos >= bytes.size() || !is_pgm_space(bytes[cur.pos]))
        fail_at(cur.pos, "expected single whitespace after maxval");
    ++cur.pos;
    const std::size_t need = width * height;
    const std::size_t have = bytes.size() - cur.pos;
    if (have < need)
        fail_at(bytes.size(), "truncated pixel data: expected " + std::to_string(need) +
                                  " bytes, found " + std::to_string(have));
    if (have > need)
        fail_at(cur.pos + need, "trailing bytes after pixel data");
    return Image(width, height,
                 std::vector<std::uint8_t>(bytes.begin() + cur.pos, bytes.end()));
}

std::vector<std::uint8_t> write_pgm(const Image& img) {
    char header[48];
    const int n = std::snprintf(header, sizeof header, "P5\n%zu %zu\n255\n", img.width, img.height);
    std::vector<std::uint8_t> out(header, header + n);
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    return out;
}

Image load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed on " + path);
    try {
        return read_pgm(bytes);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_pgm(const Image& img, const std::string& path) {
    const std::vector<std::uint8_t> bytes = write_pgm(img);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot create " + tmp);
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw IoError("write failed on " + tmp);
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
    }
}

Matrix to_vector(const Image& img) {
    if (img.width != img.height)
        throw std::invalid_argument("to_vector: image must be square");
    const std::size_t n = img.pixels.size();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = img.pixels[i] / 255.0;
    return Matrix(n, 1, std::move(v));
}

Image from_vector(const Matrix& v, std::size_t side) {
    if (v.cols() != 1 || v.rows() != side * side)
        throw std::invalid_argument("from_vector: expected a side*side x 1 column");
    std::vector<std::uint8_t> px(v.rows());
    for (std::size_t i = 0; i < px.size(); ++i) {
        const double c = std::min(1.0, std::max(0.0, v.data()[i]));
        px[i] = static_cast<std::uint8_t>(std::round(c * 255.0));
    }
    return Image(side, side, std::move(px));
}

Image downscale_box(const Image& img, std::size_t factor) {
    if (factor == 0 || img.width % factor != 0 || img.height % factor != 0)
        throw std::invalid_argument("downscale_box: factor must divide both dimensions");
    const std::size_t ow = img.width / factor, oh = img.height / factor;
    Image out(ow, oh);
    const std::size_t block = factor * factor;
    for (std::size_t oy = 0; oy < oh; ++oy) {
        for (std::size_t ox = 0; ox < ow; ++ox) {
            std::uint64_t sum = 0;
            for (std::size_t dy = 0; dy < factor; ++dy)
                for (std::size_t dx = 0; dx < factor; ++dx)
                    sum += img.at(ox * factor + dx, oy * factor + dy);
            // integer round-half-up; block means are never negative
            out.at(ox, oy) = static_cast<std::uint8_t>((2 * sum + block) / (2 * block));
        }
    }
    return out;
}

}  // namespace disguise
