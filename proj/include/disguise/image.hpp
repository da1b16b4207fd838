#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "disguise/matrix.hpp"

namespace disguise {

/// 8-bit grayscale raster, row-major.
struct Image {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;

    Image() = default;
    Image(std::size_t w, std::size_t h);  // black
    Image(std::size_t w, std::size_t h, std::vector<std::uint8_t> px);

    std::uint8_t at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
    std::uint8_t& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }

    bool operator==(const Image&) const = default;
};

/// Parses a binary PGM (P5, maxval 255). Header comments are accepted;
/// anything malformed raises ParseError naming the byte offset.
Image read_pgm(std::span<const std::uint8_t> bytes);

/// Emits exactly "P5\n{w} {h}\n255\n" followed by the raw pixel rows.
std::vector<std::uint8_t> write_pgm(const Image& img);

Image load_pgm(const std::string& path);

/// Writes to a temp file in the target directory and renames into place,
/// so the destination exists only complete.
void save_pgm(const Image& img, const std::string& path);

/// Flattens a square N x N image to an N^2 x 1 column, pixel/255.
Matrix to_vector(const Image& img);

/// Inverse of to_vector: round(clamp(v,0,1)*255), halves away from zero.
Image from_vector(const Matrix& v, std::size_t side);

/// Box-filter reduction by an integer factor dividing both dimensions;
/// block means rounded half away from zero.
Image downscale_box(const Image& img, std::size_t factor);

}  // namespace disguise
