#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gclahe/image.hpp"

namespace gclahe {

/// Unreadable, malformed or unsupported image file. The message carries the
/// path and the reason.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integer luma: round(0.299 R + 0.587 G + 0.114 B).
std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept;

/// True for extensions ingest() understands (.pgm, .pnm, .ppm, .png).
bool is_supported_image(const std::filesystem::path& path);

/// Decodes P2/P3/P5/P6 data. Colour is converted with luma(); samples with a
/// maxval above 255 are reduced by a right shift of 8.
GrayImage decode_pnm(std::span<const std::uint8_t> bytes, std::string_view source = "<memory>");

/// Reads a PGM/PPM or PNG file into an 8-bit gray image.
GrayImage ingest(const std::filesystem::path& path);

/// Binary P5 encoding with maxval 255.
std::vector<std::uint8_t> encode_pgm(const GrayImage& image);

void write_pgm(const std::filesystem::path& path, const GrayImage& image);
void write_png(const std::filesystem::path& path, const GrayImage& image);

/// Picks PNG for a ".png" extension and binary PGM otherwise.
void write_image(const std::filesystem::path& path, const GrayImage& image);

}  // namespace gclahe
