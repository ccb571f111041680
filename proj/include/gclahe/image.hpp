#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gclahe {

/// Number of gray levels of every image handled by the library (8-bit).
inline constexpr int kLevels = 256;
inline constexpr int kMaxLevel = kLevels - 1;

/// Raised when an operation receives arguments outside its domain
/// (bad grid size, clip factor < 1, thresholds out of order, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when two images that must share a shape do not.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// 8-bit single-channel raster, row-major.
///
/// Width and height are always >= 1; a zero-pixel image cannot be
/// constructed.
class GrayImage {
 public:
  GrayImage(int width, int height, std::uint8_t fill = 0);
  GrayImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return pixels_.size(); }

  std::uint8_t at(int x, int y) const { return pixels_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return pixels_[index(x, y)]; }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  bool same_shape(const GrayImage& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  std::string shape_string() const;

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

/// Throws DimensionError naming both shapes when `a` and `b` differ.
void require_same_shape(const GrayImage& a, const GrayImage& b);

/// Per-level pixel counts. Sum of bins equals the pixel count of the source.
struct Histogram {
  std::array<std::uint64_t, kLevels> bins{};

  std::uint64_t total() const noexcept;
  friend bool operator==(const Histogram&, const Histogram&) = default;
};

/// Running prefix sum of a histogram; values[255] is the pixel count.
struct Cdf {
  std::array<std::uint64_t, kLevels> values{};
  friend bool operator==(const Cdf&, const Cdf&) = default;
};

/// CDF divided by the pixel count, so values[255] == 1.
struct NormalizedCdf {
  std::array<double, kLevels> values{};
};

Histogram compute_histogram(const GrayImage& image);

/// Histogram of the rectangle [x0, x1) x [y0, y1).
Histogram compute_histogram(const GrayImage& image, int x0, int y0, int x1, int y1);

Cdf compute_cdf(const Histogram& hist);

/// Requires n > 0 and cdf.values[255] == n.
NormalizedCdf normalize_cdf(const Cdf& cdf, std::uint64_t n);

}  // namespace gclahe
