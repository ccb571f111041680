#pragma once

#include <cstdint>
#include <vector>

#include "gclahe/image.hpp"

namespace gclahe {

inline constexpr double kDefaultCannyLow = 50.0;
inline constexpr double kDefaultCannyHigh = 150.0;

/// Per-pixel edge flags with the same shape as the image it came from.
class EdgeMap {
 public:
  EdgeMap(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool at(int x, int y) const { return flags_[index(x, y)] != 0; }
  void set(int x, int y, bool edge) { flags_[index(x, y)] = edge ? 1 : 0; }

  std::size_t count() const noexcept;

  friend bool operator==(const EdgeMap&, const EdgeMap&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> flags_;
};

/// Canny edge detector.
///
/// 5x5 Gaussian (sigma 1.4, the integer /159 kernel), 3x3 Sobel, gradient
/// direction quantized to 0/45/90/135 degrees, non-maximum suppression, and
/// hysteresis with 8-connectivity. Thresholds are gradient magnitudes of the
/// smoothed image in gray-level units. The whole pipeline runs on exact
/// integers; the one-pixel image border never carries an edge.
///
/// Images smaller than 3x3 yield an empty map. Throws ParameterError when
/// low > high or either threshold is negative.
EdgeMap canny(const GrayImage& image, double low = kDefaultCannyLow,
              double high = kDefaultCannyHigh);

std::size_t edge_count(const EdgeMap& map);
double edge_density(const EdgeMap& map);

/// Shannon entropy of the gray-level histogram, in bits.
double entropy(const GrayImage& image);

double mean_value(const GrayImage& image);

/// Mean of sqrt((gx^2 + gy^2) / 2) over every pixel with a right and a lower
/// neighbor, using forward differences. Needs at least 2x2.
double average_gradient(const GrayImage& image);

struct QualityReport {
  std::size_t edge_count = 0;
  double edge_density = 0.0;
  double mean_value = 0.0;
  double entropy = 0.0;
  double average_gradient = 0.0;
};

QualityReport quality_report(const GrayImage& image, double canny_low = kDefaultCannyLow,
                             double canny_high = kDefaultCannyHigh);

}  // namespace gclahe
