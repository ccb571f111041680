#include "gclahe/ghe.hpp"

#include <algorithm>
#include <cmath>

namespace gclahe {

MappingLut MappingLut::identity() {
  MappingLut lut;
  for (int i = 0; i < kLevels; ++i) {
    lut.table[i] = static_cast<std::uint8_t>(i);
  }
  return lut;
}

std::uint8_t round_to_level(double value) noexcept {
  const double r = std::round(value);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, static_cast<double>(kMaxLevel)));
}

MappingLut build_equalization_lut(const NormalizedCdf& ncdf) {
  MappingLut lut;
  for (int i = 0; i < kLevels; ++i) {
    lut.table[i] = round_to_level(ncdf.values[i] * kMaxLevel);
  }
  return lut;
}

MappingLut equalization_lut(const Histogram& hist) {
  return build_equalization_lut(normalize_cdf(compute_cdf(hist), hist.total()));
}

GrayImage apply_lut(const GrayImage& image, const MappingLut& lut) {
  GrayImage out(image.width(), image.height());
  std::transform(image.pixels().begin(), image.pixels().end(), out.pixels().begin(),
                 [&lut](std::uint8_t v) { return lut.table[v]; });
  return out;
}

GrayImage ghe(const GrayImage& image) {
  return apply_lut(image, equalization_lut(compute_histogram(image)));
}

}  // namespace gclahe
