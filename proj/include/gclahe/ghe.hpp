#pragma once

#include <array>
#include <cstdint>

#include "gclahe/image.hpp"

namespace gclahe {

/// 256-entry intensity remapping table.
struct MappingLut {
  std::array<std::uint8_t, kLevels> table{};

  std::uint8_t operator[](std::uint8_t level) const noexcept { return table[level]; }

  static MappingLut identity();
  friend bool operator==(const MappingLut&, const MappingLut&) = default;
};

/// Rounds to the nearest integer, halves away from zero. Shared by every
/// stage that converts a real intensity back to a gray level.
std::uint8_t round_to_level(double value) noexcept;

/// table[i] = round(ncdf[i] * 255).
MappingLut build_equalization_lut(const NormalizedCdf& ncdf);

/// Histogram -> CDF -> normalized CDF -> LUT for a histogram of `hist.total()`
/// pixels.
MappingLut equalization_lut(const Histogram& hist);

GrayImage apply_lut(const GrayImage& image, const MappingLut& lut);

/// Global histogram equalization.
GrayImage ghe(const GrayImage& image);

}  // namespace gclahe
