#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "gclahe/ghe.hpp"
#include "gclahe/image.hpp"

namespace gclahe {

/// Clip factor value that disables contrast limiting (plain AHE).
inline constexpr double kUnlimitedClip = std::numeric_limits<double>::infinity();

/// Contrast-limited adaptive equalization settings.
///
/// `grid` is the number of tiles per axis (a grid x grid layout).
/// `clip_factor` multiplies the average per-tile bin height
/// (tile_pixels / 256) to give the clip limit; it must be >= 1, or
/// kUnlimitedClip.
struct ClaheParams {
  int grid = 8;
  double clip_factor = 2.0;

  /// Throws ParameterError if the settings are invalid for a
  /// width x height image.
  void validate(int width, int height) const;
};

/// Balanced partition of an image into grid x grid tiles, plus one
/// equalization LUT per tile once build_tile_luts has run.
struct TileGrid {
  int grid = 0;
  std::vector<int> x_cuts;  // grid + 1 column boundaries, x_cuts[0] == 0
  std::vector<int> y_cuts;  // grid + 1 row boundaries
  std::vector<MappingLut> luts;  // row-major: ty * grid + tx; empty until built

  int tile_width(int tx) const { return x_cuts[tx + 1] - x_cuts[tx]; }
  int tile_height(int ty) const { return y_cuts[ty + 1] - y_cuts[ty]; }

  // Pixel-space centers, e.g. a tile spanning columns [4, 8) is centered at 5.5.
  double center_x(int tx) const { return 0.5 * (x_cuts[tx] + x_cuts[tx + 1] - 1); }
  double center_y(int ty) const { return 0.5 * (y_cuts[ty] + y_cuts[ty + 1] - 1); }

  const MappingLut& lut(int tx, int ty) const {
    return luts[static_cast<std::size_t>(ty) * grid + tx];
  }
};

/// Tile (tx, ty) spans [floor(tx*W/grid), floor((tx+1)*W/grid)) and the
/// analogous rows. Requires 1 <= grid <= min(W, H).
TileGrid partition(const GrayImage& image, int grid);

/// Clip limit in counts for a tile of `tile_pixels` pixels:
/// max(1, round(clip_factor * tile_pixels / 256)).
std::uint64_t clip_limit_for(double clip_factor, std::uint64_t tile_pixels);

/// Clips every bin to `clip_limit` and spreads the excess in one pass: an
/// equal share to every bin, then one extra count to each of the lowest
/// `excess % bins.size()` bins. Total mass is preserved; a bin may end up
/// above the limit by at most ceil(excess / bins.size()).
void clip_histogram_inplace(std::span<std::uint64_t> bins, std::uint64_t clip_limit);

Histogram clip_histogram(const Histogram& hist, std::uint64_t clip_limit);

/// Fills grid.luts: per tile histogram -> clip -> CDF -> LUT.
void build_tile_luts(const GrayImage& image, TileGrid& grid, double clip_factor);

/// Bilinear interpolation of the four surrounding tile mappings evaluated at
/// each pixel's intensity. Pixels beyond the outermost tile centers clamp to
/// the edge (linear along the border, nearest in the corners).
GrayImage bilinear_blend(const GrayImage& image, const TileGrid& grid);

GrayImage clahe(const GrayImage& image, const ClaheParams& params);

}  // namespace gclahe
