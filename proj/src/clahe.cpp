#include "gclahe/clahe.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace gclahe {

namespace {

std::vector<int> balanced_cuts(int extent, int grid) {
  std::vector<int> cuts(static_cast<std::size_t>(grid) + 1);
  for (int t = 0; t <= grid; ++t) {
    cuts[t] = static_cast<int>(static_cast<std::int64_t>(t) * extent / grid);
  }
  return cuts;
}

// Interpolation support along one axis: the two tiles bracketing a pixel and
// the weight of the second one.
struct AxisWeight {
  int lo = 0;
  int hi = 0;
  double w = 0.0;
};

std::vector<AxisWeight> axis_weights(int extent, int grid, auto center_of) {
  std::vector<AxisWeight> out(static_cast<std::size_t>(extent));
  int t = 0;
  const double first = center_of(0);
  const double last = center_of(grid - 1);
  for (int p = 0; p < extent; ++p) {
    if (p <= first) {
      out[p] = {0, 0, 0.0};
    } else if (p >= last) {
      out[p] = {grid - 1, grid - 1, 0.0};
    } else {
      while (center_of(t + 1) <= p) {
        ++t;
      }
      const double c0 = center_of(t);
      const double c1 = center_of(t + 1);
      out[p] = {t, t + 1, (p - c0) / (c1 - c0)};
    }
  }
  return out;
}

}  // namespace

void ClaheParams::validate(int width, int height) const {
  if (grid < 1) {
    throw ParameterError(fmt::format("tile grid must be >= 1, got {}", grid));
  }
  if (grid > std::min(width, height)) {
    throw ParameterError(fmt::format(
        "tile grid {} exceeds min(width, height) = {} for a {}x{} image", grid,
        std::min(width, height), width, height));
  }
  if (std::isnan(clip_factor) || clip_factor < 1.0) {
    throw ParameterError(
        fmt::format("clip factor must be >= 1 or unlimited, got {}", clip_factor));
  }
}

TileGrid partition(const GrayImage& image, int grid) {
  ClaheParams{grid, kUnlimitedClip}.validate(image.width(), image.height());
  TileGrid tiles;
  tiles.grid = grid;
  tiles.x_cuts = balanced_cuts(image.width(), grid);
  tiles.y_cuts = balanced_cuts(image.height(), grid);
  return tiles;
}

std::uint64_t clip_limit_for(double clip_factor, std::uint64_t tile_pixels) {
  const double raw = std::round(clip_factor * static_cast<double>(tile_pixels) / kLevels);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(raw));
}

void clip_histogram_inplace(std::span<std::uint64_t> bins, std::uint64_t clip_limit) {
  if (bins.empty()) {
    return;
  }
  std::uint64_t excess = 0;
  for (auto& b : bins) {
    if (b > clip_limit) {
      excess += b - clip_limit;
      b = clip_limit;
    }
  }
  const std::uint64_t share = excess / bins.size();
  const std::uint64_t remainder = excess % bins.size();
  for (std::size_t i = 0; i < bins.size(); ++i) {
    bins[i] += share + (i < remainder ? 1 : 0);
  }
}

Histogram clip_histogram(const Histogram& hist, std::uint64_t clip_limit) {
  Histogram out = hist;
  clip_histogram_inplace(out.bins, clip_limit);
  return out;
}

void build_tile_luts(const GrayImage& image, TileGrid& grid, double clip_factor) {
  const bool limited = std::isfinite(clip_factor);
  grid.luts.assign(static_cast<std::size_t>(grid.grid) * grid.grid, MappingLut{});
  for (int ty = 0; ty < grid.grid; ++ty) {
    for (int tx = 0; tx < grid.grid; ++tx) {
      Histogram hist = compute_histogram(image, grid.x_cuts[tx], grid.y_cuts[ty],
                                         grid.x_cuts[tx + 1], grid.y_cuts[ty + 1]);
      if (limited) {
        const auto pixels = static_cast<std::uint64_t>(grid.tile_width(tx)) *
                            static_cast<std::uint64_t>(grid.tile_height(ty));
        clip_histogram_inplace(hist.bins, clip_limit_for(clip_factor, pixels));
      }
      grid.luts[static_cast<std::size_t>(ty) * grid.grid + tx] = equalization_lut(hist);
    }
  }
}

GrayImage bilinear_blend(const GrayImage& image, const TileGrid& grid) {
  const auto cols = axis_weights(image.width(), grid.grid,
                                 [&grid](int t) { return grid.center_x(t); });
  const auto rows = axis_weights(image.height(), grid.grid,
                                 [&grid](int t) { return grid.center_y(t); });

  GrayImage out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    const AxisWeight& ry = rows[y];
    for (int x = 0; x < image.width(); ++x) {
      const AxisWeight& cx = cols[x];
      const std::uint8_t v = image.at(x, y);
      const double a = grid.lut(cx.lo, ry.lo)[v];
      const double b = grid.lut(cx.hi, ry.lo)[v];
      const double c = grid.lut(cx.lo, ry.hi)[v];
      const double d = grid.lut(cx.hi, ry.hi)[v];
      const double top = (1.0 - cx.w) * a + cx.w * b;
      const double bottom = (1.0 - cx.w) * c + cx.w * d;
      out.at(x, y) = round_to_level((1.0 - ry.w) * top + ry.w * bottom);
    }
  }
  return out;
}

GrayImage clahe(const GrayImage& image, const ClaheParams& params) {
  params.validate(image.width(), image.height());
  TileGrid grid = partition(image, params.grid);
  build_tile_luts(image, grid, params.clip_factor);
  return bilinear_blend(image, grid);
}

}  // namespace gclahe
