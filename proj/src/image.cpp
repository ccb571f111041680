#include "gclahe/image.hpp"

#include <numeric>

#include <fmt/format.h>

namespace gclahe {

namespace {

std::size_t checked_area(int width, int height) {
  if (width < 1 || height < 1) {
    throw ParameterError(
        fmt::format("image dimensions must be >= 1, got {}x{}", width, height));
  }
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height), pixels_(checked_area(width, height), fill) {}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  const std::size_t expected = checked_area(width, height);
  if (pixels_.size() != expected) {
    throw ParameterError(fmt::format("{}x{} image needs {} pixels, got {}", width,
                                     height, expected, pixels_.size()));
  }
}

std::string GrayImage::shape_string() const {
  return fmt::format("{}x{}", width_, height_);
}

void require_same_shape(const GrayImage& a, const GrayImage& b) {
  if (!a.same_shape(b)) {
    throw DimensionError(fmt::format("image shapes differ: {} vs {}",
                                     a.shape_string(), b.shape_string()));
  }
}

std::uint64_t Histogram::total() const noexcept {
  return std::accumulate(bins.begin(), bins.end(), std::uint64_t{0});
}

Histogram compute_histogram(const GrayImage& image) {
  Histogram hist;
  for (std::uint8_t v : image.pixels()) {
    ++hist.bins[v];
  }
  return hist;
}

Histogram compute_histogram(const GrayImage& image, int x0, int y0, int x1, int y1) {
  Histogram hist;
  const auto px = image.pixels();
  const auto stride = static_cast<std::size_t>(image.width());
  for (int y = y0; y < y1; ++y) {
    const std::uint8_t* row = px.data() + static_cast<std::size_t>(y) * stride;
    for (int x = x0; x < x1; ++x) {
      ++hist.bins[row[x]];
    }
  }
  return hist;
}

Cdf compute_cdf(const Histogram& hist) {
  Cdf cdf;
  std::partial_sum(hist.bins.begin(), hist.bins.end(), cdf.values.begin());
  return cdf;
}

NormalizedCdf normalize_cdf(const Cdf& cdf, std::uint64_t n) {
  if (n == 0) {
    throw ParameterError("cannot normalize a CDF over zero pixels");
  }
  if (cdf.values[kMaxLevel] != n) {
    throw ParameterError(fmt::format("CDF ends at {} but pixel count is {}",
                                     cdf.values[kMaxLevel], n));
  }
  NormalizedCdf out;
  const auto denom = static_cast<double>(n);
  for (int i = 0; i < kLevels; ++i) {
    out.values[i] = static_cast<double>(cdf.values[i]) / denom;
  }
  return out;
}

}  // namespace gclahe
