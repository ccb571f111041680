#include "gclahe/quality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace gclahe {

namespace {

// Integer approximation of a sigma = 1.4 Gaussian; weights sum to 159.
constexpr int kGauss[5][5] = {
    {2, 4, 5, 4, 2},
    {4, 9, 12, 9, 4},
    {5, 12, 15, 12, 5},
    {4, 9, 12, 9, 4},
    {2, 4, 5, 4, 2},
};
constexpr int kGaussSum = 159;

enum class Sector { Horizontal, Vertical, Diagonal45, Diagonal135 };

// Exact quantization: tan(22.5) = sqrt(2) - 1 and tan(67.5) = sqrt(2) + 1,
// so both boundary tests reduce to integer comparisons against 2*gx^2.
Sector quantize(std::int64_t gx, std::int64_t gy) {
  const std::int64_t ax = gx < 0 ? -gx : gx;
  const std::int64_t ay = gy < 0 ? -gy : gy;
  const std::int64_t two_ax2 = 2 * ax * ax;
  if ((ay + ax) * (ay + ax) < two_ax2) {
    return Sector::Horizontal;
  }
  if (ay > ax && (ay - ax) * (ay - ax) > two_ax2) {
    return Sector::Vertical;
  }
  return (gx > 0) == (gy > 0) ? Sector::Diagonal45 : Sector::Diagonal135;
}

class IntPlane {
 public:
  IntPlane(int w, int h) : w_(w), h_(h), v_(static_cast<std::size_t>(w) * h) {}
  std::int64_t& operator()(int x, int y) { return v_[static_cast<std::size_t>(y) * w_ + x]; }
  std::int64_t operator()(int x, int y) const {
    return v_[static_cast<std::size_t>(y) * w_ + x];
  }
  // Border-replicating read.
  std::int64_t clamped(int x, int y) const {
    return (*this)(std::clamp(x, 0, w_ - 1), std::clamp(y, 0, h_ - 1));
  }

 private:
  int w_;
  int h_;
  std::vector<std::int64_t> v_;
};

}  // namespace

EdgeMap::EdgeMap(int width, int height)
    : width_(width),
      height_(height),
      flags_(static_cast<std::size_t>(std::max(width, 0)) *
             static_cast<std::size_t>(std::max(height, 0))) {}

std::size_t EdgeMap::count() const noexcept {
  return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), std::uint8_t{1}));
}

EdgeMap canny(const GrayImage& image, double low, double high) {
  if (!(low >= 0.0) || !(high >= 0.0)) {
    throw ParameterError(fmt::format("canny thresholds must be >= 0, got ({}, {})", low, high));
  }
  if (low > high) {
    throw ParameterError(
        fmt::format("canny low threshold {} exceeds high threshold {}", low, high));
  }
  const int w = image.width();
  const int h = image.height();
  EdgeMap edges(w, h);
  if (w < 3 || h < 3) {
    return edges;
  }

  IntPlane smooth(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::int64_t acc = 0;
      for (int i = 0; i < 5; ++i) {
        const int yy = std::clamp(y + i - 2, 0, h - 1);
        for (int j = 0; j < 5; ++j) {
          const int xx = std::clamp(x + j - 2, 0, w - 1);
          acc += kGauss[i][j] * std::int64_t{image.at(xx, yy)};
        }
      }
      smooth(x, y) = acc;
    }
  }

  IntPlane gx(w, h);
  IntPlane gy(w, h);
  IntPlane mag2(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto s = [&](int dx, int dy) { return smooth.clamped(x + dx, y + dy); };
      const std::int64_t dx = (s(1, -1) + 2 * s(1, 0) + s(1, 1)) -
                              (s(-1, -1) + 2 * s(-1, 0) + s(-1, 1));
      const std::int64_t dy = (s(-1, 1) + 2 * s(0, 1) + s(1, 1)) -
                              (s(-1, -1) + 2 * s(0, -1) + s(1, -1));
      gx(x, y) = dx;
      gy(x, y) = dy;
      mag2(x, y) = dx * dx + dy * dy;
    }
  }

  // Thresholds are in gray-level units; the integer pipeline carries a
  // factor of kGaussSum in every gradient component.
  const double lo2 = (low * kGaussSum) * (low * kGaussSum);
  const double hi2 = (high * kGaussSum) * (high * kGaussSum);

  // 0 = suppressed, 1 = weak, 2 = strong
  std::vector<std::uint8_t> cls(static_cast<std::size_t>(w) * h, 0);
  std::vector<std::pair<int, int>> stack;
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      const std::int64_t m = mag2(x, y);
      const auto m_d = static_cast<double>(m);
      if (m_d < lo2 || m == 0) {
        continue;
      }
      std::int64_t prev = 0;
      std::int64_t next = 0;
      switch (quantize(gx(x, y), gy(x, y))) {
        case Sector::Horizontal:
          prev = mag2(x - 1, y);
          next = mag2(x + 1, y);
          break;
        case Sector::Vertical:
          prev = mag2(x, y - 1);
          next = mag2(x, y + 1);
          break;
        case Sector::Diagonal45:
          prev = mag2(x - 1, y - 1);
          next = mag2(x + 1, y + 1);
          break;
        case Sector::Diagonal135:
          prev = mag2(x + 1, y - 1);
          next = mag2(x - 1, y + 1);
          break;
      }
      if (!(m > prev && m >= next)) {
        continue;
      }
      const std::size_t idx = static_cast<std::size_t>(y) * w + x;
      if (m_d >= hi2) {
        cls[idx] = 2;
        stack.emplace_back(x, y);
      } else {
        cls[idx] = 1;
      }
    }
  }

  while (!stack.empty()) {
    const auto [x, y] = stack.back();
    stack.pop_back();
    edges.set(x, y, true);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) {
          continue;
        }
        auto& c = cls[static_cast<std::size_t>(ny) * w + nx];
        if (c == 1) {
          c = 2;
          stack.emplace_back(nx, ny);
        }
      }
    }
  }
  return edges;
}

std::size_t edge_count(const EdgeMap& map) { return map.count(); }

double edge_density(const EdgeMap& map) {
  const double pixels = static_cast<double>(map.width()) * static_cast<double>(map.height());
  return pixels > 0 ? static_cast<double>(map.count()) / pixels : 0.0;
}

double entropy(const GrayImage& image) {
  const Histogram hist = compute_histogram(image);
  const auto n = static_cast<double>(image.pixel_count());
  double h = 0.0;
  for (std::uint64_t count : hist.bins) {
    if (count == 0) {
      continue;
    }
    const double p = static_cast<double>(count) / n;
    h -= p * std::log2(p);
  }
  return h;
}

double mean_value(const GrayImage& image) {
  const auto px = image.pixels();
  const std::uint64_t sum = std::accumulate(px.begin(), px.end(), std::uint64_t{0});
  return static_cast<double>(sum) / static_cast<double>(px.size());
}

double average_gradient(const GrayImage& image) {
  const int w = image.width();
  const int h = image.height();
  if (w < 2 || h < 2) {
    throw ParameterError(fmt::format(
        "average gradient needs an image of at least 2x2, got {}", image.shape_string()));
  }
  double total = 0.0;
  for (int y = 0; y + 1 < h; ++y) {
    for (int x = 0; x + 1 < w; ++x) {
      const int v = image.at(x, y);
      const int gx = image.at(x + 1, y) - v;
      const int gy = image.at(x, y + 1) - v;
      total += std::sqrt((gx * gx + gy * gy) / 2.0);
    }
  }
  return total / (static_cast<double>(w - 1) * static_cast<double>(h - 1));
}

QualityReport quality_report(const GrayImage& image, double canny_low, double canny_high) {
  const EdgeMap edges = canny(image, canny_low, canny_high);
  QualityReport r;
  r.edge_count = edge_count(edges);
  r.edge_density = edge_density(edges);
  r.mean_value = mean_value(image);
  r.entropy = entropy(image);
  r.average_gradient = average_gradient(image);
  return r;
}

}  // namespace gclahe
