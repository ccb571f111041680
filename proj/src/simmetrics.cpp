#include "gclahe/simmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include <fmt/format.h>

namespace gclahe {

namespace {

__extension__ typedef __int128 wide_int;

constexpr double kC1 = (0.01 * kMaxLevel) * (0.01 * kMaxLevel);
constexpr double kC2 = (0.03 * kMaxLevel) * (0.03 * kMaxLevel);

struct MomentSums {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t aa = 0;
  std::int64_t bb = 0;
  std::int64_t ab = 0;
};

// SSIM of one window from exact integer moments. Everything is scaled by n^2
// so the variance/covariance numerators stay exact integers.
double window_ssim(std::int64_t n, const MomentSums& s) {
  const wide_int wn = n;
  const wide_int sa = s.a;
  const wide_int sb = s.b;
  const auto var_a = static_cast<double>(wn * s.aa - sa * sa);
  const auto var_b = static_cast<double>(wn * s.bb - sb * sb);
  const auto cov = static_cast<double>(wn * s.ab - sa * sb);
  const auto mean_ab = static_cast<double>(sa * sb);
  const auto mean_sq = static_cast<double>(sa * sa + sb * sb);
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  const double luminance = (2.0 * mean_ab + kC1 * n2) / (mean_sq + kC1 * n2);
  const double structure = (2.0 * cov + kC2 * n2) / (var_a + var_b + kC2 * n2);
  return luminance * structure;
}

MomentSums global_moments(const GrayImage& a, const GrayImage& b) {
  MomentSums s;
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const std::int64_t x = pa[i];
    const std::int64_t y = pb[i];
    s.a += x;
    s.b += y;
    s.aa += x * x;
    s.bb += y * y;
    s.ab += x * y;
  }
  return s;
}

}  // namespace

std::string_view metric_id(Metric m) noexcept {
  switch (m) {
    case Metric::Ssim: return "ssim";
    case Metric::Psnr: return "psnr";
    case Metric::Mse: return "mse";
    case Metric::Sci: return "sci";
    case Metric::Rmse: return "rmse";
    case Metric::Mae: return "mae";
  }
  return "unknown";
}

Metric parse_metric(std::string_view id) {
  for (Metric m : kAllMetrics) {
    if (metric_id(m) == id) {
      return m;
    }
  }
  throw ParameterError(fmt::format(
      "unknown metric '{}'; valid ids: ssim, psnr, mse, sci, rmse, mae", id));
}

double mse(const GrayImage& a, const GrayImage& b) {
  require_same_shape(a, b);
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const int d = int{pa[i]} - int{pb[i]};
    sum += static_cast<std::uint64_t>(d * d);
  }
  return static_cast<double>(sum) / static_cast<double>(pa.size());
}

double rmse(const GrayImage& a, const GrayImage& b) { return std::sqrt(mse(a, b)); }

double mae(const GrayImage& a, const GrayImage& b) {
  require_same_shape(a, b);
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    sum += static_cast<std::uint64_t>(std::abs(int{pa[i]} - int{pb[i]}));
  }
  return static_cast<double>(sum) / static_cast<double>(pa.size());
}

double psnr(const GrayImage& a, const GrayImage& b) {
  const double e = mse(a, b);
  if (e == 0.0) {
    return kPsnrCapDb;
  }
  const double db = 10.0 * std::log10(double{kMaxLevel} * kMaxLevel / e);
  return std::min(db, kPsnrCapDb);
}

double structural_content(const GrayImage& reference, const GrayImage& test) {
  require_same_shape(reference, test);
  std::uint64_t ref_energy = 0;
  std::uint64_t test_energy = 0;
  for (std::uint8_t v : reference.pixels()) {
    ref_energy += std::uint64_t{v} * v;
  }
  for (std::uint8_t v : test.pixels()) {
    test_energy += std::uint64_t{v} * v;
  }
  if (test_energy == 0) {
    throw ParameterError("structural content undefined: test image is all zero");
  }
  return static_cast<double>(ref_energy) / static_cast<double>(test_energy);
}

double ssim(const GrayImage& a, const GrayImage& b) {
  require_same_shape(a, b);
  const int w = a.width();
  const int h = a.height();
  if (w < kSsimWindow || h < kSsimWindow) {
    return window_ssim(static_cast<std::int64_t>(a.pixel_count()), global_moments(a, b));
  }

  // Column sums over the current band of kSsimWindow rows, slid down one row
  // at a time; each band is then swept horizontally.
  std::vector<MomentSums> col(static_cast<std::size_t>(w));
  auto accumulate_row = [&](int y, int sign) {
    for (int x = 0; x < w; ++x) {
      const std::int64_t u = a.at(x, y);
      const std::int64_t v = b.at(x, y);
      MomentSums& c = col[x];
      c.a += sign * u;
      c.b += sign * v;
      c.aa += sign * u * u;
      c.bb += sign * v * v;
      c.ab += sign * u * v;
    }
  };

  constexpr std::int64_t n = std::int64_t{kSsimWindow} * kSsimWindow;
  double total = 0.0;
  for (int y = 0; y < kSsimWindow; ++y) {
    accumulate_row(y, +1);
  }
  for (int top = 0;; ++top) {
    MomentSums win;
    for (int x = 0; x < kSsimWindow; ++x) {
      win.a += col[x].a;
      win.b += col[x].b;
      win.aa += col[x].aa;
      win.bb += col[x].bb;
      win.ab += col[x].ab;
    }
    for (int left = 0;; ++left) {
      total += window_ssim(n, win);
      const int next = left + kSsimWindow;
      if (next >= w) {
        break;
      }
      win.a += col[next].a - col[left].a;
      win.b += col[next].b - col[left].b;
      win.aa += col[next].aa - col[left].aa;
      win.bb += col[next].bb - col[left].bb;
      win.ab += col[next].ab - col[left].ab;
    }
    const int next_row = top + kSsimWindow;
    if (next_row >= h) {
      break;
    }
    accumulate_row(next_row, +1);
    accumulate_row(top, -1);
  }
  const double windows =
      static_cast<double>(w - kSsimWindow + 1) * static_cast<double>(h - kSsimWindow + 1);
  return total / windows;
}

bool MetricScore::improves_on(const MetricScore& previous) const {
  if (metric != previous.metric) {
    throw ParameterError(fmt::format("cannot compare a '{}' score with a '{}' score",
                                     metric, previous.metric));
  }
  return value > previous.value;
}

SimilarityScorer::SimilarityScorer(Metric metric)
    : label_(metric_id(metric)), metric_(metric) {
  switch (metric) {
    case Metric::Ssim: fn_ = [](const GrayImage& r, const GrayImage& c) { return ssim(r, c); }; break;
    case Metric::Psnr: fn_ = [](const GrayImage& r, const GrayImage& c) { return psnr(r, c); }; break;
    case Metric::Mse: fn_ = [](const GrayImage& r, const GrayImage& c) { return -mse(r, c); }; break;
    case Metric::Rmse: fn_ = [](const GrayImage& r, const GrayImage& c) { return -rmse(r, c); }; break;
    case Metric::Mae: fn_ = [](const GrayImage& r, const GrayImage& c) { return -mae(r, c); }; break;
    case Metric::Sci:
      fn_ = [](const GrayImage& r, const GrayImage& c) {
        return -std::abs(1.0 - structural_content(r, c));
      };
      break;
  }
}

SimilarityScorer::SimilarityScorer(std::string label, std::optional<Metric> metric,
                                   ScoreFunction fn)
    : label_(std::move(label)), metric_(metric), fn_(std::move(fn)) {}

SimilarityScorer SimilarityScorer::custom(std::string label, ScoreFunction fn) {
  if (!fn) {
    throw ParameterError("custom scorer needs a callable");
  }
  return SimilarityScorer(std::move(label), std::nullopt, std::move(fn));
}

MetricScore SimilarityScorer::score(const GrayImage& reference,
                                    const GrayImage& candidate) const {
  require_same_shape(reference, candidate);
  return MetricScore{fn_(reference, candidate), label_};
}

}  // namespace gclahe
