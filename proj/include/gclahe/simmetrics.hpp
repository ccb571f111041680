#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "gclahe/image.hpp"

namespace gclahe {

enum class Metric { Ssim, Psnr, Mse, Sci, Rmse, Mae };

inline constexpr std::array<Metric, 6> kAllMetrics{Metric::Ssim, Metric::Psnr, Metric::Mse,
                                                   Metric::Sci,  Metric::Rmse, Metric::Mae};

/// Lowercase id used on the command line and in reports ("ssim", "psnr", ...).
std::string_view metric_id(Metric m) noexcept;

/// Inverse of metric_id. Throws ParameterError listing the valid ids.
Metric parse_metric(std::string_view id);

/// PSNR reported for identical images; larger computed values saturate here.
inline constexpr double kPsnrCapDb = 100.0;

/// SSIM window edge length (uniform weights, stride 1).
inline constexpr int kSsimWindow = 8;

double mse(const GrayImage& a, const GrayImage& b);
double rmse(const GrayImage& a, const GrayImage& b);
double mae(const GrayImage& a, const GrayImage& b);
double psnr(const GrayImage& a, const GrayImage& b);

/// Structural content: sum(reference^2) / sum(test^2). Not symmetric.
/// Throws ParameterError when `test` is all zero.
double structural_content(const GrayImage& reference, const GrayImage& test);

/// Mean SSIM over all 8x8 windows (stride 1) with C1 = (0.01*255)^2 and
/// C2 = (0.03*255)^2, population statistics. Images narrower or shorter
/// than the window are scored as a single global window.
double ssim(const GrayImage& a, const GrayImage& b);

/// A score tagged with the scorer that produced it.
struct MetricScore {
  double value = 0.0;
  std::string metric;

  /// Strict "more similar than" test. Throws ParameterError when the two
  /// scores come from different scorers.
  bool improves_on(const MetricScore& previous) const;
};

/// Wraps a similarity metric so that larger scores always mean "more
/// similar": MSE, RMSE and MAE are negated, SCI becomes -|1 - SC|.
class SimilarityScorer {
 public:
  using ScoreFunction =
      std::function<double(const GrayImage& reference, const GrayImage& candidate)>;

  explicit SimilarityScorer(Metric metric = Metric::Ssim);

  /// Scorer backed by an arbitrary function; used to probe the search loop.
  static SimilarityScorer custom(std::string label, ScoreFunction fn);

  MetricScore score(const GrayImage& reference, const GrayImage& candidate) const;

  const std::string& label() const noexcept { return label_; }
  std::optional<Metric> metric() const noexcept { return metric_; }

 private:
  SimilarityScorer(std::string label, std::optional<Metric> metric, ScoreFunction fn);

  std::string label_;
  std::optional<Metric> metric_;
  ScoreFunction fn_;
};

}  // namespace gclahe
