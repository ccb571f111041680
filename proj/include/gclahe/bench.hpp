#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gclahe/clahe.hpp"
#include "gclahe/gclahe.hpp"
#include "gclahe/quality.hpp"
#include "gclahe/simmetrics.hpp"

namespace gclahe {

/// `Original` evaluates the unmodified input; it is never part of "all".
enum class Algorithm { Original, Ghe, Clahe, Gclahe };

std::string_view algorithm_id(Algorithm a) noexcept;

/// Parses "all" or a comma-separated list of original, ghe, clahe, gclahe.
std::vector<Algorithm> parse_algorithms(std::string_view spec);

/// Column header of every CSV this module writes.
inline constexpr std::string_view kCsvHeader =
    "image,algorithm,ts,clip_factor,metric,score,edge_count,edge_density,mean_value,entropy,"
    "avg_gradient";
inline constexpr std::string_view kCsvSchema = "gclahe-bench-csv v1";

struct RunConfig {
  std::vector<std::filesystem::path> inputs;  // files and/or directories
  std::optional<std::filesystem::path> output_dir;
  std::vector<Algorithm> algorithms{Algorithm::Ghe, Algorithm::Clahe, Algorithm::Gclahe};
  ClaheParams clahe{8, 2.0};
  GclaheParams gclahe{};
  double canny_low = kDefaultCannyLow;
  double canny_high = kDefaultCannyHigh;
  std::optional<std::size_t> sample;  // unset: every input
  std::uint64_t seed = 0;
  std::string report_name = "bench.csv";
  unsigned jobs = 1;

  void validate() const;
};

/// One evaluated (image, algorithm) pair, or a mean over such rows when
/// `image == "mean"`. Fields that do not apply stay empty.
struct BenchRow {
  std::string image;
  std::string algorithm;
  std::optional<int> ts;
  std::optional<double> clip_factor;
  std::optional<std::string> metric;
  std::optional<double> score;
  double edge_count = 0.0;
  double edge_density = 0.0;
  double mean_value = 0.0;
  double entropy = 0.0;
  double avg_gradient = 0.0;
};

struct ImageFailure {
  std::string image;
  std::string algorithm;
  std::string reason;
};

struct SuiteResult {
  std::vector<BenchRow> rows;
  std::vector<BenchRow> means;
  std::vector<ImageFailure> failures;
  std::string csv;

  /// 0 success, 2 some (image, algorithm) pairs failed, 3 nothing succeeded.
  int exit_code() const;
};

/// Expands directories (non-recursively, supported extensions only) and
/// returns the sorted list. Throws IoError when nothing is found.
std::vector<std::filesystem::path> collect_inputs(
    std::span<const std::filesystem::path> inputs);

/// Seeded Fisher-Yates shuffle of `sorted`, truncated to `sample` entries and
/// returned in lexicographic order. Identical on every platform.
std::vector<std::filesystem::path> sample_inputs(std::vector<std::filesystem::path> sorted,
                                                 std::optional<std::size_t> sample,
                                                 std::uint64_t seed);

/// Enhance every sampled image with every selected algorithm, evaluate it,
/// and aggregate per-algorithm means. Writes the CSV (and the enhanced images
/// as PGM) into `output_dir` when it is set.
SuiteResult run_suite(const RunConfig& config);

/// G-CLAHE at each tile grid in `sizes`; means are per grid size.
SuiteResult sweep_tile_size(const RunConfig& config, std::span<const int> sizes);

/// G-CLAHE with each scorer in `metrics`; means are per metric.
SuiteResult sweep_metric(const RunConfig& config, std::span<const Metric> metrics);

std::string format_csv(const SuiteResult& result, const RunConfig& config);

/// Pivot of per-metric means: one column per metric, rows for edge count and
/// edge density.
std::string format_metric_table(const SuiteResult& result);

}  // namespace gclahe
