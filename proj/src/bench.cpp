#include "gclahe/bench.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "gclahe/ghe.hpp"
#include "gclahe/io.hpp"

namespace gclahe {

namespace fs = std::filesystem;

namespace {

struct Enhanced {
  GrayImage image;
  std::optional<int> ts;
  std::optional<double> clip_factor;
  std::optional<std::string> metric;
  std::optional<double> score;
};

// One column of the experiment: how to enhance an image and how to label it.
struct Variant {
  std::string algorithm;
  std::function<Enhanced(const GrayImage&)> run;
};

Variant make_variant(Algorithm a, const RunConfig& config) {
  switch (a) {
    case Algorithm::Original:
      return {"original", [](const GrayImage& img) { return Enhanced{img, {}, {}, {}, {}}; }};
    case Algorithm::Ghe:
      return {"ghe", [](const GrayImage& img) { return Enhanced{ghe(img), {}, {}, {}, {}}; }};
    case Algorithm::Clahe: {
      const ClaheParams p = config.clahe;
      return {"clahe", [p](const GrayImage& img) {
                return Enhanced{clahe(img, p), p.grid, p.clip_factor, {}, {}};
              }};
    }
    case Algorithm::Gclahe: {
      const GclaheParams p = config.gclahe;
      return {"gclahe", [p](const GrayImage& img) {
                GclaheResult r = run_gclahe(img, p);
                return Enhanced{std::move(r.image), p.grid, r.clip_factor, p.scorer.label(),
                                r.trace.final_score};
              }};
    }
  }
  throw ParameterError("unknown algorithm");
}

std::optional<double> mean_of(const std::vector<const BenchRow*>& rows,
                              std::optional<double> BenchRow::*field) {
  double sum = 0.0;
  for (const BenchRow* r : rows) {
    if (!(r->*field)) {
      return std::nullopt;
    }
    sum += *(r->*field);
  }
  return sum / static_cast<double>(rows.size());
}

BenchRow mean_row(const std::string& algorithm, const std::vector<const BenchRow*>& rows) {
  BenchRow m;
  m.image = "mean";
  m.algorithm = algorithm;
  const auto n = static_cast<double>(rows.size());
  m.ts = rows.front()->ts;
  m.metric = rows.front()->metric;
  for (const BenchRow* r : rows) {
    if (r->ts != m.ts) {
      m.ts.reset();
    }
    if (r->metric != m.metric) {
      m.metric.reset();
    }
    m.edge_count += r->edge_count;
    m.edge_density += r->edge_density;
    m.mean_value += r->mean_value;
    m.entropy += r->entropy;
    m.avg_gradient += r->avg_gradient;
  }
  m.clip_factor = mean_of(rows, &BenchRow::clip_factor);
  m.score = mean_of(rows, &BenchRow::score);
  m.edge_count /= n;
  m.edge_density /= n;
  m.mean_value /= n;
  m.entropy /= n;
  m.avg_gradient /= n;
  return m;
}

std::string format_optional(const std::optional<double>& v, std::string_view spec) {
  return v ? fmt::format(fmt::runtime(spec), *v) : std::string{};
}

void append_row(std::string& out, const BenchRow& r, bool is_mean) {
  out += fmt::format(
      "{},{},{},{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f}\n", r.image, r.algorithm,
      r.ts ? std::to_string(*r.ts) : std::string{}, format_optional(r.clip_factor, "{:.6g}"),
      r.metric.value_or(""), format_optional(r.score, "{:.9f}"),
      is_mean ? fmt::format("{:.2f}", r.edge_count) : fmt::format("{:.0f}", r.edge_count),
      r.edge_density, r.mean_value, r.entropy, r.avg_gradient);
}

struct ImageOutcome {
  std::vector<std::optional<BenchRow>> rows;  // one slot per variant
  std::vector<ImageFailure> failures;
};

ImageOutcome evaluate_image(const fs::path& path, const std::vector<Variant>& variants,
                            const RunConfig& config, bool write_images) {
  ImageOutcome out;
  out.rows.resize(variants.size());
  const std::string id = path.filename().string();
  std::optional<GrayImage> image;
  try {
    image = ingest(path);
  } catch (const std::exception& e) {
    for (const auto& v : variants) {
      out.failures.push_back({id, v.algorithm, e.what()});
    }
    return out;
  }
  for (std::size_t k = 0; k < variants.size(); ++k) {
    try {
      Enhanced enhanced = variants[k].run(*image);
      const QualityReport q =
          quality_report(enhanced.image, config.canny_low, config.canny_high);
      BenchRow row;
      row.image = id;
      row.algorithm = variants[k].algorithm;
      row.ts = enhanced.ts;
      row.clip_factor = enhanced.clip_factor;
      row.metric = enhanced.metric;
      row.score = enhanced.score;
      row.edge_count = static_cast<double>(q.edge_count);
      row.edge_density = q.edge_density;
      row.mean_value = q.mean_value;
      row.entropy = q.entropy;
      row.avg_gradient = q.average_gradient;
      if (write_images && config.output_dir) {
        write_pgm(*config.output_dir /
                      fmt::format("{}.{}.pgm", path.stem().string(), variants[k].algorithm),
                  enhanced.image);
      }
      out.rows[k] = std::move(row);
    } catch (const std::exception& e) {
      out.failures.push_back({id, variants[k].algorithm, e.what()});
    }
  }
  return out;
}

SuiteResult evaluate(const RunConfig& config, const std::vector<Variant>& variants,
                     bool write_images) {
  config.validate();
  const auto paths = sample_inputs(collect_inputs(config.inputs), config.sample, config.seed);
  if (config.output_dir) {
    fs::create_directories(*config.output_dir);
  }

  std::vector<ImageOutcome> outcomes(paths.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(paths.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < paths.size(); ++i) {
      outcomes[i] = evaluate_image(paths[i], variants, config, write_images);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < paths.size(); i = next++) {
          outcomes[i] = evaluate_image(paths[i], variants, config, write_images);
        }
      });
    }
  }

  SuiteResult result;
  for (auto& outcome : outcomes) {
    for (auto& f : outcome.failures) {
      result.failures.push_back(std::move(f));
    }
    for (auto& row : outcome.rows) {
      if (row) {
        result.rows.push_back(*row);
      }
    }
  }
  for (std::size_t k = 0; k < variants.size(); ++k) {
    std::vector<const BenchRow*> group;
    for (const auto& outcome : outcomes) {
      if (outcome.rows[k]) {
        group.push_back(&*outcome.rows[k]);
      }
    }
    if (!group.empty()) {
      result.means.push_back(mean_row(variants[k].algorithm, group));
    }
  }
  result.csv = format_csv(result, config);
  if (config.output_dir) {
    const fs::path report = *config.output_dir / config.report_name;
    std::ofstream out(report, std::ios::binary);
    out << result.csv;
    if (!out) {
      throw IoError(fmt::format("{}: cannot write report", report.string()));
    }
  }
  return result;
}

}  // namespace

std::string_view algorithm_id(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::Original: return "original";
    case Algorithm::Ghe: return "ghe";
    case Algorithm::Clahe: return "clahe";
    case Algorithm::Gclahe: return "gclahe";
  }
  return "unknown";
}

std::vector<Algorithm> parse_algorithms(std::string_view spec) {
  std::vector<Algorithm> out;
  auto add = [&out](Algorithm a) {
    if (std::find(out.begin(), out.end(), a) == out.end()) {
      out.push_back(a);
    }
  };
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t comma = std::min(spec.find(',', pos), spec.size());
    const std::string_view item = spec.substr(pos, comma - pos);
    pos = comma + 1;
    if (item == "all") {
      add(Algorithm::Ghe);
      add(Algorithm::Clahe);
      add(Algorithm::Gclahe);
      continue;
    }
    bool found = false;
    for (Algorithm a : {Algorithm::Original, Algorithm::Ghe, Algorithm::Clahe,
                        Algorithm::Gclahe}) {
      if (algorithm_id(a) == item) {
        add(a);
        found = true;
      }
    }
    if (!found) {
      throw ParameterError(fmt::format(
          "unknown algorithm '{}'; valid: all, original, ghe, clahe, gclahe", item));
    }
  }
  return out;
}

void RunConfig::validate() const {
  if (inputs.empty()) {
    throw ParameterError("no input paths given");
  }
  if (algorithms.empty()) {
    throw ParameterError("no algorithm selected");
  }
  if (sample && *sample < 1) {
    throw ParameterError("sample size must be >= 1");
  }
  if (canny_low > canny_high || canny_low < 0.0) {
    throw ParameterError(
        fmt::format("invalid canny thresholds ({}, {})", canny_low, canny_high));
  }
}

int SuiteResult::exit_code() const {
  if (rows.empty()) {
    return 3;
  }
  return failures.empty() ? 0 : 2;
}

std::vector<fs::path> collect_inputs(std::span<const fs::path> inputs) {
  std::vector<fs::path> files;
  for (const fs::path& p : inputs) {
    if (fs::is_directory(p)) {
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && is_supported_image(entry.path())) {
          files.push_back(entry.path());
        }
      }
    } else {
      // Missing or unreadable files surface later as per-image failures.
      files.push_back(p);
    }
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  if (files.empty()) {
    throw IoError("input set is empty: no supported images found");
  }
  return files;
}

std::vector<fs::path> sample_inputs(std::vector<fs::path> sorted,
                                    std::optional<std::size_t> sample, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = sorted.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(sorted[i - 1], sorted[j]);
  }
  if (sample && *sample < sorted.size()) {
    sorted.resize(*sample);
  }
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

SuiteResult run_suite(const RunConfig& config) {
  std::vector<Variant> variants;
  for (Algorithm a : config.algorithms) {
    variants.push_back(make_variant(a, config));
  }
  return evaluate(config, variants, true);
}

SuiteResult sweep_tile_size(const RunConfig& config, std::span<const int> sizes) {
  if (sizes.empty()) {
    throw ParameterError("no tile sizes given");
  }
  std::vector<Variant> variants;
  for (int ts : sizes) {
    RunConfig c = config;
    c.gclahe.grid = ts;
    variants.push_back(make_variant(Algorithm::Gclahe, c));
  }
  return evaluate(config, variants, false);
}

SuiteResult sweep_metric(const RunConfig& config, std::span<const Metric> metrics) {
  if (metrics.empty()) {
    throw ParameterError("no metrics given");
  }
  std::vector<Variant> variants;
  for (Metric m : metrics) {
    RunConfig c = config;
    c.gclahe.scorer = SimilarityScorer(m);
    variants.push_back(make_variant(Algorithm::Gclahe, c));
  }
  return evaluate(config, variants, false);
}

std::string format_csv(const SuiteResult& result, const RunConfig& config) {
  std::string out = fmt::format(
      "# {} seed={} sample={} canny_low={:g} canny_high={:g}\n", kCsvSchema, config.seed,
      config.sample ? std::to_string(*config.sample) : std::string("all"), config.canny_low,
      config.canny_high);
  out += kCsvHeader;
  out += '\n';
  for (const BenchRow& r : result.rows) {
    append_row(out, r, false);
  }
  for (const BenchRow& r : result.means) {
    append_row(out, r, true);
  }
  return out;
}

std::string format_metric_table(const SuiteResult& result) {
  std::string header = fmt::format("{:<14}", "");
  std::string counts = fmt::format("{:<14}", "Edge Count");
  std::string density = fmt::format("{:<14}", "Edge Density");
  for (const BenchRow& m : result.means) {
    std::string label = m.metric.value_or("?");
    std::transform(label.begin(), label.end(), label.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    header += fmt::format("{:>14}", label);
    counts += fmt::format("{:>14.2f}", m.edge_count);
    density += fmt::format("{:>14.4f}", m.edge_density);
  }
  return header + "\n" + counts + "\n" + density + "\n";
}

}  // namespace gclahe
