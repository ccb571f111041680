#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "gclahe/bench.hpp"
#include "gclahe/clahe.hpp"
#include "gclahe/gclahe.hpp"
#include "gclahe/ghe.hpp"
#include "gclahe/io.hpp"
#include "gclahe/simmetrics.hpp"

namespace fs = std::filesystem;
using namespace gclahe;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitTotal = 3;

struct Options {
  std::vector<std::string> inputs;
  std::string output;
  std::string algo = "gclahe";
  std::string algos = "all";
  int ts = 8;
  std::string clip = "2";
  double initial_clip = 3.0;
  std::string metric = "ssim";
  std::vector<int> sizes{4, 8, 16, 32};
  std::string metrics = "ssim,psnr,mse,sci,rmse,mae";
  double canny_low = kDefaultCannyLow;
  double canny_high = kDefaultCannyHigh;
  std::uint64_t seed = 0;
  std::optional<std::size_t> sample;
  std::string report = "bench.csv";
  unsigned jobs = 1;
  bool enhance_original = false;
};

double parse_clip(const std::string& s) {
  if (s == "unlimited" || s == "inf") {
    return kUnlimitedClip;
  }
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) {
    throw ParameterError(fmt::format("invalid clip factor '{}'", s));
  }
  return v;
}

std::vector<Metric> parse_metric_list(const std::string& s) {
  std::vector<Metric> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    out.push_back(parse_metric(std::string_view(s).substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

GclaheParams gclahe_params(const Options& o) {
  GclaheParams p;
  p.grid = o.ts;
  p.initial_clip_factor = o.initial_clip;
  p.scorer = SimilarityScorer(parse_metric(o.metric));
  p.enhance_original = o.enhance_original;
  return p;
}

RunConfig run_config(const Options& o) {
  RunConfig c;
  for (const auto& in : o.inputs) {
    c.inputs.emplace_back(in);
  }
  if (!o.output.empty()) {
    c.output_dir = fs::path(o.output);
  }
  c.algorithms = parse_algorithms(o.algos);
  c.clahe = ClaheParams{o.ts, parse_clip(o.clip)};
  c.gclahe = gclahe_params(o);
  c.canny_low = o.canny_low;
  c.canny_high = o.canny_high;
  c.sample = o.sample;
  c.seed = o.seed;
  c.report_name = o.report;
  c.jobs = o.jobs;
  return c;
}

int report(const SuiteResult& result, bool metric_table) {
  std::fputs(result.csv.c_str(), stdout);
  if (metric_table) {
    std::fputs(format_metric_table(result).c_str(), stderr);
  }
  for (const auto& f : result.failures) {
    fmt::print(stderr, "failed: {} [{}]: {}\n", f.image, f.algorithm, f.reason);
  }
  return result.exit_code();
}

int run_enhance(const Options& o) {
  if (o.inputs.size() != 1 || o.output.empty()) {
    fmt::print(stderr, "enhance: exactly one input and --out FILE are required\n");
    return kExitUsage;
  }
  const GrayImage image = ingest(o.inputs.front());
  const auto algos = parse_algorithms(o.algo);
  if (algos.size() != 1) {
    fmt::print(stderr, "enhance: --algo takes a single algorithm\n");
    return kExitUsage;
  }
  GrayImage out = image;
  switch (algos.front()) {
    case Algorithm::Original:
      break;
    case Algorithm::Ghe:
      out = ghe(image);
      break;
    case Algorithm::Clahe:
      out = clahe(image, ClaheParams{o.ts, parse_clip(o.clip)});
      break;
    case Algorithm::Gclahe: {
      GclaheResult r = run_gclahe(image, gclahe_params(o));
      fmt::print(stderr, "clip factor {:g}, {} {:.6f}\n", r.clip_factor, r.trace.metric,
                 r.trace.final_score);
      out = std::move(r.image);
      break;
    }
  }
  write_image(o.output, out);
  return 0;
}

int run_trace(const Options& o) {
  if (o.inputs.size() != 1) {
    fmt::print(stderr, "trace: exactly one input is required\n");
    return kExitUsage;
  }
  const GclaheResult r = run_gclahe(ingest(o.inputs.front()), gclahe_params(o));
  std::fputs(explain_trace(r.trace).c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Global and contrast-limited adaptive histogram equalization"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* cmd) {
    cmd->add_option("inputs", o.inputs, "Input images or directories")->required();
    cmd->add_option("--ts", o.ts, "Tiles per axis")->capture_default_str();
    cmd->add_option("--metric", o.metric, "Similarity metric for G-CLAHE")
        ->capture_default_str();
    cmd->add_option("--initial-clip", o.initial_clip, "First G-CLAHE clip factor")
        ->capture_default_str();
    cmd->add_flag("--enhance-original", o.enhance_original,
                  "G-CLAHE candidates are built from the input, not the running result");
  };
  auto batch = [&o](CLI::App* cmd) {
    cmd->add_option("--out", o.output, "Output directory");
    cmd->add_option("--clip", o.clip, "CLAHE clip factor, or 'unlimited'")
        ->capture_default_str();
    cmd->add_option("--canny-low", o.canny_low)->capture_default_str();
    cmd->add_option("--canny-high", o.canny_high)->capture_default_str();
    cmd->add_option("--seed", o.seed)->capture_default_str();
    cmd->add_option("--sample", o.sample, "Evaluate a seeded random subset of N images");
    cmd->add_option("--report", o.report, "CSV file name inside --out")->capture_default_str();
    cmd->add_option("--jobs", o.jobs)->check(CLI::Range(1u, 256u))->capture_default_str();
  };

  auto* enhance = app.add_subcommand("enhance", "Enhance one image");
  common(enhance);
  enhance->add_option("--out", o.output, "Output file (.png or .pgm)");
  enhance->add_option("--algo", o.algo, "original, ghe, clahe or gclahe")
      ->capture_default_str();
  enhance->add_option("--clip", o.clip, "CLAHE clip factor, or 'unlimited'")
      ->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Enhance and evaluate a set of images");
  common(bench);
  batch(bench);
  bench->add_option("--algo", o.algos, "'all' or a comma list; 'original' is opt-in")
      ->capture_default_str();

  auto* sweep_tiles = app.add_subcommand("sweep-tiles", "G-CLAHE at several tile grids");
  common(sweep_tiles);
  batch(sweep_tiles);
  sweep_tiles->add_option("--sizes", o.sizes)->delimiter(',')->capture_default_str();

  auto* sweep_metrics = app.add_subcommand("sweep-metrics", "G-CLAHE with several scorers");
  common(sweep_metrics);
  batch(sweep_metrics);
  sweep_metrics->add_option("--metrics", o.metrics)->capture_default_str();

  auto* trace = app.add_subcommand("trace", "Print the G-CLAHE iteration table");
  common(trace);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (enhance->parsed()) {
      return run_enhance(o);
    }
    if (trace->parsed()) {
      return run_trace(o);
    }
    const RunConfig config = run_config(o);
    if (bench->parsed()) {
      return report(run_suite(config), false);
    }
    if (sweep_tiles->parsed()) {
      return report(sweep_tile_size(config, o.sizes), false);
    }
    const auto metrics = parse_metric_list(o.metrics);
    return report(sweep_metric(config, metrics), true);
  } catch (const ParameterError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitTotal;
  }
}
