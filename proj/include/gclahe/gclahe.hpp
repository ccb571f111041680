#pragma once

#include <string>
#include <vector>

#include "gclahe/clahe.hpp"
#include "gclahe/image.hpp"
#include "gclahe/simmetrics.hpp"

namespace gclahe {

struct GclaheParams {
  int grid = 8;
  double initial_clip_factor = 3.0;
  SimilarityScorer scorer{Metric::Ssim};
  // When set, every candidate is CLAHE of the original input rather than of
  // the current locally enhanced image. Off by default.
  bool enhance_original = false;
};

enum class Termination { ScoreDrop, IterationCap };

std::string_view termination_name(Termination t) noexcept;

struct IterationRecord {
  int iteration = 0;
  double clip_factor = 0.0;
  double score = 0.0;
  bool accepted = false;
};

/// Bookkeeping of one search run.
struct IterationTrace {
  std::string metric;
  int grid = 0;
  double initial_score = 0.0;  // score(GHE(I), I) before the first iteration
  std::vector<IterationRecord> records;
  double chosen_clip_factor = 0.0;
  double final_score = 0.0;
  Termination termination = Termination::IterationCap;
  // Value of N - 1 at the end of the loop; only meaningful on IterationCap.
  int last_iteration_index = -1;

  std::size_t accepted_count() const;
};

struct GclaheResult {
  GrayImage image;
  double clip_factor;
  IterationTrace trace;
};

/// Iterative clip-factor search. Starting from LEI = I, repeatedly applies
/// CLAHE to LEI with a clip factor that grows by one per step, keeping each
/// candidate only while it scores strictly more similar to GHE(LEI) than the
/// previously kept image. Stops at the first non-improving candidate or after
/// grid*grid - 1 iterations.
GclaheResult run_gclahe(const GrayImage& image, const GclaheParams& params = {});

/// Per-iteration table: N, clip factor, metric, score, accepted.
std::string explain_trace(const IterationTrace& trace);

}  // namespace gclahe
