#include "gclahe/gclahe.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "gclahe/ghe.hpp"

namespace gclahe {

std::string_view termination_name(Termination t) noexcept {
  return t == Termination::ScoreDrop ? "score-drop" : "iteration-cap";
}

std::size_t IterationTrace::accepted_count() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(),
                    [](const IterationRecord& r) { return r.accepted; }));
}

GclaheResult run_gclahe(const GrayImage& image, const GclaheParams& params) {
  if (!std::isfinite(params.initial_clip_factor)) {
    throw ParameterError("initial clip factor must be finite");
  }
  ClaheParams{params.grid, params.initial_clip_factor}.validate(image.width(),
                                                               image.height());

  IterationTrace trace;
  trace.metric = params.scorer.label();
  trace.grid = params.grid;

  GrayImage lei = image;
  GrayImage gei = ghe(lei);
  MetricScore prev = params.scorer.score(gei, lei);
  trace.initial_score = prev.value;

  double clip_factor = params.initial_clip_factor;
  const int max_iterations = params.grid * params.grid - 1;
  int n = 0;
  while (n < max_iterations) {
    gei = ghe(lei);
    GrayImage candidate =
        clahe(params.enhance_original ? image : lei, ClaheParams{params.grid, clip_factor});
    const MetricScore f = params.scorer.score(gei, candidate);
    const bool accepted = f.improves_on(prev);
    trace.records.push_back({n, clip_factor, f.value, accepted});
    if (!accepted) {
      trace.termination = Termination::ScoreDrop;
      trace.chosen_clip_factor = clip_factor - 1.0;
      trace.final_score = prev.value;
      return {std::move(lei), trace.chosen_clip_factor, std::move(trace)};
    }
    prev = f;
    lei = std::move(candidate);
    clip_factor += 1.0;
    ++n;
  }

  // Loop exhausted: every iteration was accepted, so the last accepted factor
  // is the current one minus the final increment.
  trace.termination = Termination::IterationCap;
  trace.last_iteration_index = n - 1;
  trace.chosen_clip_factor = clip_factor - 1.0;
  trace.final_score = prev.value;
  return {std::move(lei), trace.chosen_clip_factor, std::move(trace)};
}

std::string explain_trace(const IterationTrace& trace) {
  std::string out = fmt::format("metric={} grid={} initial_score={:.6f}\n", trace.metric,
                                trace.grid, trace.initial_score);
  out += fmt::format("{:>4}  {:>11}  {:>6}  {:>14}  {}\n", "N", "clip_factor", "metric",
                     "score", "accepted");
  for (const auto& r : trace.records) {
    out += fmt::format("{:>4}  {:>11g}  {:>6}  {:>14.6f}  {}\n", r.iteration, r.clip_factor,
                       trace.metric, r.score, r.accepted ? "yes" : "no");
  }
  const int stopped_at =
      trace.records.empty() ? 0 : trace.records.back().iteration;
  out += fmt::format("terminated: {} at iteration {}; chosen clip factor {:g}; final score {:.6f}\n",
                     termination_name(trace.termination), stopped_at,
                     trace.chosen_clip_factor, trace.final_score);
  return out;
}

}  // namespace gclahe
