#include <doctest.h>

#include <cmath>

#include "gclahe/simmetrics.hpp"
#include "oracles.hpp"

using namespace gclahe;

namespace {

GrayImage px1(std::uint8_t v) { return GrayImage(1, 1, v); }

}  // namespace

TEST_CASE("metric ids round-trip") {
  for (Metric m : kAllMetrics) {
    CHECK(parse_metric(metric_id(m)) == m);
  }
  try {
    parse_metric("ncc");
    FAIL("expected ParameterError");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("ssim, psnr, mse, sci, rmse, mae") != std::string::npos);
  }
}

TEST_CASE("single-pixel extremes") {
  CHECK(mse(px1(0), px1(255)) == 65025.0);
  CHECK(rmse(px1(0), px1(255)) == 255.0);
  CHECK(mae(px1(0), px1(255)) == 255.0);
  CHECK(psnr(px1(0), px1(255)) == doctest::Approx(0.0));
  CHECK(psnr(px1(9), px1(9)) == kPsnrCapDb);
  CHECK(mse(px1(9), px1(9)) == 0.0);
}

TEST_CASE("shape mismatch is rejected") {
  const GrayImage a(4, 4), b(4, 5);
  CHECK_THROWS_AS(mse(a, b), DimensionError);
  CHECK_THROWS_AS(mae(a, b), DimensionError);
  CHECK_THROWS_AS(psnr(a, b), DimensionError);
  CHECK_THROWS_AS(ssim(a, b), DimensionError);
  CHECK_THROWS_AS(structural_content(a, b), DimensionError);
}

TEST_CASE("structural content") {
  const GrayImage a(3, 3, 40), b(3, 3, 80);
  CHECK(structural_content(a, a) == 1.0);
  CHECK(structural_content(a, b) == doctest::Approx(0.25));
  CHECK_THROWS_AS(structural_content(a, GrayImage(3, 3, 0)), ParameterError);
  CHECK(SimilarityScorer(Metric::Sci).score(a, a).value == 0.0);
  CHECK(SimilarityScorer(Metric::Sci).score(a, b).value == doctest::Approx(-0.75));
}

TEST_CASE("ssim of constant images has the closed form of the luminance term") {
  const double c1 = (0.01 * 255) * (0.01 * 255);
  const double want = (2.0 * 100 * 101 + c1) / (100.0 * 100 + 101.0 * 101 + c1);
  CHECK(ssim(GrayImage(16, 12, 100), GrayImage(16, 12, 101)) == doctest::Approx(want).epsilon(1e-12));
  CHECK(ssim(GrayImage(5, 3, 100), GrayImage(5, 3, 101)) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("metrics match direct-loop oracles") {
  oracle::Gen gen(41);
  for (int i = 0; i < 60; ++i) {
    const int w = gen.uniform(1, 40), h = gen.uniform(1, 40);
    const GrayImage a = gen.image(w, h), b = gen.image(w, h);
    const double m = oracle::mse(a, b);
    CHECK(mse(a, b) == doctest::Approx(m).epsilon(1e-12));
    CHECK(rmse(a, b) == doctest::Approx(std::sqrt(m)).epsilon(1e-12));
    CHECK(mae(a, b) == doctest::Approx(oracle::mae(a, b)).epsilon(1e-12));
    if (m > 0) {
      const double p = std::min(10 * std::log10(255.0 * 255.0 / m), kPsnrCapDb);
      CHECK(psnr(a, b) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK(std::abs(ssim(a, b) - oracle::ssim(a, b)) <= 1e-9);
    if (*std::max_element(b.pixels().begin(), b.pixels().end()) > 0) {
      CHECK(structural_content(a, b) == doctest::Approx(oracle::structural_content(a, b)).epsilon(1e-12));
    }
  }
}

TEST_CASE("symmetry, bounds and identity maxima") {
  oracle::Gen gen(42);
  for (int i = 0; i < 80; ++i) {
    const int w = gen.uniform(2, 30), h = gen.uniform(2, 30);
    GrayImage a = gen.image(w, h), b = gen.image(w, h);
    a.at(0, 0) = std::max<std::uint8_t>(a.at(0, 0), 1);
    b.at(0, 0) = std::max<std::uint8_t>(b.at(0, 0), 1);
    CHECK(mse(a, b) == mse(b, a));
    CHECK(mae(a, b) == mae(b, a));
    CHECK(psnr(a, b) == psnr(b, a));
    CHECK(ssim(a, b) == doctest::Approx(ssim(b, a)).epsilon(1e-12));
    const double s = ssim(a, b);
    CHECK(s >= -1.0);
    CHECK(s <= 1.0);
    CHECK(std::abs(ssim(a, a) - 1.0) <= 1e-9);
    const double r = rmse(a, b);
    CHECK(std::abs(r * r - mse(a, b)) <= 1e-9 * std::max(1.0, mse(a, b)));
    for (Metric m : kAllMetrics) {
      const SimilarityScorer sc(m);
      CHECK(sc.score(a, a).value >= sc.score(a, b).value);
    }
  }
}

TEST_CASE("dissimilarity metrics are negated") {
  oracle::Gen gen(43);
  const GrayImage a = gen.image(12, 12), b = gen.image(12, 12);
  CHECK(SimilarityScorer(Metric::Mse).score(a, b).value == -mse(a, b));
  CHECK(SimilarityScorer(Metric::Rmse).score(a, b).value == -rmse(a, b));
  CHECK(SimilarityScorer(Metric::Mae).score(a, b).value == -mae(a, b));
  CHECK(SimilarityScorer(Metric::Psnr).score(a, b).value == psnr(a, b));
  CHECK(SimilarityScorer(Metric::Ssim).score(a, b).value == ssim(a, b));
  CHECK(SimilarityScorer(Metric::Mse).score(a, a).value == 0.0);
}

TEST_CASE("psnr strictly decreases as mse grows") {
  GrayImage ref(16, 16, 100);
  double last = psnr(ref, ref);
  for (int d = 1; d <= 155; ++d) {
    const double p = psnr(ref, GrayImage(16, 16, static_cast<std::uint8_t>(100 + d)));
    CHECK(p < last);
    last = p;
  }
}

TEST_CASE("scores from different scorers do not compare") {
  const GrayImage a(8, 8, 3);
  const MetricScore s = SimilarityScorer(Metric::Ssim).score(a, a);
  const MetricScore p = SimilarityScorer(Metric::Psnr).score(a, a);
  CHECK_THROWS_AS(s.improves_on(p), ParameterError);
  CHECK_FALSE(s.improves_on(s));
  const auto c = SimilarityScorer::custom("const", [](const GrayImage&, const GrayImage&) { return 1.0; });
  CHECK(c.label() == "const");
  CHECK_FALSE(c.metric().has_value());
  CHECK(c.score(a, a).value == 1.0);
}
