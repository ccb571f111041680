#include <doctest.h>

#include <algorithm>

#include "gclahe/ghe.hpp"
#include "oracles.hpp"

using namespace gclahe;

TEST_CASE("round_to_level rounds halves away from zero") {
  CHECK(round_to_level(0.5) == 1);
  CHECK(round_to_level(1.49) == 1);
  CHECK(round_to_level(190.5) == 191);
  CHECK(round_to_level(254.5) == 255);
  CHECK(round_to_level(-3.0) == 0);
  CHECK(round_to_level(300.0) == 255);
}

TEST_CASE("constant image equalizes to white") {
  for (int level : {0, 1, 77, 255}) {
    const GrayImage out = ghe(GrayImage(5, 3, static_cast<std::uint8_t>(level)));
    CHECK(out == GrayImage(5, 3, 255));
  }
}

TEST_CASE("two-level image 75/25") {
  std::vector<std::uint8_t> px(16, 10);
  for (int i = 0; i < 4; ++i) px[i * 4] = 200;
  const GrayImage out = ghe(GrayImage(4, 4, px));
  for (std::size_t i = 0; i < px.size(); ++i) {
    CHECK(out.pixels()[i] == (px[i] == 10 ? 191 : 255));
  }
}

TEST_CASE("uniform histogram is a near-identity") {
  NormalizedCdf n;
  for (int i = 0; i < 256; ++i) n.values[i] = (i + 1) / 256.0;
  const MappingLut lut = build_equalization_lut(n);
  for (int i = 0; i < 256; ++i) {
    CHECK((lut.table[i] == i || lut.table[i] == i + 1));
  }

  std::vector<std::uint8_t> px(256);
  for (int i = 0; i < 256; ++i) px[i] = static_cast<std::uint8_t>(i);
  const GrayImage img(16, 16, px);
  const GrayImage out = ghe(img);
  for (int i = 0; i < 256; ++i) {
    CHECK(std::abs(int(out.pixels()[i]) - i) <= 1);
  }
}

TEST_CASE("apply_lut identity and zero maps") {
  oracle::Gen gen(21);
  const GrayImage img = gen.image(9, 7);
  CHECK(apply_lut(img, MappingLut::identity()) == img);
  CHECK(apply_lut(img, MappingLut{}) == GrayImage(9, 7, 0));
}

TEST_CASE("ghe matches the brute-force oracle") {
  oracle::Gen gen(22);
  for (int i = 0; i < 80; ++i) {
    const GrayImage img = gen.image_upto(48);
    const MappingLut lut = equalization_lut(compute_histogram(img));
    CHECK(lut.table == oracle::equalize_lut(oracle::histogram(img)));
    CHECK(ghe(img) == oracle::ghe(img));
  }
}

TEST_CASE("random monotone lut matches per-pixel lookup") {
  oracle::Gen gen(23);
  for (int i = 0; i < 30; ++i) {
    MappingLut lut;
    for (auto& v : lut.table) v = static_cast<std::uint8_t>(gen.uniform(0, 255));
    std::sort(lut.table.begin(), lut.table.end());
    const GrayImage img = gen.image_upto(30);
    CHECK(apply_lut(img, lut) == oracle::apply_table(img, lut.table));
  }
}

TEST_CASE("ghe properties on random images") {
  oracle::Gen gen(24);
  for (int i = 0; i < 150; ++i) {
    const GrayImage img = gen.image_upto(40);
    const MappingLut lut = equalization_lut(compute_histogram(img));
    CHECK(std::is_sorted(lut.table.begin(), lut.table.end()));

    const GrayImage out = ghe(img);
    CHECK(*std::max_element(out.pixels().begin(), out.pixels().end()) == 255);

    // Rank preservation on random pixel pairs.
    for (int k = 0; k < 50; ++k) {
      const auto p = static_cast<std::size_t>(gen.uniform(0, int(img.pixel_count()) - 1));
      const auto q = static_cast<std::size_t>(gen.uniform(0, int(img.pixel_count()) - 1));
      if (img.pixels()[p] < img.pixels()[q]) {
        CHECK(out.pixels()[p] <= out.pixels()[q]);
      }
    }

    const GrayImage twice = ghe(out);
    for (std::size_t k = 0; k < out.pixel_count(); ++k) {
      CHECK(std::abs(int(twice.pixels()[k]) - int(out.pixels()[k])) <= 1);
    }
  }
}
