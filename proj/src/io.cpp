#include "gclahe/io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>

#include <fmt/format.h>

namespace gclahe {

namespace fs = std::filesystem;

namespace {

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(fmt::format("{}: cannot open file", path.string()));
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class PnmReader {
 public:
  PnmReader(std::span<const std::uint8_t> bytes, std::string_view source)
      : bytes_(bytes), source_(source) {}

  [[noreturn]] void fail(std::string_view why) const {
    throw IoError(fmt::format("{}: {}", source_, why));
  }

  // Next header integer, skipping whitespace and '#' comments.
  long next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      fail("malformed PNM header");
    }
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > (1L << 30)) {
        fail("PNM header value out of range");
      }
    }
    return v;
  }

  // Exactly one whitespace byte separates the header from raster data.
  void end_header() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      fail("missing whitespace after PNM header");
    }
    ++pos_;
  }

  int next_binary_sample(bool wide) {
    const std::size_t need = wide ? 2 : 1;
    if (pos_ + need > bytes_.size()) {
      fail("truncated PNM raster");
    }
    int v = bytes_[pos_];
    if (wide) {
      v = (v << 8) | bytes_[pos_ + 1];
    }
    pos_ += need;
    return v;
  }

  void advance(std::size_t n) noexcept { pos_ += n; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') {
          ++pos_;
        }
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::string_view source_;
  std::size_t pos_ = 0;
};

struct PngReadState {
  std::vector<std::uint8_t> raw;
  std::vector<png_bytep> rows;
  std::vector<std::uint8_t> gray;
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  std::string error;
};

void png_error_handler(png_structp png, png_const_charp msg) {
  auto* state = static_cast<PngReadState*>(png_get_error_ptr(png));
  state->error = msg;
  png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

// libpng reports errors through longjmp. Nothing with a destructor lives in
// this frame; all buffers hang off the heap-allocated `state`.
bool read_png_file(std::FILE* fp, PngReadState* state) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, state, png_error_handler,
                                           png_warning_handler);
  if (png == nullptr) {
    state->error = "cannot allocate PNG reader";
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    state->error = "cannot allocate PNG info";
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_init_io(png, fp);
  png_read_info(png, info);

  const int color_type = png_get_color_type(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) {
    png_set_palette_to_rgb(png);
  }
  if (color_type == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  png_set_strip_16(png);  // keeps the high byte: a right shift of 8
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  state->width = png_get_image_width(png, info);
  state->height = png_get_image_height(png, info);
  const int channels = png_get_channels(png, info);
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  state->raw.resize(rowbytes * state->height);
  state->rows.resize(state->height);
  for (png_uint_32 y = 0; y < state->height; ++y) {
    state->rows[y] = state->raw.data() + y * rowbytes;
  }
  png_read_image(png, state->rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  const std::size_t n = static_cast<std::size_t>(state->width) * state->height;
  state->gray.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t* p = state->raw.data() + i * channels;
    state->gray[i] = channels >= 3 ? luma(p[0], p[1], p[2]) : p[0];
  }
  return true;
}

GrayImage read_png(const fs::path& path) {
  std::unique_ptr<std::FILE, decltype(&std::fclose)> fp(std::fopen(path.c_str(), "rb"),
                                                        &std::fclose);
  if (!fp) {
    throw IoError(fmt::format("{}: cannot open file", path.string()));
  }
  auto state = std::make_unique<PngReadState>();
  if (!read_png_file(fp.get(), state.get())) {
    throw IoError(fmt::format("{}: invalid PNG ({})", path.string(), state->error));
  }
  if (state->width == 0 || state->height == 0) {
    throw IoError(fmt::format("{}: zero-dimension image", path.string()));
  }
  return GrayImage(static_cast<int>(state->width), static_cast<int>(state->height),
                   std::move(state->gray));
}

}  // namespace

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
  const unsigned weighted = 299u * r + 587u * g + 114u * b;
  return static_cast<std::uint8_t>((weighted + 500u) / 1000u);
}

bool is_supported_image(const fs::path& path) {
  const std::string ext = lower_extension(path);
  return ext == ".pgm" || ext == ".pnm" || ext == ".ppm" || ext == ".png";
}

GrayImage decode_pnm(std::span<const std::uint8_t> bytes, std::string_view source) {
  PnmReader rd(bytes, source);
  if (bytes.size() < 2 || bytes[0] != 'P') {
    rd.fail("not a PNM file");
  }
  const char kind = static_cast<char>(bytes[1]);
  if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
    rd.fail(fmt::format("unsupported PNM type P{}", kind));
  }
  rd.advance(2);
  const long width = rd.next_int();
  const long height = rd.next_int();
  const long maxval = rd.next_int();
  if (width == 0 || height == 0) {
    rd.fail("zero-dimension image");
  }
  if (maxval < 1 || maxval > 65535) {
    rd.fail(fmt::format("invalid maxval {}", maxval));
  }
  const bool color = kind == '3' || kind == '6';
  const bool binary = kind == '5' || kind == '6';
  const bool wide = maxval > 255;
  const int shift = wide ? 8 : 0;

  auto sample = [&]() -> int {
    const int v = binary ? rd.next_binary_sample(wide) : static_cast<int>(rd.next_int());
    if (v > maxval) {
      rd.fail("sample exceeds maxval");
    }
    return v >> shift;
  };

  if (binary) {
    rd.end_header();
  }
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  const std::size_t min_bytes = n * (color ? 3 : 1) * (wide && binary ? 2 : 1);
  if (min_bytes > bytes.size()) {
    rd.fail("truncated PNM raster");
  }
  std::vector<std::uint8_t> px(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (color) {
      const int r = sample();
      const int g = sample();
      const int b = sample();
      px[i] = luma(static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                   static_cast<std::uint8_t>(b));
    } else {
      px[i] = static_cast<std::uint8_t>(sample());
    }
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(px));
}

GrayImage ingest(const fs::path& path) {
  if (!fs::exists(path)) {
    throw IoError(fmt::format("{}: no such file", path.string()));
  }
  if (lower_extension(path) == ".png") {
    return read_png(path);
  }
  const auto bytes = read_file(path);
  if (bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0) {
    return read_png(path);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P') {
    return decode_pnm(bytes, path.string());
  }
  throw IoError(fmt::format("{}: unsupported image format", path.string()));
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& image) {
  const std::string header = fmt::format("P5\n{} {}\n255\n", image.width(), image.height());
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels().begin(), image.pixels().end());
  return out;
}

void write_pgm(const fs::path& path, const GrayImage& image) {
  const auto bytes = encode_pgm(image);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError(fmt::format("{}: cannot open for writing", path.string()));
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError(fmt::format("{}: write failed", path.string()));
  }
}

void write_png(const fs::path& path, const GrayImage& image) {
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(image.width());
  img.height = static_cast<png_uint_32>(image.height());
  img.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&img, path.c_str(), 0, image.pixels().data(), 0, nullptr)) {
    throw IoError(fmt::format("{}: PNG write failed ({})", path.string(), img.message));
  }
}

void write_image(const fs::path& path, const GrayImage& image) {
  if (lower_extension(path) == ".png") {
    write_png(path, image);
  } else {
    write_pgm(path, image);
  }
}

}  // namespace gclahe
