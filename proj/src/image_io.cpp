#include "vpscale/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>
#include <vector>

namespace vpscale {

namespace {

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

bool is_lossy_extension(const std::string& ext) {
  return ext == ".jpg" || ext == ".jpeg" || ext == ".jpe" || ext == ".jfif" || ext == ".webp";
}

bool is_pnm_extension(const std::string& ext) { return ext == ".ppm" || ext == ".pgm" || ext == ".pnm"; }

IoError io_error(const std::filesystem::path& path, const std::string& what) {
  return IoError(path.string() + ": " + what);
}

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// Decoded samples, interleaved, row-major.
struct RawImage {
  int width = 0;
  int height = 0;
  int channels = 0;
  int max_f = 255;
  std::vector<std::uint16_t> samples;
};

RasterImage to_raster(const RawImage& raw) {
  std::vector<ImagePlane> planes;
  for (int c = 0; c < raw.channels; ++c) {
    Eigen::MatrixXd d(raw.height, raw.width);
    for (int i = 0; i < raw.height; ++i)
      for (int j = 0; j < raw.width; ++j)
        d(i, j) = raw.samples[(static_cast<std::size_t>(i) * raw.width + j) * raw.channels + c];
    planes.emplace_back(std::move(d));
  }
  return RasterImage(std::move(planes), raw.max_f);
}

// ---- PNG ------------------------------------------------------------------

struct PngErrorState {
  std::jmp_buf jump;
  char message[256] = {};
};

void png_error_handler(png_structp png, png_const_charp msg) {
  auto* state = static_cast<PngErrorState*>(png_get_error_ptr(png));
  std::snprintf(state->message, sizeof(state->message), "%s", msg);
  std::longjmp(state->jump, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

// Everything touched after setjmp is owned by the caller, so a longjmp never
// skips a destructor.
bool read_png(std::FILE* file, RawImage& out, std::vector<png_bytep>& rows, std::vector<png_byte>& buffer,
              PngErrorState& state) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &state, png_error_handler, png_warning_handler);
  if (png == nullptr) {
    std::snprintf(state.message, sizeof(state.message), "cannot allocate PNG reader");
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr || setjmp(state.jump)) {
    png_destroy_read_struct(&png, info != nullptr ? &info : nullptr, nullptr);
    return false;
  }
  png_init_io(png, file);
  png_read_info(png, info);

  const png_byte color = png_get_color_type(png, info);
  const png_byte depth = png_get_bit_depth(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
  png_read_update_info(png, info);

  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  out.channels = png_get_channels(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  out.max_f = bit_depth == 16 ? 65535 : 255;
  if (out.channels == 2) {
    std::snprintf(state.message, sizeof(state.message), "unsupported gray+alpha layout");
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }

  const std::size_t row_bytes = png_get_rowbytes(png, info);
  buffer.resize(row_bytes * static_cast<std::size_t>(out.height));
  rows.resize(static_cast<std::size_t>(out.height));
  for (int i = 0; i < out.height; ++i) rows[static_cast<std::size_t>(i)] = buffer.data() + row_bytes * i;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  const std::size_t count = static_cast<std::size_t>(out.width) * out.height * out.channels;
  out.samples.resize(count);
  if (bit_depth == 16) {
    for (std::size_t s = 0; s < count; ++s)
      out.samples[s] = static_cast<std::uint16_t>((buffer[2 * s] << 8) | buffer[2 * s + 1]);
  } else {
    for (std::size_t s = 0; s < count; ++s) out.samples[s] = buffer[s];
  }
  return true;
}

bool write_png(std::FILE* file, const RawImage& raw, std::vector<png_bytep>& rows, std::vector<png_byte>& buffer,
               PngErrorState& state) {
  const bool wide = raw.max_f > 255;
  const std::size_t bytes_per_sample = wide ? 2 : 1;
  const std::size_t row_bytes = static_cast<std::size_t>(raw.width) * raw.channels * bytes_per_sample;
  buffer.resize(row_bytes * static_cast<std::size_t>(raw.height));
  for (std::size_t s = 0; s < raw.samples.size(); ++s) {
    if (wide) {
      buffer[2 * s] = static_cast<png_byte>(raw.samples[s] >> 8);
      buffer[2 * s + 1] = static_cast<png_byte>(raw.samples[s] & 0xff);
    } else {
      buffer[s] = static_cast<png_byte>(raw.samples[s]);
    }
  }
  rows.resize(static_cast<std::size_t>(raw.height));
  for (int i = 0; i < raw.height; ++i) rows[static_cast<std::size_t>(i)] = buffer.data() + row_bytes * i;

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &state, png_error_handler, png_warning_handler);
  if (png == nullptr) {
    std::snprintf(state.message, sizeof(state.message), "cannot allocate PNG writer");
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr || setjmp(state.jump)) {
    png_destroy_write_struct(&png, info != nullptr ? &info : nullptr);
    return false;
  }
  int color = PNG_COLOR_TYPE_GRAY;
  if (raw.channels == 3) color = PNG_COLOR_TYPE_RGB;
  if (raw.channels == 4) color = PNG_COLOR_TYPE_RGBA;
  png_init_io(png, file);
  png_set_IHDR(png, info, static_cast<png_uint_32>(raw.width), static_cast<png_uint_32>(raw.height),
               wide ? 16 : 8, color, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

// ---- PNM ------------------------------------------------------------------

class PnmHeaderReader {
 public:
  PnmHeaderReader(const std::vector<unsigned char>& bytes, std::size_t pos) : bytes_(bytes), pos_(pos) {}

  bool next_int(long& value) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) return false;
    value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > 1'000'000'000L) return false;
    }
    return true;
  }

  // exactly one whitespace byte separates the header from the raster
  bool finish_header() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) return false;
    ++pos_;
    return true;
  }

  [[nodiscard]] std::size_t position() const { return pos_; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  std::size_t pos_;
};

RawImage decode_pnm(const std::vector<unsigned char>& bytes, const std::filesystem::path& path) {
  RawImage raw;
  raw.channels = bytes[1] == '6' ? 3 : 1;
  PnmHeaderReader header(bytes, 2);
  long width = 0, height = 0, maxval = 0;
  if (!header.next_int(width) || !header.next_int(height) || !header.next_int(maxval) || !header.finish_header())
    throw io_error(path, "malformed PNM header");
  if (width < 1 || height < 1) throw io_error(path, "PNM image has zero size");
  if (maxval < 1 || maxval > 65535) throw io_error(path, "PNM maxval out of range");
  raw.width = static_cast<int>(width);
  raw.height = static_cast<int>(height);
  raw.max_f = static_cast<int>(maxval);

  const std::size_t count = static_cast<std::size_t>(width) * height * raw.channels;
  const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
  const std::size_t start = header.position();
  if (bytes.size() < start + count * bytes_per_sample) throw io_error(path, "truncated PNM raster");
  raw.samples.resize(count);
  for (std::size_t s = 0; s < count; ++s) {
    const std::uint16_t v = bytes_per_sample == 2
                                ? static_cast<std::uint16_t>((bytes[start + 2 * s] << 8) | bytes[start + 2 * s + 1])
                                : bytes[start + s];
    if (v > maxval) throw io_error(path, "PNM sample exceeds maxval");
    raw.samples[s] = v;
  }
  return raw;
}

std::vector<unsigned char> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(path, "cannot open for reading");
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

RawImage to_raw(const RasterImage& image) {
  RawImage raw;
  raw.width = image.width();
  raw.height = image.height();
  raw.channels = image.channel_count();
  raw.max_f = image.max_f;
  raw.samples.resize(static_cast<std::size_t>(raw.width) * raw.height * raw.channels);
  for (int c = 0; c < raw.channels; ++c)
    for (int i = 0; i < raw.height; ++i)
      for (int j = 0; j < raw.width; ++j)
        raw.samples[(static_cast<std::size_t>(i) * raw.width + j) * raw.channels + c] =
            static_cast<std::uint16_t>(image.channels[c](i, j));
  return raw;
}

}  // namespace

RasterImage load_image(const std::filesystem::path& path) {
  const std::string ext = lower_extension(path);
  if (is_lossy_extension(ext))
    throw io_error(path, "lossy formats are not supported; use PNG or PPM/PGM");

  const auto bytes = read_all(path);
  if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF)
    throw io_error(path, "JPEG input is not supported; use PNG or PPM/PGM");

  if (bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0) {
    FilePtr file(std::fopen(path.string().c_str(), "rb"));
    if (!file) throw io_error(path, "cannot open for reading");
    RawImage raw;
    std::vector<png_bytep> rows;
    std::vector<png_byte> buffer;
    PngErrorState state;
    if (!read_png(file.get(), raw, rows, buffer, state)) throw io_error(path, std::string("PNG: ") + state.message);
    return to_raster(raw);
  }

  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6'))
    return to_raster(decode_pnm(bytes, path));

  throw io_error(path, "unrecognized image format (expected PNG or binary PPM/PGM)");
}

bool is_supported_image_path(const std::filesystem::path& path) {
  const std::string ext = lower_extension(path);
  return ext == ".png" || is_pnm_extension(ext);
}

void save_image(const RasterImage& image, const std::filesystem::path& path) {
  image.validate();
  const std::string ext = lower_extension(path);
  if (is_lossy_extension(ext)) throw io_error(path, "lossy formats are not supported; use PNG or PPM/PGM");
  if (!is_supported_image_path(path)) throw io_error(path, "unsupported output extension '" + ext + "'");
  if (!image.is_quantized())
    throw std::invalid_argument("save_image: samples must be integers in [0, max_f]");
  if (image.max_f > 65535) throw std::invalid_argument("save_image: max_f above 65535");

  const RawImage raw = to_raw(image);
  if (ext == ".png") {
    if (image.max_f != 255 && image.max_f != 65535)
      throw std::invalid_argument("save_image: PNG output needs max_f 255 or 65535");
    FilePtr file(std::fopen(path.string().c_str(), "wb"));
    if (!file) throw io_error(path, "cannot open for writing");
    std::vector<png_bytep> rows;
    std::vector<png_byte> buffer;
    PngErrorState state;
    if (!write_png(file.get(), raw, rows, buffer, state)) throw io_error(path, std::string("PNG: ") + state.message);
    if (std::fflush(file.get()) != 0) throw io_error(path, "write failed");
    return;
  }

  if (raw.channels == 4) throw io_error(path, "PPM/PGM cannot store an alpha channel; use PNG");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error(path, "cannot open for writing");
  out << (raw.channels == 3 ? "P6" : "P5") << '\n' << raw.width << ' ' << raw.height << '\n' << raw.max_f << '\n';
  const bool wide = raw.max_f > 255;
  std::vector<char> body;
  body.reserve(raw.samples.size() * (wide ? 2 : 1));
  for (std::uint16_t v : raw.samples) {
    if (wide) body.push_back(static_cast<char>(v >> 8));
    body.push_back(static_cast<char>(v & 0xff));
  }
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw io_error(path, "write failed");
}

}  // namespace vpscale
