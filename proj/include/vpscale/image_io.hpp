#pragma once

#include <filesystem>
#include <stdexcept>

#include "vpscale/image.hpp"

namespace vpscale {

/// File-system or codec failure; the message carries the offending path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads PNG (8/16-bit; gray, gray+alpha, RGB, RGBA, palette) or binary
/// PGM/PPM (P5/P6, any maxval up to 65535). The format is detected from the
/// file signature. Gray+alpha PNGs are expanded to RGBA.
[[nodiscard]] RasterImage load_image(const std::filesystem::path& path);

/// Writes a quantized image. ".png" gives an 8-bit (max_f 255) or 16-bit
/// (max_f 65535) PNG; ".ppm"/".pgm"/".pnm" give P6 for 3 channels or P5 for
/// 1 channel with maxval = max_f. Lossy extensions are rejected.
void save_image(const RasterImage& image, const std::filesystem::path& path);

/// True for extensions save_image accepts.
[[nodiscard]] bool is_supported_image_path(const std::filesystem::path& path);

}  // namespace vpscale
