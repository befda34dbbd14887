#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

namespace dtfuse {

/// Real-valued grayscale image. Pixels are row-major; range_max is the
/// nominal peak intensity (255 for 8-bit sources, 65535 for 16-bit).
///
/// Pixels are not restricted to [0, range_max] in memory: reconstructed
/// images may overshoot slightly. Quantization only happens in write_image.
struct GrayImage {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> pixels;
  double range_max = 255.0;

  GrayImage() = default;
  GrayImage(std::size_t h, std::size_t w, double range = 255.0)
      : height(h), width(w), pixels(h * w, 0.0), range_max(range) {}
  GrayImage(std::size_t h, std::size_t w, std::vector<double> px, double range = 255.0);

  double& at(std::size_t r, std::size_t c) { return pixels[r * width + c]; }
  double at(std::size_t r, std::size_t c) const { return pixels[r * width + c]; }

  std::size_t size() const { return pixels.size(); }

  /// Throws InvalidArgument if any invariant is broken.
  void validate() const;

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

/// Reads a binary PGM (P5, 8 or 16 bit), binary PPM (P6, converted to gray
/// and rounded), or an 8-bit grayscale/RGB PNG.
GrayImage read_image(const std::filesystem::path& path);

/// Writes img as binary P5 after clamping to [0, range_max] and rounding.
/// range_max <= 255 gives one byte per pixel, otherwise two bytes big-endian.
void write_image(const GrayImage& img, const std::filesystem::path& path);

/// ITU-R BT.601 luma of three equally sized channels. No rounding.
GrayImage to_grayscale(const GrayImage& r, const GrayImage& g, const GrayImage& b);

/// Clamps every pixel into [0, range_max].
GrayImage clamp_to_range(GrayImage img);

/// Synthetic co-registered CT-like / MR-like head phantom pair.
///
/// Both images share the skull ellipse, ventricles and lesion; the CT-like
/// image has a bright textured bone ring around a dark interior, the MR-like
/// image has a dim ring around smooth soft-tissue blobs with mild texture.
/// size must be >= 32 and divisible by 8. Pure function of (size, seed).
std::pair<GrayImage, GrayImage> generate_phantom_pair(std::size_t size, std::uint64_t seed);

/// Normalized elliptical radius used by the phantom, exposed for tests:
/// 1.0 on the outer edge of the skull ring.
double phantom_radius(std::size_t size, std::uint64_t seed, std::size_t row, std::size_t col);

}  // namespace dtfuse
