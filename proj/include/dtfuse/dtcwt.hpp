#pragma once

#include "dtfuse/image.hpp"
#include "dtfuse/plane.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <vector>

namespace dtfuse {

using Complex = std::complex<double>;

/// The six oriented subbands of one level, in a fixed index order. Angles
/// are the edge direction, counter-clockwise from the +x (column) axis with
/// +y pointing up the image.
enum class Orientation : int { P15 = 0, P45 = 1, P75 = 2, M75 = 3, M45 = 4, M15 = 5 };

inline constexpr std::array<int, 6> kOrientationDegrees{15, 45, 75, -75, -45, -15};

struct ComplexSubband {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<Complex> values;

  ComplexSubband() = default;
  ComplexSubband(std::size_t h, std::size_t w) : height(h), width(w), values(h * w) {}

  Complex& operator()(std::size_t r, std::size_t c) { return values[r * width + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return values[r * width + c]; }

  friend bool operator==(const ComplexSubband&, const ComplexSubband&) = default;
};

using LevelBands = std::array<ComplexSubband, 6>;

/// Result of a forward transform.
///
/// lowpass holds the four polyphase components (one per tree pairing) of the
/// coarsest lowpass image, each (padded / 2^levels) on a side. highpass[l-1]
/// holds the six complex subbands of level l, each (padded / 2^l) on a side.
struct DtcwtPyramid {
  int levels = 0;
  std::size_t original_height = 0;
  std::size_t original_width = 0;
  double range_max = 255.0;
  std::array<Plane, 4> lowpass;
  std::vector<LevelBands> highpass;

  std::size_t padded_height() const;
  std::size_t padded_width() const;

  /// Throws InvalidArgument if the dimension chain is inconsistent.
  void validate() const;

  friend bool operator==(const DtcwtPyramid&, const DtcwtPyramid&) = default;
};

/// Forward 2-D dual-tree complex wavelet transform.
///
/// Level 1 filters with the near-symmetric (13,19)-tap pair without
/// decimation and forms its complex subbands by combining the four trees;
/// each further level decimates with the 14-tap Q-shift pair. Inputs whose
/// sides are not multiples of 2^levels are symmetrically extended on the
/// bottom/right edges and cropped again by dtcwt_inverse.
DtcwtPyramid dtcwt_forward(const GrayImage& img, int levels);

/// Inverse transform; perfect reconstruction of dtcwt_forward output up to
/// rounding error.
GrayImage dtcwt_inverse(const DtcwtPyramid& pyr);

/// Sum of squared lowpass values plus squared subband magnitudes.
double pyramid_energy(const DtcwtPyramid& pyr);

/// Sum of squared magnitudes over the six subbands of each level.
std::vector<double> level_energies(const DtcwtPyramid& pyr);

/// Relative change of each level's subband energy when the input is
/// circularly shifted by one pixel in both axes. Levels with (numerically)
/// no subband energy report 0.
std::vector<double> shift_energy_ratio(const GrayImage& img, int levels);

/// Debug dump: each subband magnitude as an 8-bit PGM named L<level>_O<index>.pgm
/// (min-max normalized) plus lowpass_<k>.pgm. Not a stable format.
void dump_pyramid(const DtcwtPyramid& pyr, const std::filesystem::path& dir);

}  // namespace dtfuse
