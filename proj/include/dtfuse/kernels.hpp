#pragma once

#include "dtfuse/plane.hpp"

#include <cstddef>
#include <span>

// Column filter-bank kernels behind the dual-tree transform. Every kernel
// filters down the columns of its input (each column independently) with
// half-sample symmetric extension at both ends.
//
// The kernels in dtfuse::kernels are OpenMP-parallel over output rows. The
// ones in dtfuse::kernels::serial are a direct single-threaded transcription
// kept as a test reference; both accumulate each output sample in the same
// order, so their results are bit-identical.
namespace dtfuse::kernels {

/// Maps any integer index onto [0, n) by half-sample symmetric reflection
/// (…, 1, 0 | 0, 1, …, n-1 | n-1, n-2, …).
constexpr std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) {
  const auto period = static_cast<std::ptrdiff_t>(2 * n);
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  return static_cast<std::size_t>(m < static_cast<std::ptrdiff_t>(n) ? m : period - 1 - m);
}

/// Non-decimating filter with an odd-length filter; output has the input's shape.
Plane colfilter(const Plane& x, std::span<const double> h);

/// Decimate-by-two with the Q-shift pair (ha on one phase, hb on the other);
/// the two tree outputs are interleaved. Rows must be a multiple of 4.
Plane coldfilt(const Plane& x, std::span<const double> ha, std::span<const double> hb);

/// Interpolate-by-two inverse of coldfilt. Rows must be even; filter length
/// must be even with an odd half-length (the 14-tap Q-shift case).
Plane colifilt(const Plane& x, std::span<const double> ha, std::span<const double> hb);

Plane transpose(const Plane& x);

namespace serial {
Plane colfilter(const Plane& x, std::span<const double> h);
Plane coldfilt(const Plane& x, std::span<const double> ha, std::span<const double> hb);
Plane colifilt(const Plane& x, std::span<const double> ha, std::span<const double> hb);
Plane transpose(const Plane& x);
}  // namespace serial

}  // namespace dtfuse::kernels
