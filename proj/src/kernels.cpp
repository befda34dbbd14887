#include "dtfuse/kernels.hpp"

#include "dtfuse/error.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace dtfuse::kernels {

namespace {

using Index = std::ptrdiff_t;

// out[c] = sum_k g[k] * x(source(k), c), accumulated in ascending k.
template <typename Source>
void accumulate(double* out, const Plane& x, const double* g, std::size_t step, std::size_t ntaps, Source source) {
  for (std::size_t c = 0; c < x.cols; ++c) out[c] = 0.0;
  for (std::size_t k = 0; k < ntaps; ++k) {
    const double w = g[k * step];
    const double* src = x.row(source(k));
    for (std::size_t c = 0; c < x.cols; ++c) out[c] += w * src[c];
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

Plane colfilter(const Plane& x, std::span<const double> h) {
  if (h.size() % 2 == 0) throw InvalidArgument("colfilter needs an odd-length filter");
  const auto m = static_cast<Index>(h.size());
  const Index m2 = m / 2;
  Plane y(x.rows, x.cols);

#pragma omp parallel for schedule(static)
  for (Index i = 0; i < static_cast<Index>(x.rows); ++i) {
    accumulate(y.row(i), x, h.data(), 1, h.size(),
               [&](std::size_t k) { return reflect_index(i + m - 1 - static_cast<Index>(k) - m2, x.rows); });
  }
  return y;
}

Plane coldfilt(const Plane& x, std::span<const double> ha, std::span<const double> hb) {
  if (x.rows % 4 != 0) throw InvalidArgument("coldfilt needs a row count divisible by 4");
  if (ha.size() != hb.size() || ha.size() % 2 != 0) throw InvalidArgument("coldfilt needs equal even-length filters");
  const auto m = static_cast<Index>(ha.size());
  const Index p = m / 2;
  const std::size_t first_a = dot(ha, hb) > 0.0 ? 0 : 1;
  Plane y(x.rows / 2, x.cols);

#pragma omp parallel
  {
    std::vector<double> tmp(x.cols);
#pragma omp for schedule(static)
    for (Index j = 0; j < static_cast<Index>(x.rows / 4); ++j) {
      // Extended-sample position of tap k, before the per-phase offset.
      auto base = [&](std::size_t k) { return 5 + 4 * (j + p - 1 - static_cast<Index>(k)) - m; };
      double* ya = y.row(2 * j + first_a);
      double* yb = y.row(2 * j + 1 - first_a);

      accumulate(ya, x, ha.data(), 2, p, [&](std::size_t k) { return reflect_index(base(k) - 1, x.rows); });
      accumulate(tmp.data(), x, ha.data() + 1, 2, p, [&](std::size_t k) { return reflect_index(base(k) - 3, x.rows); });
      for (std::size_t c = 0; c < x.cols; ++c) ya[c] += tmp[c];

      accumulate(yb, x, hb.data(), 2, p, [&](std::size_t k) { return reflect_index(base(k), x.rows); });
      accumulate(tmp.data(), x, hb.data() + 1, 2, p, [&](std::size_t k) { return reflect_index(base(k) - 2, x.rows); });
      for (std::size_t c = 0; c < x.cols; ++c) yb[c] += tmp[c];
    }
  }
  return y;
}

Plane colifilt(const Plane& x, std::span<const double> ha, std::span<const double> hb) {
  if (x.rows % 2 != 0) throw InvalidArgument("colifilt needs an even row count");
  if (ha.size() != hb.size() || ha.size() % 2 != 0) throw InvalidArgument("colifilt needs equal even-length filters");
  const auto m = static_cast<Index>(ha.size());
  const Index p = m / 2;
  if (p % 2 == 0) throw InvalidArgument("colifilt supports filters whose half-length is odd");
  const bool positive = dot(ha, hb) > 0.0;
  const Index shift_a = positive ? 0 : 1, shift_b = positive ? 1 : 0;
  Plane y(2 * x.rows, x.cols);

#pragma omp parallel for schedule(static)
  for (Index j = 0; j < static_cast<Index>(x.rows / 2); ++j) {
    auto t = [&](std::size_t k) { return 2 + 2 * (j + p - 1 - static_cast<Index>(k)) - p; };
    auto src_a = [&](std::size_t k) { return reflect_index(t(k) - shift_a, x.rows); };
    auto src_b = [&](std::size_t k) { return reflect_index(t(k) - shift_b, x.rows); };
    accumulate(y.row(4 * j), x, ha.data(), 2, p, src_b);
    accumulate(y.row(4 * j + 1), x, hb.data(), 2, p, src_a);
    accumulate(y.row(4 * j + 2), x, ha.data() + 1, 2, p, src_b);
    accumulate(y.row(4 * j + 3), x, hb.data() + 1, 2, p, src_a);
  }
  return y;
}

Plane transpose(const Plane& x) {
  constexpr Index block = 32;
  Plane y(x.cols, x.rows);
  const auto rows = static_cast<Index>(x.rows), cols = static_cast<Index>(x.cols);

#pragma omp parallel for schedule(static)
  for (Index r0 = 0; r0 < rows; r0 += block) {
    for (Index c0 = 0; c0 < cols; c0 += block) {
      for (Index r = r0; r < std::min(r0 + block, rows); ++r)
        for (Index c = c0; c < std::min(c0 + block, cols); ++c) y(c, r) = x(r, c);
    }
  }
  return y;
}

}  // namespace dtfuse::kernels
