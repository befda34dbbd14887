// Reference kernels: a literal gather-then-convolve formulation, one column
// at a time. Kept for equivalence tests against the parallel kernels.

#include "dtfuse/error.hpp"
#include "dtfuse/kernels.hpp"

#include <vector>

namespace dtfuse::kernels::serial {

namespace {

// 'valid' part of the full convolution of u with g.
std::vector<double> valid_convolve(const std::vector<double>& u, const std::vector<double>& g) {
  const std::size_t p = g.size();
  std::vector<double> out(u.size() - p + 1);
  for (std::size_t j = 0; j < out.size(); ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < p; ++k) acc += g[k] * u[j + p - 1 - k];
    out[j] = acc;
  }
  return out;
}

std::vector<double> taps(std::span<const double> h, std::size_t start) {
  std::vector<double> out;
  for (std::size_t i = start; i < h.size(); i += 2) out.push_back(h[i]);
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> column(const Plane& x, std::size_t c, const std::vector<std::size_t>& rows) {
  std::vector<double> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = x(rows[i], c);
  return out;
}

}  // namespace

Plane colfilter(const Plane& x, std::span<const double> h) {
  if (h.size() % 2 == 0) throw InvalidArgument("colfilter needs an odd-length filter");
  const std::size_t m2 = h.size() / 2;
  std::vector<std::size_t> xe;
  for (std::size_t n = 0; n < x.rows + 2 * m2; ++n)
    xe.push_back(reflect_index(static_cast<std::ptrdiff_t>(n) - static_cast<std::ptrdiff_t>(m2), x.rows));
  const std::vector<double> g(h.begin(), h.end());

  Plane y(x.rows, x.cols);
  for (std::size_t c = 0; c < x.cols; ++c) {
    const auto out = valid_convolve(column(x, c, xe), g);
    for (std::size_t r = 0; r < x.rows; ++r) y(r, c) = out[r];
  }
  return y;
}

Plane coldfilt(const Plane& x, std::span<const double> ha, std::span<const double> hb) {
  if (x.rows % 4 != 0) throw InvalidArgument("coldfilt needs a row count divisible by 4");
  if (ha.size() != hb.size() || ha.size() % 2 != 0) throw InvalidArgument("coldfilt needs equal even-length filters");
  const std::size_t m = ha.size();
  const auto r = static_cast<std::ptrdiff_t>(x.rows);

  std::vector<std::size_t> xe;
  for (std::ptrdiff_t n = -static_cast<std::ptrdiff_t>(m); n < r + static_cast<std::ptrdiff_t>(m); ++n)
    xe.push_back(reflect_index(n, x.rows));

  std::vector<std::size_t> t0, t1, t2, t3;  // xe[t], xe[t-1], xe[t-2], xe[t-3]
  for (std::size_t t = 5; t < x.rows + 2 * m - 2; t += 4) {
    t0.push_back(xe[t]);
    t1.push_back(xe[t - 1]);
    t2.push_back(xe[t - 2]);
    t3.push_back(xe[t - 3]);
  }
  const auto hao = taps(ha, 0), hae = taps(ha, 1), hbo = taps(hb, 0), hbe = taps(hb, 1);
  const std::size_t first_a = dot(ha, hb) > 0.0 ? 0 : 1;

  Plane y(x.rows / 2, x.cols);
  for (std::size_t c = 0; c < x.cols; ++c) {
    const auto a1 = valid_convolve(column(x, c, t1), hao);
    const auto a2 = valid_convolve(column(x, c, t3), hae);
    const auto b1 = valid_convolve(column(x, c, t0), hbo);
    const auto b2 = valid_convolve(column(x, c, t2), hbe);
    for (std::size_t j = 0; j < x.rows / 4; ++j) {
      y(2 * j + first_a, c) = a1[j] + a2[j];
      y(2 * j + 1 - first_a, c) = b1[j] + b2[j];
    }
  }
  return y;
}

Plane colifilt(const Plane& x, std::span<const double> ha, std::span<const double> hb) {
  if (x.rows % 2 != 0) throw InvalidArgument("colifilt needs an even row count");
  if (ha.size() != hb.size() || ha.size() % 2 != 0) throw InvalidArgument("colifilt needs equal even-length filters");
  const std::size_t m = ha.size(), m2 = m / 2;
  if (m2 % 2 == 0) throw InvalidArgument("colifilt supports filters whose half-length is odd");
  const auto r = static_cast<std::ptrdiff_t>(x.rows);

  std::vector<std::size_t> xe;
  for (std::ptrdiff_t n = -static_cast<std::ptrdiff_t>(m2); n < r + static_cast<std::ptrdiff_t>(m2); ++n)
    xe.push_back(reflect_index(n, x.rows));

  const bool positive = dot(ha, hb) > 0.0;
  std::vector<std::size_t> ta, tb;
  for (std::size_t t = 2; t < x.rows + m - 1; t += 2) {
    ta.push_back(xe[positive ? t : t - 1]);
    tb.push_back(xe[positive ? t - 1 : t]);
  }
  const auto hao = taps(ha, 0), hae = taps(ha, 1), hbo = taps(hb, 0), hbe = taps(hb, 1);

  Plane y(2 * x.rows, x.cols);
  for (std::size_t c = 0; c < x.cols; ++c) {
    const auto ua = column(x, c, ta), ub = column(x, c, tb);
    const auto y0 = valid_convolve(ub, hao), y1 = valid_convolve(ua, hbo);
    const auto y2 = valid_convolve(ub, hae), y3 = valid_convolve(ua, hbe);
    for (std::size_t j = 0; j < x.rows / 2; ++j) {
      y(4 * j, c) = y0[j];
      y(4 * j + 1, c) = y1[j];
      y(4 * j + 2, c) = y2[j];
      y(4 * j + 3, c) = y3[j];
    }
  }
  return y;
}

Plane transpose(const Plane& x) {
  Plane y(x.cols, x.rows);
  for (std::size_t r = 0; r < x.rows; ++r)
    for (std::size_t c = 0; c < x.cols; ++c) y(c, r) = x(r, c);
  return y;
}

}  // namespace dtfuse::kernels::serial
