#include "dtfuse/dtcwt.hpp"

#include "dtfuse/error.hpp"
#include "dtfuse/filters.hpp"
#include "dtfuse/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace dtfuse {

namespace {

namespace k = kernels;
namespace f = filters;

std::size_t round_up(std::size_t n, std::size_t multiple) { return (n + multiple - 1) / multiple * multiple; }

Plane add(Plane a, const Plane& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a.data[i] += b.data[i];
  return a;
}

// Quads (a b; c d) of the four tree outputs -> the two complex subbands
// (p - q, p + q) with p = (a + jb)/sqrt2, q = (d - jc)/sqrt2.
std::pair<ComplexSubband, ComplexSubband> q2c(const Plane& y) {
  const double s = std::numbers::sqrt2 / 2.0;
  ComplexSubband z1(y.rows / 2, y.cols / 2), z2(y.rows / 2, y.cols / 2);
  for (std::size_t r = 0; r < z1.height; ++r) {
    for (std::size_t c = 0; c < z1.width; ++c) {
      const Complex p(y(2 * r, 2 * c) * s, y(2 * r, 2 * c + 1) * s);
      const Complex q(y(2 * r + 1, 2 * c + 1) * s, -y(2 * r + 1, 2 * c) * s);
      z1(r, c) = p - q;
      z2(r, c) = p + q;
    }
  }
  return {std::move(z1), std::move(z2)};
}

Plane c2q(const ComplexSubband& w1, const ComplexSubband& w2) {
  const double s = std::numbers::sqrt2 / 2.0;
  Plane x(2 * w1.height, 2 * w1.width);
  for (std::size_t r = 0; r < w1.height; ++r) {
    for (std::size_t c = 0; c < w1.width; ++c) {
      const Complex p = w1(r, c) * s + w2(r, c) * s;
      const Complex q = w1(r, c) * s - w2(r, c) * s;
      x(2 * r, 2 * c) = p.real();
      x(2 * r, 2 * c + 1) = p.imag();
      x(2 * r + 1, 2 * c) = q.imag();
      x(2 * r + 1, 2 * c + 1) = -q.real();
    }
  }
  return x;
}

void store_level(LevelBands& bands, const Plane& horizontal, const Plane& vertical, const Plane& diagonal) {
  auto [h1, h2] = q2c(horizontal);
  auto [v1, v2] = q2c(vertical);
  auto [d1, d2] = q2c(diagonal);
  bands[0] = std::move(h1);
  bands[5] = std::move(h2);
  bands[2] = std::move(v1);
  bands[3] = std::move(v2);
  bands[1] = std::move(d1);
  bands[4] = std::move(d2);
}

std::array<Plane, 4> deinterleave(const Plane& z) {
  std::array<Plane, 4> out;
  for (std::size_t q = 0; q < 4; ++q) {
    out[q] = Plane(z.rows / 2, z.cols / 2);
    for (std::size_t r = 0; r < z.rows / 2; ++r)
      for (std::size_t c = 0; c < z.cols / 2; ++c) out[q](r, c) = z(2 * r + q / 2, 2 * c + q % 2);
  }
  return out;
}

Plane interleave(const std::array<Plane, 4>& parts) {
  Plane z(2 * parts[0].rows, 2 * parts[0].cols);
  for (std::size_t q = 0; q < 4; ++q)
    for (std::size_t r = 0; r < parts[q].rows; ++r)
      for (std::size_t c = 0; c < parts[q].cols; ++c) z(2 * r + q / 2, 2 * c + q % 2) = parts[q](r, c);
  return z;
}

void check_levels(const GrayImage& img, int levels) {
  if (levels < 1) throw InvalidArgument("dtcwt: levels must be >= 1");
  if (levels > 30) throw InvalidArgument("dtcwt: too many levels");
  const std::size_t minimum = std::size_t{1} << levels;
  if (img.height < minimum || img.width < minimum)
    throw InvalidArgument("dtcwt: image " + std::to_string(img.height) + "x" + std::to_string(img.width) +
                          " too small for " + std::to_string(levels) + " levels (needs >= " +
                          std::to_string(minimum) + " per side)");
}

}  // namespace

std::size_t DtcwtPyramid::padded_height() const {
  return levels < 1 ? 0 : round_up(original_height, std::size_t{1} << levels);
}

std::size_t DtcwtPyramid::padded_width() const {
  return levels < 1 ? 0 : round_up(original_width, std::size_t{1} << levels);
}

void DtcwtPyramid::validate() const {
  if (levels < 1 || levels > 30) throw InvalidArgument("pyramid: levels must be >= 1");
  if (highpass.size() != static_cast<std::size_t>(levels))
    throw InvalidArgument("pyramid: expected " + std::to_string(levels) + " highpass levels, found " +
                          std::to_string(highpass.size()));
  const std::size_t ph = padded_height(), pw = padded_width();
  if (original_height == 0 || original_width == 0) throw InvalidArgument("pyramid: empty original size");
  for (const Plane& p : lowpass) {
    if (p.rows != ph >> levels || p.cols != pw >> levels || p.size() != p.rows * p.cols)
      throw InvalidArgument("pyramid: lowpass dimensions inconsistent with original size");
  }
  for (int l = 1; l <= levels; ++l) {
    for (const ComplexSubband& b : highpass[static_cast<std::size_t>(l - 1)]) {
      if (b.height != ph >> l || b.width != pw >> l || b.values.size() != b.height * b.width)
        throw InvalidArgument("pyramid: level " + std::to_string(l) + " subband dimensions inconsistent");
    }
  }
}

DtcwtPyramid dtcwt_forward(const GrayImage& img, int levels) {
  img.validate();
  check_levels(img, levels);

  DtcwtPyramid pyr;
  pyr.levels = levels;
  pyr.original_height = img.height;
  pyr.original_width = img.width;
  pyr.range_max = img.range_max;
  pyr.highpass.resize(static_cast<std::size_t>(levels));

  Plane x(pyr.padded_height(), pyr.padded_width());
  for (std::size_t r = 0; r < x.rows; ++r)
    for (std::size_t c = 0; c < x.cols; ++c)
      x(r, c) = img.at(k::reflect_index(static_cast<std::ptrdiff_t>(r), img.height),
                       k::reflect_index(static_cast<std::ptrdiff_t>(c), img.width));

  // Level 1: undecimated biorthogonal filtering, the complex combination
  // performs the 2x decimation.
  Plane lo = k::transpose(k::colfilter(x, f::h0o));
  Plane hi = k::transpose(k::colfilter(x, f::h1o));
  Plane lolo = k::transpose(k::colfilter(lo, f::h0o));
  store_level(pyr.highpass[0], k::transpose(k::colfilter(hi, f::h0o)), k::transpose(k::colfilter(lo, f::h1o)),
              k::transpose(k::colfilter(hi, f::h1o)));

  for (int level = 2; level <= levels; ++level) {
    lo = k::transpose(k::coldfilt(lolo, f::h0b, f::h0a));
    hi = k::transpose(k::coldfilt(lolo, f::h1b, f::h1a));
    lolo = k::transpose(k::coldfilt(lo, f::h0b, f::h0a));
    store_level(pyr.highpass[static_cast<std::size_t>(level - 1)],
                k::transpose(k::coldfilt(hi, f::h0b, f::h0a)), k::transpose(k::coldfilt(lo, f::h1b, f::h1a)),
                k::transpose(k::coldfilt(hi, f::h1b, f::h1a)));
  }

  pyr.lowpass = deinterleave(lolo);
  return pyr;
}

GrayImage dtcwt_inverse(const DtcwtPyramid& pyr) {
  pyr.validate();

  Plane z = interleave(pyr.lowpass);
  for (int level = pyr.levels; level >= 1; --level) {
    const LevelBands& b = pyr.highpass[static_cast<std::size_t>(level - 1)];
    const Plane lh = c2q(b[0], b[5]);
    const Plane hl = c2q(b[2], b[3]);
    const Plane hh = c2q(b[1], b[4]);
    if (level >= 2) {
      const Plane y1 = add(k::colifilt(z, f::g0b, f::g0a), k::colifilt(lh, f::g1b, f::g1a));
      const Plane y2 = add(k::colifilt(hl, f::g0b, f::g0a), k::colifilt(hh, f::g1b, f::g1a));
      z = k::transpose(
          add(k::colifilt(k::transpose(y1), f::g0b, f::g0a), k::colifilt(k::transpose(y2), f::g1b, f::g1a)));
    } else {
      const Plane y1 = add(k::colfilter(z, f::g0o), k::colfilter(lh, f::g1o));
      const Plane y2 = add(k::colfilter(hl, f::g0o), k::colfilter(hh, f::g1o));
      z = k::transpose(add(k::colfilter(k::transpose(y1), f::g0o), k::colfilter(k::transpose(y2), f::g1o)));
    }
  }

  GrayImage out(pyr.original_height, pyr.original_width, pyr.range_max);
  for (std::size_t r = 0; r < out.height; ++r)
    for (std::size_t c = 0; c < out.width; ++c) out.at(r, c) = z(r, c);
  return out;
}

double pyramid_energy(const DtcwtPyramid& pyr) {
  double e = 0.0;
  for (const Plane& p : pyr.lowpass)
    for (double v : p.data) e += v * v;
  for (double le : level_energies(pyr)) e += le;
  return e;
}

std::vector<double> level_energies(const DtcwtPyramid& pyr) {
  std::vector<double> out;
  for (const LevelBands& bands : pyr.highpass) {
    double e = 0.0;
    for (const ComplexSubband& b : bands)
      for (const Complex& z : b.values) e += std::norm(z);
    out.push_back(e);
  }
  return out;
}

std::vector<double> shift_energy_ratio(const GrayImage& img, int levels) {
  img.validate();
  check_levels(img, levels);
  GrayImage shifted(img.height, img.width, img.range_max);
  for (std::size_t r = 0; r < img.height; ++r)
    for (std::size_t c = 0; c < img.width; ++c)
      shifted.at((r + 1) % img.height, (c + 1) % img.width) = img.at(r, c);

  const auto base = level_energies(dtcwt_forward(img, levels));
  const auto moved = level_energies(dtcwt_forward(shifted, levels));

  double input_energy = 0.0;
  for (double v : img.pixels) input_energy += v * v;
  // Below this the subband energy is filter round-off leakage, e.g. from a constant image.
  const double floor = 1e-18 * input_energy;

  std::vector<double> ratios(base.size(), 0.0);
  for (std::size_t l = 0; l < base.size(); ++l) {
    if (base[l] > floor && base[l] > 0.0) ratios[l] = std::abs(moved[l] - base[l]) / base[l];
  }
  return ratios;
}

void dump_pyramid(const DtcwtPyramid& pyr, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ImageIoError(ImageIoError::Kind::Unwritable, "cannot create '" + dir.string() + "': " + ec.message());

  auto normalized = [](std::size_t h, std::size_t w, std::vector<double> v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const double a = *lo, span = *hi - *lo;
    for (double& x : v) x = span > 0.0 ? 255.0 * (x - a) / span : 0.0;
    return GrayImage(h, w, std::move(v), 255.0);
  };

  for (std::size_t q = 0; q < pyr.lowpass.size(); ++q) {
    const Plane& p = pyr.lowpass[q];
    write_image(normalized(p.rows, p.cols, p.data), dir / ("lowpass_" + std::to_string(q) + ".pgm"));
  }
  for (std::size_t l = 0; l < pyr.highpass.size(); ++l) {
    for (std::size_t o = 0; o < 6; ++o) {
      const ComplexSubband& b = pyr.highpass[l][o];
      std::vector<double> mag(b.values.size());
      std::transform(b.values.begin(), b.values.end(), mag.begin(), [](const Complex& z) { return std::abs(z); });
      write_image(normalized(b.height, b.width, std::move(mag)),
                  dir / ("L" + std::to_string(l + 1) + "_O" + std::to_string(o) + ".pgm"));
    }
  }
}

}  // namespace dtfuse
