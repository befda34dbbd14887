#include "dtfuse/dtcwt.hpp"
#include "dtfuse/error.hpp"
#include "dtfuse/filters.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dtfuse;

namespace {

double max_coefficient_diff(const DtcwtPyramid& a, const DtcwtPyramid& b) {
  double m = 0.0;
  for (std::size_t q = 0; q < 4; ++q) m = std::max(m, test::max_abs_diff(a.lowpass[q].data, b.lowpass[q].data));
  for (std::size_t l = 0; l < a.highpass.size(); ++l)
    for (std::size_t o = 0; o < 6; ++o)
      for (std::size_t i = 0; i < a.highpass[l][o].values.size(); ++i)
        m = std::max(m, std::abs(a.highpass[l][o].values[i] - b.highpass[l][o].values[i]));
  return m;
}

// Stripes running along `degrees` (counter-clockwise from +x, y up).
GrayImage grating(std::size_t n, double degrees, double cycles_per_pixel) {
  const double phi = degrees * std::numbers::pi / 180.0;
  GrayImage img(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      img.at(r, c) = 128.0 + 100.0 * std::cos(2.0 * std::numbers::pi * cycles_per_pixel *
                                              (static_cast<double>(c) * std::sin(phi) +
                                               static_cast<double>(r) * std::cos(phi)));
  return img;
}

// Critically sampled orthonormal Haar DWT, periodic; detail energy per level.
std::vector<double> haar_level_energies(const GrayImage& img, int levels) {
  std::vector<double> ll = img.pixels;
  std::size_t h = img.height, w = img.width;
  std::vector<double> out;
  for (int l = 0; l < levels; ++l) {
    std::vector<double> next((h / 2) * (w / 2));
    double e = 0.0;
    for (std::size_t r = 0; r < h / 2; ++r)
      for (std::size_t c = 0; c < w / 2; ++c) {
        const double a = ll[2 * r * w + 2 * c], b = ll[2 * r * w + 2 * c + 1];
        const double d = ll[(2 * r + 1) * w + 2 * c], f = ll[(2 * r + 1) * w + 2 * c + 1];
        next[r * (w / 2) + c] = (a + b + d + f) / 2.0;
        const double lh = (a - b + d - f) / 2.0, hl = (a + b - d - f) / 2.0, hh = (a - b - d + f) / 2.0;
        e += lh * lh + hl * hl + hh * hh;
      }
    out.push_back(e);
    ll = std::move(next);
    h /= 2;
    w /= 2;
  }
  return out;
}

GrayImage shifted(const GrayImage& img) {
  GrayImage s(img.height, img.width);
  for (std::size_t r = 0; r < img.height; ++r)
    for (std::size_t c = 0; c < img.width; ++c) s.at((r + 1) % img.height, (c + 1) % img.width) = img.at(r, c);
  return s;
}

GrayImage formula_image() {
  GrayImage img(64, 64);
  for (std::size_t r = 0; r < 64; ++r)
    for (std::size_t c = 0; c < 64; ++c) {
      const double rr = static_cast<double>(r), cc = static_cast<double>(c);
      img.at(r, c) = std::sin(0.3 * rr) * 100.0 + std::cos(0.17 * cc * rr) * 50.0 +
                     static_cast<double>((r * 7 + c * 13) % 17);
    }
  return img;
}

}  // namespace

TEST_CASE("constant image has no oriented energy beyond the filter table's DC gain") {
  const GrayImage img(64, 64, std::vector<double>(64 * 64, 100.0));
  const DtcwtPyramid p = dtcwt_forward(img, 3);
  // The 14-tap Q-shift highpass sums to about -9.3e-7 rather than 0, so
  // each coarser level leaks 100 * |sum(h1a)| * 2^(l-1).
  double dc_gain = 0.0;
  for (double t : filters::h1a) dc_gain += t;
  for (std::size_t l = 0; l < p.highpass.size(); ++l) {
    double m = 0.0;
    for (const auto& band : p.highpass[l])
      for (const auto& z : band.values) m = std::max(m, std::abs(z));
    CAPTURE(l);
    if (l == 0)
      CHECK(m < 1e-9);
    else
      CHECK(m <= 1.001 * 100.0 * std::abs(dc_gain) * std::ldexp(1.0, static_cast<int>(l)));
    CHECK(m < 1e-5 * 100.0);
  }
}

TEST_CASE("subband and lowpass sizes halve per level") {
  const DtcwtPyramid p = dtcwt_forward(test::random_image(64, 64, 1), 2);
  REQUIRE(p.highpass.size() == 2);
  for (const auto& b : p.highpass[0]) {
    CHECK(b.height == 32);
    CHECK(b.width == 32);
  }
  for (const auto& b : p.highpass[1]) {
    CHECK(b.height == 16);
    CHECK(b.width == 16);
  }
  for (const auto& lp : p.lowpass) {
    CHECK(lp.rows == 16);
    CHECK(lp.cols == 16);
  }
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("non-dyadic input is padded to the next multiple of 2^levels") {
  const DtcwtPyramid p = dtcwt_forward(test::random_image(50, 66, 2), 2);
  CHECK(p.padded_height() == 52);
  CHECK(p.padded_width() == 68);
  CHECK(p.highpass[0][0].height == 26);
  CHECK(p.highpass[0][0].width == 34);
  CHECK(p.highpass[1][0].height == 13);
  CHECK(p.highpass[1][0].width == 17);
  CHECK(p.lowpass[0].rows == 13);
  const GrayImage back = dtcwt_inverse(p);
  CHECK(back.height == 50);
  CHECK(back.width == 66);
}

TEST_CASE("coefficients agree with an independent reference implementation") {
  // Reference values from the Cambridge dtcwt package (near_sym_b / qshift_b,
  // 3 levels) on the same formula image.
  const DtcwtPyramid p = dtcwt_forward(formula_image(), 3);
  CHECK(std::abs(p.highpass[0][1](3, 4) - Complex(11.167419708038864, -12.65730344328318)) < 1e-9);
  CHECK(std::abs(p.highpass[2][4](2, 5) - Complex(-3.5735331992961727, 3.90660051528256)) < 1e-9);
  CHECK(p.lowpass[0](1, 2) == doctest::Approx(139.85736715572756).epsilon(1e-12));
  CHECK(p.lowpass[3](5, 6) == doctest::Approx(370.0695913925689).epsilon(1e-12));
}

TEST_CASE("transform energy tracks input energy") {
  const GrayImage img = test::random_image(64, 64, 3);
  double input = 0.0;
  for (double v : img.pixels) input += v * v;
  const double ratio = pyramid_energy(dtcwt_forward(img, 2)) / input;
  CHECK(std::abs(ratio - 1.0) < 0.01);
  // Frozen; the Cambridge dtcwt package gives the same ratio on this image.
  CHECK(ratio == doctest::Approx(0.99985183654648313).epsilon(1e-9));
}

TEST_CASE("property: perfect reconstruction over sizes and levels") {
  std::uint64_t seed = 10;
  for (auto [h, w] : {std::pair{32, 32}, {48, 80}, {64, 64}, {50, 66}, {17, 9}, {8, 8}}) {
    for (int levels = 1; levels <= 3; ++levels) {
      if (h < (1 << levels) || w < (1 << levels)) continue;
      CAPTURE(h);
      CAPTURE(w);
      CAPTURE(levels);
      const GrayImage x = test::random_image(h, w, ++seed, -50.0, 300.0);
      const GrayImage y = dtcwt_inverse(dtcwt_forward(x, levels));
      CHECK(test::max_abs_diff(x.pixels, y.pixels) <= 1e-9 * test::max_abs(x.pixels));
    }
  }
}

TEST_CASE("zero pyramid reconstructs to a zero image") {
  DtcwtPyramid p = dtcwt_forward(test::random_image(32, 32, 4), 2);
  for (auto& lp : p.lowpass) std::fill(lp.data.begin(), lp.data.end(), 0.0);
  for (auto& level : p.highpass)
    for (auto& b : level) std::fill(b.values.begin(), b.values.end(), Complex{});
  for (double v : dtcwt_inverse(p).pixels) CHECK(v == 0.0);
}

TEST_CASE("dropping every subband leaves a smoother, lower-energy image") {
  const GrayImage x = test::random_image(64, 64, 5);
  DtcwtPyramid p = dtcwt_forward(x, 2);
  for (auto& level : p.highpass)
    for (auto& b : level) std::fill(b.values.begin(), b.values.end(), Complex{});
  const GrayImage smooth = dtcwt_inverse(p);
  double ex = 0.0, es = 0.0;
  for (double v : x.pixels) ex += v * v;
  for (double v : smooth.pixels) es += v * v;
  CHECK(es <= ex);
  CHECK(es / ex == doctest::Approx(0.76444793703441793).epsilon(1e-9));
}

TEST_CASE("property: the transform is linear") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const GrayImage x = test::random_image(48, 40, 20 + seed), y = test::random_image(48, 40, 40 + seed);
    GrayImage mix(48, 40);
    for (std::size_t i = 0; i < mix.size(); ++i) mix.pixels[i] = 2.5 * x.pixels[i] - 0.75 * y.pixels[i];

    const DtcwtPyramid px = dtcwt_forward(x, 3), py = dtcwt_forward(y, 3);
    DtcwtPyramid combo = px;
    for (std::size_t q = 0; q < 4; ++q)
      for (std::size_t i = 0; i < combo.lowpass[q].size(); ++i)
        combo.lowpass[q].data[i] = 2.5 * px.lowpass[q].data[i] - 0.75 * py.lowpass[q].data[i];
    for (std::size_t l = 0; l < combo.highpass.size(); ++l)
      for (std::size_t o = 0; o < 6; ++o)
        for (std::size_t i = 0; i < combo.highpass[l][o].values.size(); ++i)
          combo.highpass[l][o].values[i] = 2.5 * px.highpass[l][o].values[i] - 0.75 * py.highpass[l][o].values[i];

    const DtcwtPyramid direct = dtcwt_forward(mix, 3);
    double scale = 0.0;
    for (const auto& lp : direct.lowpass) scale = std::max(scale, test::max_abs(lp.data));
    CHECK(max_coefficient_diff(direct, combo) <= 1e-9 * scale);
  }
}

TEST_CASE("each oriented grating peaks in its own subband") {
  for (int o = 0; o < 6; ++o) {
    CAPTURE(kOrientationDegrees[static_cast<std::size_t>(o)]);
    const DtcwtPyramid p = dtcwt_forward(grating(64, kOrientationDegrees[static_cast<std::size_t>(o)], 0.18), 2);
    // Matching scale: the level with the most aggregate magnitude.
    std::size_t best_level = 0;
    double best_level_sum = -1.0;
    std::array<std::array<double, 6>, 2> sums{};
    for (std::size_t l = 0; l < 2; ++l) {
      double level_sum = 0.0;
      for (std::size_t b = 0; b < 6; ++b) {
        for (const auto& z : p.highpass[l][b].values) sums[l][b] += std::abs(z);
        level_sum += sums[l][b];
      }
      if (level_sum > best_level_sum) {
        best_level_sum = level_sum;
        best_level = l;
      }
    }
    CHECK(best_level == 1);
    const auto& s = sums[best_level];
    CHECK(std::max_element(s.begin(), s.end()) - s.begin() == o);
  }
}

TEST_CASE("shift_energy_ratio") {
  SUBCASE("constant image is the degenerate zero case") {
    const GrayImage img(64, 64, std::vector<double>(64 * 64, 42.0));
    for (double r : shift_energy_ratio(img, 2)) CHECK(r == 0.0);
  }
  SUBCASE("seeded random image stays under 10% per level") {
    const auto ratios = shift_energy_ratio(test::random_image(64, 64, 7), 2);
    REQUIRE(ratios.size() == 2);
    for (double r : ratios) CHECK(r < 0.10);
  }
  SUBCASE("a critically sampled DWT is more shift sensitive") {
    const GrayImage img = test::random_image(64, 64, 7);
    const auto dtcwt_ratios = shift_energy_ratio(img, 2);
    const auto base = haar_level_energies(img, 2), moved = haar_level_energies(shifted(img), 2);
    bool worse = false;
    for (std::size_t l = 0; l < 2; ++l) worse |= std::abs(moved[l] - base[l]) / base[l] > dtcwt_ratios[l];
    CHECK(worse);
  }
}

TEST_CASE("transform preconditions") {
  CHECK_THROWS_AS(dtcwt_forward(test::random_image(16, 16, 1), 0), InvalidArgument);
  CHECK_THROWS_AS(dtcwt_forward(test::random_image(7, 16, 1), 3), InvalidArgument);
  CHECK_THROWS_AS(shift_energy_ratio(test::random_image(4, 4, 1), 3), InvalidArgument);

  DtcwtPyramid p = dtcwt_forward(test::random_image(32, 32, 1), 2);
  DtcwtPyramid broken = p;
  broken.highpass.pop_back();
  CHECK_THROWS_AS(dtcwt_inverse(broken), InvalidArgument);
  broken = p;
  broken.highpass[1][3] = ComplexSubband(4, 4);
  CHECK_THROWS_AS(dtcwt_inverse(broken), InvalidArgument);
  broken = p;
  broken.lowpass[2] = Plane(3, 8);
  CHECK_THROWS_AS(dtcwt_inverse(broken), InvalidArgument);
}

TEST_CASE("dump_pyramid writes one PGM per subband plus the lowpass parts") {
  test::TempDir dir("dump");
  dump_pyramid(dtcwt_forward(test::random_image(32, 32, 1), 2), dir.path());
  for (int l = 1; l <= 2; ++l)
    for (int o = 0; o < 6; ++o)
      CHECK(std::filesystem::exists(dir / ("L" + std::to_string(l) + "_O" + std::to_string(o) + ".pgm")));
  CHECK(read_image(dir / "lowpass_0.pgm").height == 8);
}
