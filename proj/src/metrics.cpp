#include "dtfuse/metrics.hpp"

#include "dtfuse/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

namespace dtfuse {

namespace {

std::vector<double> histogram(const GrayImage& img) {
  img.validate();
  const auto top = static_cast<std::size_t>(std::lround(img.range_max));
  std::vector<double> p(top + 1, 0.0);
  for (double v : img.pixels) {
    const auto bin = static_cast<std::size_t>(std::lround(std::clamp(v, 0.0, static_cast<double>(top))));
    p[bin] += 1.0;
  }
  for (double& x : p) x /= static_cast<double>(img.size());
  return p;
}

void check_same_shape(const GrayImage& ref, const GrayImage& fused, const char* who) {
  ref.validate();
  fused.validate();
  if (ref.height != fused.height || ref.width != fused.width)
    throw InvalidArgument(std::string(who) + ": image dimensions differ");
  if (ref.size() == 0) throw InvalidArgument(std::string(who) + ": empty images");
}

void check_same_range(const GrayImage& ref, const GrayImage& fused, const char* who) {
  if (ref.range_max != fused.range_max) throw InvalidArgument(std::string(who) + ": images differ in range_max");
}

struct Moments {
  double mean, sd;
};

Moments moments(const GrayImage& img) {
  const auto n = static_cast<double>(img.size());
  double s = 0.0;
  for (double v : img.pixels) s += v;
  const double m = s / n;
  double ss = 0.0;
  for (double v : img.pixels) ss += (v - m) * (v - m);
  return {m, std::sqrt(ss / n)};
}

}  // namespace

double entropy(const GrayImage& img) {
  double e = 0.0;
  for (double p : histogram(img))
    if (p > 0.0) e -= p * std::log2(p);
  return e;
}

double std_dev(const GrayImage& img) {
  const auto p = histogram(img);
  double mean = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) mean += static_cast<double>(i) * p[i];
  double var = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) var += (static_cast<double>(i) - mean) * (static_cast<double>(i) - mean) * p[i];
  return std::sqrt(var);
}

double ssim(const GrayImage& ref, const GrayImage& fused) {
  check_same_shape(ref, fused, "ssim");
  check_same_range(ref, fused, "ssim");
  const double L = ref.range_max;
  const double c1 = (0.01 * L) * (0.01 * L), c2 = (0.03 * L) * (0.03 * L);
  const Moments r = moments(ref), f = moments(fused);
  return (2.0 * r.mean * f.mean + c1) * (2.0 * r.sd * f.sd + c2) /
         ((r.mean * r.mean + f.mean * f.mean + c1) * (r.sd * r.sd + f.sd * f.sd + c2));
}

double cross_correlation(const GrayImage& ref, const GrayImage& fused) {
  check_same_shape(ref, fused, "cross_correlation");
  double rf = 0.0, rr = 0.0, ff = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    rf += ref.pixels[i] * fused.pixels[i];
    rr += ref.pixels[i] * ref.pixels[i];
    ff += fused.pixels[i] * fused.pixels[i];
  }
  if (rr + ff == 0.0) throw InvalidArgument("cross_correlation: undefined for two all-zero images");
  return 2.0 * rf / (rr + ff);
}

double psnr(const GrayImage& ref, const GrayImage& fused) {
  check_same_shape(ref, fused, "psnr");
  check_same_range(ref, fused, "psnr");
  double sse = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double d = ref.pixels[i] - fused.pixels[i];
    sse += d * d;
  }
  const double mse = sse / static_cast<double>(ref.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(ref.range_max * ref.range_max / mse);
}

MetricsReport evaluate(const GrayImage& ref, const GrayImage& fused) {
  return {entropy(fused), std_dev(fused), ssim(ref, fused), cross_correlation(ref, fused), psnr(ref, fused)};
}

std::string format_metric(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string to_json(const MetricsReport& m) {
  nlohmann::ordered_json j;
  auto put = [&](const char* key, double v) {
    if (std::isinf(v))
      j[key] = format_metric(v);
    else
      j[key] = v;
  };
  put("en", m.entropy);
  put("sd", m.std_dev);
  put("ssim", m.ssim);
  put("cc", m.cross_correlation);
  put("psnr", m.psnr);
  return j.dump();
}

std::string csv_header() { return "en,sd,ssim,cc,psnr"; }

std::string to_csv_row(const MetricsReport& m) {
  return format_metric(m.entropy) + "," + format_metric(m.std_dev) + "," + format_metric(m.ssim) + "," +
         format_metric(m.cross_correlation) + "," + format_metric(m.psnr);
}

}  // namespace dtfuse
