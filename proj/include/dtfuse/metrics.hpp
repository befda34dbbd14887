#pragma once

#include "dtfuse/image.hpp"

#include <string>

namespace dtfuse {

/// Quality indices of a fused image. psnr is +infinity for identical images.
struct MetricsReport {
  double entropy = 0.0;
  double std_dev = 0.0;
  double ssim = 0.0;
  double cross_correlation = 0.0;
  double psnr = 0.0;
};

/// Shannon entropy (bits) of the intensity histogram. Pixels are clamped to
/// [0, range_max] and rounded to the nearest integer bin.
double entropy(const GrayImage& img);

/// Population standard deviation of the quantized intensity histogram.
double std_dev(const GrayImage& img);

/// Single-window structural similarity over whole-image statistics:
///   (2 mu_r mu_f + C1)(2 sigma_r sigma_f + C2) / ((mu_r^2 + mu_f^2 + C1)(sigma_r^2 + sigma_f^2 + C2))
/// with C1 = (0.01 L)^2, C2 = (0.03 L)^2, L = range_max. There is no
/// covariance term, so it compares luminance and contrast only.
double ssim(const GrayImage& ref, const GrayImage& fused);

/// 2 sum(r f) / (sum r^2 + sum f^2). Throws if both images are all zero.
double cross_correlation(const GrayImage& ref, const GrayImage& fused);

/// 10 log10(L^2 / MSE) in dB; +infinity when MSE is zero.
double psnr(const GrayImage& ref, const GrayImage& fused);

/// All five; entropy and std_dev come from the fused image alone.
MetricsReport evaluate(const GrayImage& ref, const GrayImage& fused);

/// Formats a metric value; infinities become "inf" / "-inf".
std::string format_metric(double v);

/// {"en":..,"sd":..,"ssim":..,"cc":..,"psnr":..} in that key order.
std::string to_json(const MetricsReport& m);

/// "en,sd,ssim,cc,psnr"
std::string csv_header();
std::string to_csv_row(const MetricsReport& m);

}  // namespace dtfuse
