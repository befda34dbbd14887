#include "dtfuse/fusion.hpp"

#include "dtfuse/error.hpp"

#include <cmath>
#include <string>

namespace dtfuse {

std::string_view rule_name(FusionRule rule) {
  switch (rule) {
    case FusionRule::Average: return "avg";
    case FusionRule::Maximum: return "max";
    case FusionRule::Minimum: return "min";
  }
  return "?";
}

std::string_view method_name(FusionMethod method) {
  switch (method) {
    case FusionMethod::None: return "none";
    case FusionMethod::Pca: return "pca";
    case FusionMethod::Pso: return "pso";
  }
  return "?";
}

std::optional<FusionRule> parse_rule(std::string_view name) {
  if (name == "avg") return FusionRule::Average;
  if (name == "max") return FusionRule::Maximum;
  if (name == "min") return FusionRule::Minimum;
  return std::nullopt;
}

std::optional<FusionMethod> parse_method(std::string_view name) {
  if (name == "none") return FusionMethod::None;
  if (name == "pca") return FusionMethod::Pca;
  if (name == "pso") return FusionMethod::Pso;
  return std::nullopt;
}

namespace {

template <typename T, typename Key>
std::vector<T> merge(std::span<const T> a, std::span<const T> b, FusionRule rule, Key key) {
  if (a.size() != b.size())
    throw InvalidArgument("fuse_rule: coefficient sets differ in length (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  std::vector<T> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    switch (rule) {
      case FusionRule::Average: out[i] = (a[i] + b[i]) / 2.0; break;
      case FusionRule::Maximum: out[i] = key(b[i]) > key(a[i]) ? b[i] : a[i]; break;
      case FusionRule::Minimum: out[i] = key(b[i]) < key(a[i]) ? b[i] : a[i]; break;
    }
  }
  return out;
}

}  // namespace

std::vector<double> fuse_rule(std::span<const double> a, std::span<const double> b, FusionRule rule) {
  return merge(a, b, rule, [](double v) { return v; });
}

std::vector<Complex> fuse_rule(std::span<const Complex> a, std::span<const Complex> b, FusionRule rule) {
  return merge(a, b, rule, [](const Complex& z) { return std::abs(z); });
}

DtcwtPyramid fuse_pyramids(const DtcwtPyramid& pa, const DtcwtPyramid& pb, const FusionSpec& spec,
                           PyramidWeights* weights_out) {
  pa.validate();
  pb.validate();
  if (pa.levels != pb.levels || pa.original_height != pb.original_height || pa.original_width != pb.original_width)
    throw InvalidArgument("fuse_pyramids: pyramids are not structurally identical");

  PyramidWeights weights;
  weights.highpass.resize(pa.highpass.size());  // default weights are (1, 1)
  if (spec.method != FusionMethod::None) {
    PsoConfig pso = spec.pso;
    pso.seed = spec.seed;
    weights = pyramid_weights(pa, pb, spec.method == FusionMethod::Pca ? WeightMethod::Pca : WeightMethod::Pso, pso);
  }

  DtcwtPyramid out;
  out.levels = pa.levels;
  out.original_height = pa.original_height;
  out.original_width = pa.original_width;
  out.range_max = pa.range_max;
  out.highpass.resize(pa.highpass.size());

  for (std::size_t q = 0; q < 4; ++q) {
    auto [wa, wb] = apply_weights(pa.lowpass[q].data, pb.lowpass[q].data, weights.lowpass[q]);
    out.lowpass[q] = Plane(pa.lowpass[q].rows, pa.lowpass[q].cols);
    out.lowpass[q].data = fuse_rule(std::span<const double>(wa), std::span<const double>(wb), spec.lfc_rule);
  }
  for (std::size_t l = 0; l < pa.highpass.size(); ++l) {
    for (std::size_t o = 0; o < 6; ++o) {
      const ComplexSubband& sa = pa.highpass[l][o];
      auto [wa, wb] = apply_weights(sa.values, pb.highpass[l][o].values, weights.highpass[l][o]);
      ComplexSubband& dst = out.highpass[l][o];
      dst = ComplexSubband(sa.height, sa.width);
      dst.values = fuse_rule(std::span<const Complex>(wa), std::span<const Complex>(wb), spec.hfc_rule);
    }
  }

  if (weights_out) *weights_out = std::move(weights);
  return out;
}

GrayImage fuse_pipeline(const GrayImage& a, const GrayImage& b, const FusionSpec& spec) {
  a.validate();
  b.validate();
  if (a.height != b.height || a.width != b.width)
    throw InvalidArgument("fuse_pipeline: images differ in size (" + std::to_string(a.height) + "x" +
                          std::to_string(a.width) + " vs " + std::to_string(b.height) + "x" +
                          std::to_string(b.width) + ")");
  if (a.range_max != b.range_max) throw InvalidArgument("fuse_pipeline: images differ in range_max");

  const DtcwtPyramid pa = dtcwt_forward(a, spec.levels);
  const DtcwtPyramid pb = dtcwt_forward(b, spec.levels);
  return clamp_to_range(dtcwt_inverse(fuse_pyramids(pa, pb, spec)));
}

}  // namespace dtfuse
