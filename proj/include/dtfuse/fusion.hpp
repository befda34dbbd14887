#pragma once

#include "dtfuse/dtcwt.hpp"
#include "dtfuse/feature_select.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace dtfuse {

enum class FusionRule { Average, Maximum, Minimum };

enum class FusionMethod { None, Pca, Pso };

struct FusionSpec {
  FusionMethod method = FusionMethod::Pca;
  FusionRule lfc_rule = FusionRule::Average;  // lowpass
  FusionRule hfc_rule = FusionRule::Maximum;  // oriented subbands
  int levels = 2;
  std::uint64_t seed = 0;
  /// Swarm hyperparameters for FusionMethod::Pso. Bounds and seed are
  /// overridden per subband.
  PsoConfig pso{};
};

std::string_view rule_name(FusionRule rule);     // "avg" | "max" | "min"
std::string_view method_name(FusionMethod method);  // "none" | "pca" | "pso"
std::optional<FusionRule> parse_rule(std::string_view name);
std::optional<FusionMethod> parse_method(std::string_view name);

/// Element-wise merge. Max/Min pick the larger/smaller value (real) or
/// magnitude (complex) and return that element untouched; ties pick a.
std::vector<double> fuse_rule(std::span<const double> a, std::span<const double> b, FusionRule rule);
std::vector<Complex> fuse_rule(std::span<const Complex> a, std::span<const Complex> b, FusionRule rule);

/// Weights each coefficient set (unless method is None), then merges the
/// lowpass components with lfc_rule and every oriented subband with hfc_rule.
/// If weights_out is given it receives the weights that were applied.
DtcwtPyramid fuse_pyramids(const DtcwtPyramid& pa, const DtcwtPyramid& pb, const FusionSpec& spec,
                           PyramidWeights* weights_out = nullptr);

/// forward(a), forward(b) -> fuse_pyramids -> inverse -> clamp to [0, range_max].
GrayImage fuse_pipeline(const GrayImage& a, const GrayImage& b, const FusionSpec& spec);

}  // namespace dtfuse
