#pragma once

#include "dtfuse/fusion.hpp"
#include "dtfuse/metrics.hpp"

#include <array>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace dtfuse::cli {

/// Exit codes of every command.
enum ExitCode : int { kOk = 0, kRuntimeError = 1, kUsageError = 2 };

/// Runs the command line (program name excluded) and returns the exit code.
/// Subcommands: fuse, metrics, gen, bench.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The six LFC/HFC rule pairs compared by the benchmark, in CSV row order.
inline constexpr std::array<std::pair<FusionRule, FusionRule>, 6> kBenchCombos{{
    {FusionRule::Average, FusionRule::Average},
    {FusionRule::Average, FusionRule::Maximum},
    {FusionRule::Maximum, FusionRule::Average},
    {FusionRule::Maximum, FusionRule::Maximum},
    {FusionRule::Minimum, FusionRule::Average},
    {FusionRule::Minimum, FusionRule::Maximum},
}};

struct BenchRow {
  FusionMethod method = FusionMethod::Pca;
  FusionRule lfc = FusionRule::Average;
  FusionRule hfc = FusionRule::Average;
  /// ssim/cc/psnr are the mean of the scores against each source image;
  /// entropy and std_dev belong to the fused image.
  MetricsReport metrics;
  MetricsReport vs_a;
  MetricsReport vs_b;
  double elapsed_ms = 0.0;  // fuse_pipeline only
};

/// PCA then PSO, each over kBenchCombos: 12 rows. base supplies levels,
/// seed and swarm hyperparameters.
std::vector<BenchRow> run_bench(const GrayImage& a, const GrayImage& b, const FusionSpec& base);

/// "method,lfc,hfc,en,sd,ssim,cc,psnr,elapsed_ms" plus one line per row.
std::string bench_csv(const std::vector<BenchRow>& rows);

struct BenchSummary {
  int ssim_wins = 0;  // combos where PCA ssim >= PSO ssim
  int cc_wins = 0;
  double mean_pca_ms = 0.0;
  double mean_pso_ms = 0.0;
};

BenchSummary summarize(const std::vector<BenchRow>& rows);

}  // namespace dtfuse::cli
