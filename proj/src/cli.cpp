#include "dtfuse/cli.hpp"

#include "dtfuse/dtcwt.hpp"
#include "dtfuse/error.hpp"
#include "dtfuse/image.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>

namespace dtfuse::cli {

namespace {

const std::map<std::string, FusionRule> kRules{
    {"avg", FusionRule::Average}, {"max", FusionRule::Maximum}, {"min", FusionRule::Minimum}};
const std::map<std::string, FusionMethod> kMethods{
    {"none", FusionMethod::None}, {"pca", FusionMethod::Pca}, {"pso", FusionMethod::Pso}};

MetricsReport mean_report(const GrayImage& fused, const MetricsReport& ra, const MetricsReport& rb) {
  return {entropy(fused), std_dev(fused), 0.5 * (ra.ssim + rb.ssim),
          0.5 * (ra.cross_correlation + rb.cross_correlation), 0.5 * (ra.psnr + rb.psnr)};
}

void add_pso_flags(CLI::App* cmd, FusionSpec& spec) {
  cmd->add_option("--pso-pop", spec.pso.population, "Swarm population")->check(CLI::PositiveNumber);
  cmd->add_option("--pso-iters", spec.pso.iterations, "Swarm iterations")->check(CLI::PositiveNumber);
  cmd->add_option("--pso-inertia", spec.pso.inertia, "Inertia weight")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--pso-c1", spec.pso.cognitive, "Cognitive coefficient")->check(CLI::NonNegativeNumber);
  cmd->add_option("--pso-c2", spec.pso.social, "Social coefficient")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", spec.seed, "Random seed");
  cmd->add_option("--levels", spec.levels, "Decomposition levels")->check(CLI::Range(1, 12));
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ImageIoError(ImageIoError::Kind::Unwritable, "cannot open '" + path.string() + "' for writing");
  file << text;
  file.close();
  if (!file) {
    std::error_code ec;
    std::filesystem::remove(path, ec);
    throw ImageIoError(ImageIoError::Kind::Unwritable, "write failed on '" + path.string() + "'");
  }
}

struct FuseArgs {
  std::string a, b, out, report, dump_dir;
  FusionSpec spec;
};

int cmd_fuse(const FuseArgs& args, std::ostream& out) {
  const GrayImage a = read_image(args.a);
  const GrayImage b = read_image(args.b);

  GrayImage fused;
  if (args.dump_dir.empty()) {
    fused = fuse_pipeline(a, b, args.spec);
  } else {
    if (a.height != b.height || a.width != b.width || a.range_max != b.range_max)
      throw InvalidArgument("fuse: input images differ in size or range");
    const DtcwtPyramid pyr =
        fuse_pyramids(dtcwt_forward(a, args.spec.levels), dtcwt_forward(b, args.spec.levels), args.spec);
    dump_pyramid(pyr, args.dump_dir);
    fused = clamp_to_range(dtcwt_inverse(pyr));
  }
  write_image(fused, args.out);

  if (args.report == "json") {
    nlohmann::ordered_json j;
    j["vs_a"] = nlohmann::ordered_json::parse(to_json(evaluate(a, fused)));
    j["vs_b"] = nlohmann::ordered_json::parse(to_json(evaluate(b, fused)));
    out << j.dump() << "\n";
  }
  return kOk;
}

int cmd_metrics(const std::string& ref_path, const std::string& fused_path, const std::string& format,
                std::ostream& out) {
  const MetricsReport m = evaluate(read_image(ref_path), read_image(fused_path));
  if (format == "csv")
    out << csv_header() << "\n" << to_csv_row(m) << "\n";
  else
    out << to_json(m) << "\n";
  return kOk;
}

int cmd_gen(std::size_t size, std::uint64_t seed, const std::string& out_a, const std::string& out_b) {
  const auto [ct, mr] = generate_phantom_pair(size, seed);
  write_image(ct, out_a);
  write_image(mr, out_b);
  return kOk;
}

struct BenchArgs {
  std::string a, b, out;
  bool verbose = false;
  FusionSpec spec;
};

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  const GrayImage a = read_image(args.a);
  const GrayImage b = read_image(args.b);
  const auto rows = run_bench(a, b, args.spec);
  write_text(args.out, bench_csv(rows));

  if (args.verbose) {
    for (const BenchRow& r : rows) {
      out << method_name(r.method) << " " << rule_name(r.lfc) << "-" << rule_name(r.hfc) << " vs_a " << to_json(r.vs_a)
          << " vs_b " << to_json(r.vs_b) << "\n";
    }
  }
  const BenchSummary s = summarize(rows);
  out << "PCA >= PSO on SSIM in " << s.ssim_wins << "/6 combos, on CC in " << s.cc_wins
      << "/6 combos; mean elapsed_ms pca=" << format_metric(s.mean_pca_ms)
      << " pso=" << format_metric(s.mean_pso_ms) << "\n";
  return kOk;
}

}  // namespace

std::vector<BenchRow> run_bench(const GrayImage& a, const GrayImage& b, const FusionSpec& base) {
  std::vector<BenchRow> rows;
  for (FusionMethod method : {FusionMethod::Pca, FusionMethod::Pso}) {
    for (const auto& [lfc, hfc] : kBenchCombos) {
      FusionSpec spec = base;
      spec.method = method;
      spec.lfc_rule = lfc;
      spec.hfc_rule = hfc;

      const auto start = std::chrono::steady_clock::now();
      const GrayImage fused = fuse_pipeline(a, b, spec);
      const auto stop = std::chrono::steady_clock::now();

      BenchRow row;
      row.method = method;
      row.lfc = lfc;
      row.hfc = hfc;
      row.vs_a = evaluate(a, fused);
      row.vs_b = evaluate(b, fused);
      row.metrics = mean_report(fused, row.vs_a, row.vs_b);
      row.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      rows.push_back(row);
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string csv = "method,lfc,hfc,en,sd,ssim,cc,psnr,elapsed_ms\n";
  for (const BenchRow& r : rows) {
    csv += std::string(method_name(r.method)) + "," + std::string(rule_name(r.lfc)) + "," +
           std::string(rule_name(r.hfc)) + "," + to_csv_row(r.metrics) + "," + format_metric(r.elapsed_ms) + "\n";
  }
  return csv;
}

BenchSummary summarize(const std::vector<BenchRow>& rows) {
  BenchSummary s;
  int npca = 0, npso = 0;
  for (const BenchRow& p : rows) {
    if (p.method == FusionMethod::Pca) {
      s.mean_pca_ms += p.elapsed_ms;
      ++npca;
    } else if (p.method == FusionMethod::Pso) {
      s.mean_pso_ms += p.elapsed_ms;
      ++npso;
    }
    if (p.method != FusionMethod::Pca) continue;
    for (const BenchRow& q : rows) {
      if (q.method != FusionMethod::Pso || q.lfc != p.lfc || q.hfc != p.hfc) continue;
      if (p.metrics.ssim >= q.metrics.ssim) ++s.ssim_wins;
      if (p.metrics.cross_correlation >= q.metrics.cross_correlation) ++s.cc_wins;
    }
  }
  if (npca) s.mean_pca_ms /= npca;
  if (npso) s.mean_pso_ms /= npso;
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dual-tree complex wavelet image fusion with PCA/PSO coefficient weighting", "dtfuse"};
  app.require_subcommand(1);

  FuseArgs fuse;
  auto* fuse_cmd = app.add_subcommand("fuse", "Fuse two co-registered grayscale images");
  fuse_cmd->add_option("--a", fuse.a, "First source image")->required();
  fuse_cmd->add_option("--b", fuse.b, "Second source image")->required();
  fuse_cmd->add_option("--out", fuse.out, "Output PGM")->required();
  fuse_cmd->add_option("--method", fuse.spec.method, "Weighting: none|pca|pso")
      ->transform(CLI::CheckedTransformer(kMethods, CLI::ignore_case));
  fuse_cmd->add_option("--lfc", fuse.spec.lfc_rule, "Lowpass rule: avg|max|min")
      ->transform(CLI::CheckedTransformer(kRules, CLI::ignore_case));
  fuse_cmd->add_option("--hfc", fuse.spec.hfc_rule, "Subband rule: avg|max|min")
      ->transform(CLI::CheckedTransformer(kRules, CLI::ignore_case));
  fuse_cmd->add_option("--report", fuse.report, "Print metrics against each source")->check(CLI::IsMember({"json"}));
  fuse_cmd->add_option("--dump-pyramid", fuse.dump_dir, "Write fused subband magnitudes as PGMs");
  add_pso_flags(fuse_cmd, fuse.spec);

  std::string ref_path, fused_path, format = "json";
  auto* metrics_cmd = app.add_subcommand("metrics", "Score a fused image against a reference");
  metrics_cmd->add_option("--ref", ref_path, "Reference image")->required();
  metrics_cmd->add_option("--fused", fused_path, "Fused image")->required();
  metrics_cmd->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  std::size_t gen_size = 128;
  std::uint64_t gen_seed = 0;
  std::string out_a, out_b;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic CT-like/MR-like phantom pair");
  gen_cmd->add_option("--size", gen_size, "Side length (>= 32, divisible by 8)");
  gen_cmd->add_option("--seed", gen_seed, "Random seed");
  gen_cmd->add_option("--out-a", out_a, "CT-like output PGM")->required();
  gen_cmd->add_option("--out-b", out_b, "MR-like output PGM")->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Compare PCA and PSO weighting over six rule combinations");
  bench_cmd->add_option("--a", bench.a, "First source image")->required();
  bench_cmd->add_option("--b", bench.b, "Second source image")->required();
  bench_cmd->add_option("--out", bench.out, "Output CSV")->required();
  bench_cmd->add_flag("--verbose", bench.verbose, "Also print per-source metrics");
  add_pso_flags(bench_cmd, bench.spec);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kUsageError;
  }

  try {
    if (*fuse_cmd) return cmd_fuse(fuse, out);
    if (*metrics_cmd) return cmd_metrics(ref_path, fused_path, format, out);
    if (*gen_cmd) return cmd_gen(gen_size, gen_seed, out_a, out_b);
    if (*bench_cmd) return cmd_bench(bench, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace dtfuse::cli
