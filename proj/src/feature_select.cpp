#include "dtfuse/feature_select.hpp"

#include "dtfuse/error.hpp"
#include "dtfuse/rng.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <string>

namespace dtfuse {

void PsoConfig::validate() const {
  if (population < 1) throw InvalidArgument("pso: population must be >= 1");
  if (iterations < 1) throw InvalidArgument("pso: iterations must be >= 1");
  if (!(inertia >= 0.0 && inertia <= 1.0)) throw InvalidArgument("pso: inertia must lie in [0, 1]");
  if (!(cognitive >= 0.0) || !(social >= 0.0)) throw InvalidArgument("pso: acceleration coefficients must be >= 0");
  if (lower.empty() || lower.size() != upper.size()) throw InvalidArgument("pso: bounds must be non-empty and paired");
  for (std::size_t d = 0; d < lower.size(); ++d) {
    if (!std::isfinite(lower[d]) || !std::isfinite(upper[d]) || !(lower[d] < upper[d]))
      throw InvalidArgument("pso: lower bound must be below upper bound in dimension " + std::to_string(d));
  }
}

namespace {

double evaluate(const Fitness& fitness, const std::vector<double>& x) {
  const double v = fitness(x);
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "pso: non-finite fitness at (";
    for (std::size_t i = 0; i < x.size(); ++i) msg << (i ? ", " : "") << x[i];
    msg << ")";
    throw NonFiniteFitness(msg.str(), x);
  }
  return v;
}

// Lowest index wins ties.
std::size_t argmin(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

PsoResult pso_minimize(const Fitness& fitness, const PsoConfig& cfg, const SwarmObserver& observer) {
  cfg.validate();
  const auto n = static_cast<std::size_t>(cfg.population);
  const std::size_t dims = cfg.dimensions();
  Rng rng(cfg.seed);

  std::vector<double> vmax(dims);
  for (std::size_t d = 0; d < dims; ++d) vmax[d] = 0.5 * (cfg.upper[d] - cfg.lower[d]);

  SwarmState s;
  s.positions.assign(n, std::vector<double>(dims));
  s.velocities.assign(n, std::vector<double>(dims, 0.0));
  for (auto& x : s.positions)
    for (std::size_t d = 0; d < dims; ++d) x[d] = cfg.lower[d] + (cfg.upper[d] - cfg.lower[d]) * rng.uniform();

  s.best_positions = s.positions;
  s.best_values.resize(n);
  for (std::size_t k = 0; k < n; ++k) s.best_values[k] = evaluate(fitness, s.positions[k]);
  std::size_t g = argmin(s.best_values);
  s.global_best_position = s.best_positions[g];
  s.global_best_value = s.best_values[g];
  if (observer) observer(s);

  PsoResult result;
  result.history.reserve(static_cast<std::size_t>(cfg.iterations));
  for (int it = 1; it <= cfg.iterations; ++it) {
    for (std::size_t k = 0; k < n; ++k) {
      const double mu_cognitive = rng.uniform();
      const double mu_social = rng.uniform();
      auto& x = s.positions[k];
      auto& v = s.velocities[k];
      for (std::size_t d = 0; d < dims; ++d) {
        v[d] = cfg.inertia * v[d] + cfg.cognitive * (s.best_positions[k][d] - x[d]) * mu_cognitive +
               cfg.social * (s.global_best_position[d] - x[d]) * mu_social;
        v[d] = std::clamp(v[d], -vmax[d], vmax[d]);
        x[d] = std::clamp(x[d] + v[d], cfg.lower[d], cfg.upper[d]);
      }
      const double value = evaluate(fitness, x);
      if (value < s.best_values[k]) {
        s.best_values[k] = value;
        s.best_positions[k] = x;
      }
    }
    g = argmin(s.best_values);
    s.global_best_position = s.best_positions[g];
    s.global_best_value = s.best_values[g];
    s.iteration = it;
    result.history.push_back(s.global_best_value);
    if (observer) observer(s);
  }

  result.position = s.global_best_position;
  result.value = s.global_best_value;
  return result;
}

// ---------------------------------------------------------------------------
// PCA

namespace {

void check_pair(std::size_t na, std::size_t nb, const char* who) {
  if (na != nb)
    throw InvalidArgument(std::string(who) + ": coefficient sets differ in length (" + std::to_string(na) + " vs " +
                          std::to_string(nb) + ")");
  if (na < 2) throw InvalidArgument(std::string(who) + ": coefficient sets need at least 2 values");
}

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double population_variance(std::span<const double> v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size());
}

std::vector<double> magnitudes(std::span<const Complex> v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](const Complex& z) { return std::abs(z); });
  return out;
}

constexpr WeightPair kEqualWeights{0.5, 0.5};

}  // namespace

WeightPair pca_weights(std::span<const double> a, std::span<const double> b) {
  check_pair(a.size(), b.size(), "pca_weights");
  const double ma = mean(a), mb = mean(b);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  const double denom = static_cast<double>(a.size() - 1);
  const double caa = saa / denom, cbb = sbb / denom, cab = sab / denom;

  // Both sets constant up to rounding of the means.
  const double trace = caa + cbb;
  if (trace == 0.0 || trace <= 1e-24 * (ma * ma + mb * mb)) return kEqualWeights;

  // Principal axis of the symmetric 2x2 matrix.
  const double theta = 0.5 * std::atan2(2.0 * cab, caa - cbb);
  double v1 = std::cos(theta), v2 = std::sin(theta);
  if (v1 + v2 < 0.0) {
    v1 = -v1;
    v2 = -v2;
  }
  if (v1 <= 0.0 || v2 <= 0.0) return kEqualWeights;
  return {v1 / (v1 + v2), v2 / (v1 + v2)};
}

WeightPair pca_weights(std::span<const Complex> a, std::span<const Complex> b) {
  check_pair(a.size(), b.size(), "pca_weights");
  return pca_weights(magnitudes(a), magnitudes(b));
}

// ---------------------------------------------------------------------------
// PSO weights

Fitness fusion_fitness(std::span<const double> a, std::span<const double> b) {
  check_pair(a.size(), b.size(), "fusion_fitness");
  std::vector<double> joined(a.begin(), a.end());
  joined.insert(joined.end(), b.begin(), b.end());
  const double joined_var = population_variance(joined);
  const double joined_mean = mean(joined);
  // Two identical constant sets leave the variance term flat; keep the penalty alive.
  const double lambda =
      (joined_var == 0.0 || joined_var <= 1e-24 * joined_mean * joined_mean) ? 10.0 : 10.0 * joined_var;

  return [a, b, lambda](std::span<const double> w) {
    const double wa = w[0], wb = w[1];
    const auto n = static_cast<double>(a.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += wa * a[i] + wb * b[i];
    const double m = sum / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = wa * a[i] + wb * b[i] - m;
      ss += d * d;
    }
    const double drift = wa + wb - 1.0;
    return -ss / n + lambda * drift * drift;
  };
}

WeightPair pso_fusion_weights(std::span<const double> a, std::span<const double> b, PsoConfig cfg) {
  check_pair(a.size(), b.size(), "pso_fusion_weights");
  cfg.lower = {0.0, 0.0};
  cfg.upper = {1.0, 1.0};
  const PsoResult r = pso_minimize(fusion_fitness(a, b), cfg);
  return {r.position[0], r.position[1]};
}

WeightPair pso_fusion_weights(std::span<const Complex> a, std::span<const Complex> b, PsoConfig cfg) {
  check_pair(a.size(), b.size(), "pso_fusion_weights");
  const auto ma = magnitudes(a), mb = magnitudes(b);
  return pso_fusion_weights(std::span<const double>(ma), std::span<const double>(mb), std::move(cfg));
}

// ---------------------------------------------------------------------------

std::pair<std::vector<double>, std::vector<double>> apply_weights(std::span<const double> a,
                                                                  std::span<const double> b, WeightPair w) {
  if (a.size() != b.size()) throw InvalidArgument("apply_weights: coefficient sets differ in length");
  std::vector<double> wa(a.size()), wb(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    wa[i] = w.a * a[i];
    wb[i] = w.b * b[i];
  }
  return {std::move(wa), std::move(wb)};
}

std::pair<std::vector<Complex>, std::vector<Complex>> apply_weights(std::span<const Complex> a,
                                                                    std::span<const Complex> b, WeightPair w) {
  if (a.size() != b.size()) throw InvalidArgument("apply_weights: coefficient sets differ in length");
  std::vector<Complex> wa(a.size()), wb(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    wa[i] = w.a * a[i];
    wb[i] = w.b * b[i];
  }
  return {std::move(wa), std::move(wb)};
}

PyramidWeights pyramid_weights(const DtcwtPyramid& pa, const DtcwtPyramid& pb, WeightMethod method,
                               const PsoConfig& pso) {
  if (pa.levels != pb.levels || pa.highpass.size() != pb.highpass.size())
    throw InvalidArgument("pyramid_weights: pyramids differ in level count");

  PyramidWeights out;
  out.highpass.resize(pa.highpass.size());
  const std::size_t tasks = 4 + 6 * pa.highpass.size();
  std::vector<std::exception_ptr> errors(tasks);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(tasks); ++t) {
    try {
      const auto task = static_cast<std::size_t>(t);
      PsoConfig cfg = pso;
      if (task < 4) {
        cfg.seed = subband_seed(pso.seed, 0, task);
        const std::span<const double> a(pa.lowpass[task].data), b(pb.lowpass[task].data);
        out.lowpass[task] = method == WeightMethod::Pca ? pca_weights(a, b) : pso_fusion_weights(a, b, cfg);
      } else {
        const std::size_t level = (task - 4) / 6, index = (task - 4) % 6;
        cfg.seed = subband_seed(pso.seed, level + 1, index);
        const std::span<const Complex> a(pa.highpass[level][index].values), b(pb.highpass[level][index].values);
        out.highpass[level][index] = method == WeightMethod::Pca ? pca_weights(a, b) : pso_fusion_weights(a, b, cfg);
      }
    } catch (...) {
      errors[static_cast<std::size_t>(t)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace dtfuse
