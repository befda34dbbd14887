#pragma once

#include "dtfuse/dtcwt.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace dtfuse {

/// Multiplicative source weights for one coefficient set.
struct WeightPair {
  double a = 1.0;
  double b = 1.0;

  friend bool operator==(const WeightPair&, const WeightPair&) = default;
};

/// Swarm hyperparameters. lower/upper give the search box per dimension.
struct PsoConfig {
  int population = 30;
  int iterations = 100;
  double inertia = 0.7;
  double cognitive = 1.5;
  double social = 1.5;
  std::vector<double> lower;
  std::vector<double> upper;
  std::uint64_t seed = 0;

  std::size_t dimensions() const { return lower.size(); }

  /// Throws InvalidArgument when any invariant is broken.
  void validate() const;
};

struct SwarmState {
  std::vector<std::vector<double>> positions;
  std::vector<std::vector<double>> velocities;
  std::vector<std::vector<double>> best_positions;
  std::vector<double> best_values;
  std::vector<double> global_best_position;
  double global_best_value = 0.0;
  int iteration = 0;
};

struct PsoResult {
  std::vector<double> position;
  double value = 0.0;
  std::vector<double> history;  // global best after each iteration
};

using Fitness = std::function<double(std::span<const double>)>;

/// Called once after initialisation (iteration 0) and after every iteration.
using SwarmObserver = std::function<void(const SwarmState&)>;

/// Global-best particle swarm minimizer.
///
/// Positions start uniform in the box with zero velocity. Each iteration
/// updates every particle's velocity from inertia plus personal- and
/// global-best attraction (one fresh uniform draw per particle per term),
/// caps |v| at half the box width, moves and clamps the particle into the
/// box, and replaces its personal best on strict improvement. The global
/// best is then the lowest personal best (lowest index on ties).
/// Deterministic for a given cfg.seed.
PsoResult pso_minimize(const Fitness& fitness, const PsoConfig& cfg, const SwarmObserver& observer = {});

/// Weights from the dominant eigenvector V of the 2x2 sample covariance of
/// the two sets, normalized as V / (V1 + V2). Falls back to (0.5, 0.5) when
/// both sets are constant or V has a non-positive component.
WeightPair pca_weights(std::span<const double> a, std::span<const double> b);
WeightPair pca_weights(std::span<const Complex> a, std::span<const Complex> b);

/// Weights in [0,1]^2 minimizing -Var(wa*a + wb*b) + lambda*(wa + wb - 1)^2
/// with lambda = 10 * Var(a ++ b). Complex sets are scored on magnitudes.
/// cfg.lower/upper are ignored; the box is always [0,1]^2.
WeightPair pso_fusion_weights(std::span<const double> a, std::span<const double> b, PsoConfig cfg);
WeightPair pso_fusion_weights(std::span<const Complex> a, std::span<const Complex> b, PsoConfig cfg);

/// The objective pso_fusion_weights minimizes, exposed for tests.
Fitness fusion_fitness(std::span<const double> a, std::span<const double> b);

std::pair<std::vector<double>, std::vector<double>> apply_weights(std::span<const double> a,
                                                                  std::span<const double> b, WeightPair w);
std::pair<std::vector<Complex>, std::vector<Complex>> apply_weights(std::span<const Complex> a,
                                                                    std::span<const Complex> b, WeightPair w);

/// Weight pairs for every coefficient set of two pyramids: one per lowpass
/// component and one per (level, orientation) subband.
struct PyramidWeights {
  std::array<WeightPair, 4> lowpass;
  std::vector<std::array<WeightPair, 6>> highpass;
};

enum class WeightMethod { Pca, Pso };

/// Computes all weight pairs in parallel. Each subband's swarm is seeded
/// with subband_seed(pso.seed, level, index) (level 0 for lowpass), so the
/// result does not depend on thread scheduling.
PyramidWeights pyramid_weights(const DtcwtPyramid& pa, const DtcwtPyramid& pb, WeightMethod method,
                               const PsoConfig& pso);

}  // namespace dtfuse
