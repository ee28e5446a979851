#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace multicopy {

/// Per-episode learning rates and exploration temperature. All three move
/// linearly from their start value at episode 0 to their end value at the
/// final training episode.
struct Schedules {
  std::size_t episodes = 7500;
  double lr_cost_start = 0.2;
  double lr_opt_start = 0.05;
  double temperature_start = 100.0;
  double temperature_end = 1.0;
  double discount = 0.9;

  double progress(std::size_t episode) const;
  double lr_cost(std::size_t episode) const { return lr_cost_start * (1.0 - progress(episode)); }
  double lr_opt(std::size_t episode) const { return lr_opt_start * (1.0 - progress(episode)); }
  double temperature(std::size_t episode) const;
};

/// Softmax of value advantages, exp((v - max v) / T), normalised.
std::vector<double> boltzmann_probabilities(std::span<const double> values, double temperature);

/// Samples an index from boltzmann_probabilities. Consumes exactly one
/// uniform draw, including for a single candidate.
std::size_t boltzmann_index(std::span<const double> values, double temperature,
                            std::mt19937_64& rng);

/// Index of the largest value; ties go to the lowest index.
std::size_t greedy_index(std::span<const double> values);

}  // namespace multicopy
