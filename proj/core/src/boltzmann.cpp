#include "multicopy/boltzmann.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace multicopy {

double Schedules::progress(std::size_t episode) const {
  if (episodes <= 1) return 0.0;
  const double p = static_cast<double>(episode) / static_cast<double>(episodes - 1);
  return std::clamp(p, 0.0, 1.0);
}

double Schedules::temperature(std::size_t episode) const {
  return temperature_start + (temperature_end - temperature_start) * progress(episode);
}

std::vector<double> boltzmann_probabilities(std::span<const double> values, double temperature) {
  if (values.empty()) throw std::invalid_argument("no candidates to choose from");
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  const double top = *std::max_element(values.begin(), values.end());
  std::vector<double> p(values.size());
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    p[i] = std::exp((values[i] - top) / temperature);
    total += p[i];
  }
  for (double& x : p) x /= total;
  return p;
}

std::size_t boltzmann_index(std::span<const double> values, double temperature,
                            std::mt19937_64& rng) {
  const auto p = boltzmann_probabilities(values, temperature);
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (u < p[i]) return i;
    u -= p[i];
    last_positive = i;
  }
  return last_positive;  // rounding left u just above the total
}

std::size_t greedy_index(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("no candidates to choose from");
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

}  // namespace multicopy
