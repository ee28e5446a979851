#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace multicopy::bandit {

struct Constant {
  double value;
};
struct Normal {
  double mean;
  double stddev;
};
/// offset + Exponential(mean). A plain exponential has offset 0.
struct ShiftedExponential {
  double offset;
  double mean;
};

/// Reward distribution of one bandit arm.
class ArmDistribution {
 public:
  using Kind = std::variant<Constant, Normal, ShiftedExponential>;

  static ArmDistribution constant(double c);
  static ArmDistribution normal(double mean, double stddev);
  /// Exponential with the given mean, i.e. rate 1/mean.
  static ArmDistribution exponential(double mean);
  static ArmDistribution shifted_exponential(double offset, double mean);

  const Kind& kind() const { return kind_; }
  double mean() const;
  double sample(std::mt19937_64& rng) const;
  std::string describe() const;

 private:
  explicit ArmDistribution(Kind k) : kind_(k) {}
  Kind kind_;
};

/// Labeled arms in display order. Labels are unique.
class ArmSet {
 public:
  ArmSet() = default;
  ArmSet(std::initializer_list<std::pair<std::string, ArmDistribution>> arms);

  void add(std::string label, ArmDistribution arm);
  std::size_t size() const { return arms_.size(); }
  const std::string& label(std::size_t i) const { return arms_.at(i).first; }
  const ArmDistribution& arm(std::size_t i) const { return arms_.at(i).second; }

 private:
  std::vector<std::pair<std::string, ArmDistribution>> arms_;
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo estimate of E[max_i X_i]. Deterministic for a fixed seed.
/// Throws std::invalid_argument on an empty arm list or zero samples.
Estimate sample_max_estimate(std::span<const ArmDistribution> arms, std::size_t samples,
                             std::uint64_t seed);

/// Closed-form E[max_i X_i] for: a single arm; two arms drawn from
/// {constant, normal}; two (shifted) exponentials; a constant against a
/// (shifted) exponential. Returns nullopt for anything else.
std::optional<double> expected_max_oracle(std::span<const ArmDistribution> arms);

struct TableRow {
  std::string combo;
  Estimate estimate;
  std::optional<double> oracle;
};

/// One row per multiaction (duplicates allowed) of up to `max_arity` arms.
/// Each row draws from its own stream derived from (seed, row index).
std::vector<TableRow> table_report(const ArmSet& arms, std::size_t max_arity, std::size_t samples,
                                   std::uint64_t seed);

/// One row per (first, second) pair in row-major order.
std::vector<TableRow> pair_table_report(const ArmSet& first, const ArmSet& second,
                                        std::size_t samples, std::uint64_t seed);

/// E[max(star, partner)] with the partner drawn uniformly from `pool` on
/// every sample: the value an independent learner sees for `star` under
/// random pairing.
double shadowed_value_estimate(const ArmDistribution& star,
                               std::span<const ArmDistribution> partner_pool, std::size_t samples,
                               std::uint64_t seed);

/// Stable (S) N(10,1) and noisy (N) N(5,30).
ArmSet stable_noisy_arms();
/// Constant (C) 100 and exponential (E) with mean 70.
ArmSet constant_exponential_arms();

/// Four-action construction whose best joint pair is hidden by distractors.
struct ShadowedConstruction {
  ArmDistribution star_first = ArmDistribution::constant(110.0);
  ArmDistribution star_second = ArmDistribution::shifted_exponential(10.0, 70.0);
  ArmDistribution distractor_first = ArmDistribution::exponential(70.0);
  ArmDistribution distractor_second = ArmDistribution::constant(100.0);

  ArmSet first_agent() const;
  ArmSet second_agent() const;
};

/// Rows for the three reproduced tables (1, 2 or 3).
std::vector<TableRow> reproduce_table(int table, std::size_t samples, std::uint64_t seed);

inline constexpr std::size_t kDefaultSamples = 10'000;
inline constexpr std::size_t kPrecisionSamples = 100'000;

}  // namespace multicopy::bandit
