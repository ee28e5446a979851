#include "multicopy/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "multicopy/multiaction.hpp"

namespace multicopy::bandit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double std_normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }
double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

std::mt19937_64 row_stream(std::uint64_t seed, std::uint64_t row) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(row >> 32)};
  return std::mt19937_64(seq);
}

// (mean, stddev) for arms that are constants or normals.
std::optional<std::pair<double, double>> as_gaussian(const ArmDistribution& a) {
  if (auto c = std::get_if<Constant>(&a.kind())) return std::pair{c->value, 0.0};
  if (auto n = std::get_if<Normal>(&a.kind())) return std::pair{n->mean, n->stddev};
  return std::nullopt;
}

// E[max(X, Y)] for jointly independent Gaussians (sigma may be zero).
double max_of_gaussians(std::pair<double, double> x, std::pair<double, double> y) {
  const double theta = std::hypot(x.second, y.second);
  if (theta == 0.0) return std::max(x.first, y.first);
  const double alpha = (x.first - y.first) / theta;
  return x.first * std_normal_cdf(alpha) + y.first * std_normal_cdf(-alpha) +
         theta * std_normal_pdf(alpha);
}

// E[max(c, s + Exp(mean))].
double max_constant_exponential(double c, const ShiftedExponential& e) {
  if (c <= e.offset) return e.offset + e.mean;
  return c + e.mean * std::exp(-(c - e.offset) / e.mean);
}

// E[max(X, Y)] = E[X] + E[Y] - E[min(X, Y)], with E[min] the integral of the
// joint survival function split at the larger offset.
double max_of_exponentials(ShiftedExponential x, ShiftedExponential y) {
  if (x.offset > y.offset) std::swap(x, y);
  const double gap = y.offset - x.offset;
  const double survive_gap = std::exp(-gap / x.mean);
  const double combined_rate = 1.0 / x.mean + 1.0 / y.mean;
  const double expected_min = x.offset + x.mean * (1.0 - survive_gap) + survive_gap / combined_rate;
  return (x.offset + x.mean) + (y.offset + y.mean) - expected_min;
}

std::string combo_label(const std::vector<std::string>& parts) {
  if (parts.size() == 1) return parts.front();
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += parts[i];
  }
  return out + ")";
}

TableRow make_row(std::string combo, std::span<const ArmDistribution> arms, std::size_t samples,
                  std::uint64_t seed, std::uint64_t row) {
  auto rng = row_stream(seed, row);
  std::vector<double> draws;
  draws.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    double best = -INFINITY;
    for (const auto& a : arms) best = std::max(best, a.sample(rng));
    draws.push_back(best);
  }
  double sum = 0.0;
  for (double d : draws) sum += d;
  const double mean = sum / static_cast<double>(samples);
  double sq = 0.0;
  for (double d : draws) sq += (d - mean) * (d - mean);
  const double se =
      samples > 1 ? std::sqrt(sq / static_cast<double>(samples - 1) / static_cast<double>(samples))
                  : 0.0;
  return TableRow{std::move(combo), Estimate{mean, se}, expected_max_oracle(arms)};
}

}  // namespace

ArmDistribution ArmDistribution::constant(double c) { return ArmDistribution(Constant{c}); }

ArmDistribution ArmDistribution::normal(double mean, double stddev) {
  if (!(stddev > 0.0)) throw std::invalid_argument("normal arm needs stddev > 0");
  return ArmDistribution(Normal{mean, stddev});
}

ArmDistribution ArmDistribution::exponential(double mean) { return shifted_exponential(0.0, mean); }

ArmDistribution ArmDistribution::shifted_exponential(double offset, double mean) {
  if (!(mean > 0.0)) throw std::invalid_argument("exponential arm needs mean > 0");
  return ArmDistribution(ShiftedExponential{offset, mean});
}

double ArmDistribution::mean() const {
  return std::visit(overloaded{[](Constant c) { return c.value; }, [](Normal n) { return n.mean; },
                               [](ShiftedExponential e) { return e.offset + e.mean; }},
                    kind_);
}

double ArmDistribution::sample(std::mt19937_64& rng) const {
  return std::visit(
      overloaded{[](Constant c) { return c.value; },
                 [&](Normal n) { return std::normal_distribution<double>(n.mean, n.stddev)(rng); },
                 [&](ShiftedExponential e) {
                   return e.offset + std::exponential_distribution<double>(1.0 / e.mean)(rng);
                 }},
      kind_);
}

std::string ArmDistribution::describe() const {
  std::ostringstream os;
  std::visit(overloaded{[&](Constant c) { os << "const(" << c.value << ")"; },
                        [&](Normal n) { os << "normal(" << n.mean << "," << n.stddev << ")"; },
                        [&](ShiftedExponential e) {
                          if (e.offset == 0.0)
                            os << "exp(mean=" << e.mean << ")";
                          else
                            os << e.offset << "+exp(mean=" << e.mean << ")";
                        }},
             kind_);
  return os.str();
}

ArmSet::ArmSet(std::initializer_list<std::pair<std::string, ArmDistribution>> arms) {
  for (const auto& [label, arm] : arms) add(label, arm);
}

void ArmSet::add(std::string label, ArmDistribution arm) {
  for (const auto& existing : arms_)
    if (existing.first == label) throw std::invalid_argument("duplicate arm label: " + label);
  arms_.emplace_back(std::move(label), arm);
}

Estimate sample_max_estimate(std::span<const ArmDistribution> arms, std::size_t samples,
                             std::uint64_t seed) {
  if (arms.empty()) throw std::invalid_argument("sample_max_estimate needs at least one arm");
  if (samples == 0) throw std::invalid_argument("sample_max_estimate needs at least one sample");
  return make_row("", arms, samples, seed, 0).estimate;
}

std::optional<double> expected_max_oracle(std::span<const ArmDistribution> arms) {
  if (arms.size() == 1) return arms.front().mean();
  if (arms.size() != 2) return std::nullopt;
  const auto& a = arms[0];
  const auto& b = arms[1];

  auto ga = as_gaussian(a), gb = as_gaussian(b);
  if (ga && gb) return max_of_gaussians(*ga, *gb);

  auto ea = std::get_if<ShiftedExponential>(&a.kind());
  auto eb = std::get_if<ShiftedExponential>(&b.kind());
  if (ea && eb) return max_of_exponentials(*ea, *eb);

  auto ca = std::get_if<Constant>(&a.kind());
  auto cb = std::get_if<Constant>(&b.kind());
  if (ca && eb) return max_constant_exponential(ca->value, *eb);
  if (cb && ea) return max_constant_exponential(cb->value, *ea);
  return std::nullopt;
}

std::vector<TableRow> table_report(const ArmSet& arms, std::size_t max_arity, std::size_t samples,
                                   std::uint64_t seed) {
  if (max_arity == 0) throw std::invalid_argument("max_arity must be at least 1");
  if (arms.size() == 0) throw std::invalid_argument("table_report needs at least one arm");
  std::vector<TableRow> rows;
  const auto combos = enumerate_multiactions(arms.size(), max_arity, true);
  for (std::size_t r = 0; r < combos.size(); ++r) {
    std::vector<std::string> names;
    std::vector<ArmDistribution> selected;
    for (ActionId a : combos[r].actions()) {
      names.push_back(arms.label(a.index()));
      selected.push_back(arms.arm(a.index()));
    }
    rows.push_back(make_row(combo_label(names), selected, samples, seed, r));
  }
  return rows;
}

std::vector<TableRow> pair_table_report(const ArmSet& first, const ArmSet& second,
                                        std::size_t samples, std::uint64_t seed) {
  std::vector<TableRow> rows;
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < first.size(); ++i)
    for (std::size_t j = 0; j < second.size(); ++j) {
      const std::vector<ArmDistribution> pair{first.arm(i), second.arm(j)};
      rows.push_back(
          make_row(combo_label({first.label(i), second.label(j)}), pair, samples, seed, r++));
    }
  return rows;
}

double shadowed_value_estimate(const ArmDistribution& star,
                               std::span<const ArmDistribution> partner_pool, std::size_t samples,
                               std::uint64_t seed) {
  if (partner_pool.empty()) throw std::invalid_argument("partner pool must not be empty");
  if (samples == 0) throw std::invalid_argument("shadowed_value_estimate needs samples");
  auto rng = row_stream(seed, 0);
  std::uniform_int_distribution<std::size_t> pick(0, partner_pool.size() - 1);
  double sum = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto& partner = partner_pool[pick(rng)];
    const double x = star.sample(rng);
    sum += std::max(x, partner.sample(rng));
  }
  return sum / static_cast<double>(samples);
}

ArmSet stable_noisy_arms() {
  return ArmSet{{"S", ArmDistribution::normal(10.0, 1.0)},
                {"N", ArmDistribution::normal(5.0, 30.0)}};
}

ArmSet constant_exponential_arms() {
  return ArmSet{{"C", ArmDistribution::constant(100.0)},
                {"E", ArmDistribution::exponential(70.0)}};
}

ArmSet ShadowedConstruction::first_agent() const {
  return ArmSet{{"a1*", star_first}, {"a1", distractor_first}};
}

ArmSet ShadowedConstruction::second_agent() const {
  return ArmSet{{"a2", distractor_second}, {"a2*", star_second}};
}

std::vector<TableRow> reproduce_table(int table, std::size_t samples, std::uint64_t seed) {
  switch (table) {
    case 1:
      return table_report(stable_noisy_arms(), 2, samples, seed);
    case 2:
      return table_report(constant_exponential_arms(), 2, samples, seed);
    case 3: {
      // Row order: (a1*,a2) (a1*,a2*) (a1,a2) (a1,a2*).
      ShadowedConstruction c;
      return pair_table_report(c.first_agent(), c.second_agent(), samples, seed);
    }
    default:
      throw std::invalid_argument("table must be 1, 2 or 3");
  }
}

}  // namespace multicopy::bandit
