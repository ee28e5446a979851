#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "multicopy/bridges.hpp"

namespace multicopy {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

// Plain-text `key = value` format. `#` starts a comment, blank lines are
// ignored, keys may repeat only for distinct bridges. Grid keys:
//
//   bridge.<name>      = <length> <width> <success_reward>   (in order)
//   step_cost          = <real>
//   fall_cost          = <real>
//   noise              = <real in [0,1]>
//   max_actions        = <int >= 1>
//   allow_duplicates   = true|false
//   broken_mode        = true|false
//   max_steps_per_copy = <int >= 1>
//
// Any bridge.* key replaces the whole default bridge list.

std::vector<ConfigEntry> parse_config(std::istream& in);
std::vector<ConfigEntry> read_config_file(const std::filesystem::path& path);

/// Applies the grid keys in `entries` on top of `grid` and returns the
/// entries it did not recognise. Validates the result.
std::vector<ConfigEntry> apply_grid_config(GridSpec& grid, std::span<const ConfigEntry> entries);

void write_grid_config(std::ostream& out, const GridSpec& grid);

double parse_real(const ConfigEntry& e);
long long parse_integer(const ConfigEntry& e);
bool parse_flag(const ConfigEntry& e);

}  // namespace multicopy
