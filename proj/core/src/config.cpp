#include "multicopy/config.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace multicopy {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void fail(const ConfigEntry& e, const std::string& what) {
  throw ConfigError("line " + std::to_string(e.line) + ": " + e.key + ": " + what);
}

}  // namespace

std::vector<ConfigEntry> parse_config(std::istream& in) {
  std::vector<ConfigEntry> out;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto text = trim(raw);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    ConfigEntry e{trim(std::string_view(text).substr(0, eq)),
                  trim(std::string_view(text).substr(eq + 1)), line};
    if (e.key.empty()) throw ConfigError("line " + std::to_string(line) + ": empty key");
    for (const auto& prev : out)
      if (prev.key == e.key) fail(e, "duplicate key (first on line " + std::to_string(prev.line) + ")");
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ConfigEntry> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  try {
    return parse_config(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

double parse_real(const ConfigEntry& e) {
  double v = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) fail(e, "expected a real number, got '" + e.value + "'");
  return v;
}

long long parse_integer(const ConfigEntry& e) {
  long long v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) fail(e, "expected an integer, got '" + e.value + "'");
  return v;
}

bool parse_flag(const ConfigEntry& e) {
  if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no") return false;
  fail(e, "expected true or false, got '" + e.value + "'");
}

std::vector<ConfigEntry> apply_grid_config(GridSpec& grid, std::span<const ConfigEntry> entries) {
  std::vector<ConfigEntry> rest;
  bool bridges_reset = false;
  for (const auto& e : entries) {
    if (e.key.rfind("bridge.", 0) == 0) {
      if (!bridges_reset) {
        grid.bridges.clear();
        bridges_reset = true;
      }
      BridgeSpec b;
      b.name = e.key.substr(7);
      std::istringstream fields(e.value);
      if (!(fields >> b.length >> b.width >> b.success_reward))
        fail(e, "expected '<length> <width> <success_reward>'");
      std::string extra;
      if (fields >> extra) fail(e, "unexpected trailing field '" + extra + "'");
      grid.bridges.push_back(std::move(b));
    } else if (e.key == "step_cost") {
      grid.step_cost = parse_real(e);
    } else if (e.key == "fall_cost") {
      grid.fall_cost = parse_real(e);
    } else if (e.key == "noise") {
      grid.noise = parse_real(e);
    } else if (e.key == "max_actions") {
      grid.max_actions = static_cast<int>(parse_integer(e));
    } else if (e.key == "allow_duplicates") {
      grid.allow_duplicates = parse_flag(e);
    } else if (e.key == "broken_mode") {
      grid.broken_mode = parse_flag(e);
    } else if (e.key == "max_steps_per_copy") {
      grid.max_steps_per_copy = static_cast<int>(parse_integer(e));
    } else {
      rest.push_back(e);
    }
  }
  try {
    grid.validate();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(std::string("invalid grid: ") + ex.what());
  }
  return rest;
}

void write_grid_config(std::ostream& out, const GridSpec& grid) {
  const auto flags = out.flags();
  out << std::boolalpha << std::setprecision(17);
  for (const auto& b : grid.bridges)
    out << "bridge." << b.name << " = " << b.length << ' ' << b.width << ' ' << b.success_reward
        << '\n';
  out << "step_cost = " << grid.step_cost << '\n'
      << "fall_cost = " << grid.fall_cost << '\n'
      << "noise = " << grid.noise << '\n'
      << "max_actions = " << grid.max_actions << '\n'
      << "allow_duplicates = " << grid.allow_duplicates << '\n'
      << "broken_mode = " << grid.broken_mode << '\n'
      << "max_steps_per_copy = " << grid.max_steps_per_copy << '\n';
  out.flags(flags);
}

}  // namespace multicopy
