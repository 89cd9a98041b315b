#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "lpmhd/error.hpp"
#include "lpmhd/io_config.hpp"

namespace lpmhd {

const std::vector<std::string> kConfigKeys = {
    "dim",        "N",          "L",         "p",
    "dt",         "T_max",      "cadence",   "eta",
    "C0",         "max_iterations", "tolerance", "seed",
    "estimate_constant", "horizon", "output_dir", "amplitude",
    "perturbation", "samples",  "s1",        "s2",
    "r"};

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_real(const std::string& key, const std::string& value) {
  if (key == "L" && (value == "2pi" || value == "2*pi")) return 2.0 * std::numbers::pi;
  double out = 0.0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty()) {
    throw FormatError("config: " + key + " expects a number, got '" + value + "'");
  }
  return out;
}

template <typename Int>
Int parse_integer(const std::string& key, const std::string& value) {
  Int out = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty()) {
    throw FormatError("config: " + key + " expects an integer, got '" + value + "'");
  }
  return out;
}

bool writable_target(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::path probe = std::filesystem::absolute(dir, ec);
  if (ec) return false;
  // Walk up to the nearest existing ancestor; it must be a writable directory.
  while (!std::filesystem::exists(probe, ec)) {
    if (!probe.has_parent_path() || probe.parent_path() == probe) return false;
    probe = probe.parent_path();
  }
  return std::filesystem::is_directory(probe, ec) && ::access(probe.c_str(), W_OK | X_OK) == 0;
}

}  // namespace

void set_config_value(RunConfig& config, const std::string& key, const std::string& raw) {
  std::string value = trim(raw);
  IterationConfig& it = config.iteration;
  if (key == "dim") it.dim = parse_integer<int>(key, value);
  else if (key == "N") it.points_per_axis = parse_integer<int>(key, value);
  else if (key == "L") it.box_length = parse_real(key, value);
  else if (key == "p") it.p = parse_real(key, value);
  else if (key == "dt") it.dt = parse_real(key, value);
  else if (key == "T_max") it.T_max = parse_real(key, value);
  else if (key == "cadence") it.cadence = parse_integer<int>(key, value);
  else if (key == "eta") it.eta = parse_real(key, value);
  else if (key == "C0") it.C0 = parse_real(key, value);
  else if (key == "max_iterations") it.max_iterations = parse_integer<int>(key, value);
  else if (key == "tolerance") it.tolerance = parse_real(key, value);
  else if (key == "seed") it.seed = parse_integer<std::uint64_t>(key, value);
  else if (key == "estimate_constant") it.estimate_constant = parse_real(key, value);
  else if (key == "horizon") {
    if (value == "auto") it.horizon.reset();
    else it.horizon = parse_real(key, value);
  } else if (key == "output_dir") {
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (value.empty()) throw FormatError("config: output_dir must not be empty");
    config.output_dir = value;
  } else if (key == "amplitude") config.amplitude = parse_real(key, value);
  else if (key == "perturbation") config.perturbation = parse_real(key, value);
  else if (key == "samples") config.samples = parse_integer<int>(key, value);
  else if (key == "s1") config.s1 = parse_real(key, value);
  else if (key == "s2") config.s2 = parse_real(key, value);
  else if (key == "r") config.r = parse_real(key, value);
  else throw FormatError("config: unknown key '" + key + "'");
}

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string where = "config line " + std::to_string(number) + ": ";
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw FormatError(where + "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw FormatError(where + "missing key");
    if (value.empty()) throw FormatError(where + "missing value for '" + key + "'");
    if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end()) {
      throw FormatError(where + "unknown key '" + key + "'");
    }
    if (!seen.insert(key).second) throw FormatError(where + "duplicate key '" + key + "'");
    try {
      set_config_value(config, key, value);
    } catch (const FormatError& e) {
      throw FormatError(where + e.what());
    }
  }
  return config;
}

void RunConfig::validate() const {
  iteration.validate();
  auto fail = [](const std::string& field, const std::string& bound) {
    throw InvalidArgument("config: " + field + " " + bound);
  };
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) fail("amplitude", "must be finite and >= 0");
  if (!(perturbation >= 0.0) || !std::isfinite(perturbation)) {
    fail("perturbation", "must be finite and >= 0");
  }
  if (samples < 1) fail("samples", "must be >= 1");
  if (!std::isfinite(s1) || !std::isfinite(s2)) fail("s1/s2", "must be finite");
  if (!(r >= 1.0)) fail("r", "must be >= 1 (or inf)");
  if (!writable_target(output_dir)) {
    fail("output_dir", "'" + output_dir.string() + "' is not writable");
  }
}

RunConfig load_config(const std::string& text) {
  RunConfig config = parse_config(text);
  config.validate();
  return config;
}

RunConfig load_config_file(const std::filesystem::path& path) {
  return load_config(read_text_file(path));
}

std::string to_config_text(const RunConfig& c) {
  const IterationConfig& it = c.iteration;
  std::ostringstream out;
  out << "dim = " << it.dim << "\n"
      << "N = " << it.points_per_axis << "\n"
      << "L = " << format_double(it.box_length) << "\n"
      << "p = " << format_double(it.p) << "\n"
      << "dt = " << format_double(it.dt) << "\n"
      << "T_max = " << format_double(it.T_max) << "\n"
      << "cadence = " << it.cadence << "\n"
      << "eta = " << format_double(it.eta) << "\n"
      << "C0 = " << format_double(it.C0) << "\n"
      << "max_iterations = " << it.max_iterations << "\n"
      << "tolerance = " << format_double(it.tolerance) << "\n"
      << "seed = " << it.seed << "\n"
      << "estimate_constant = " << format_double(it.estimate_constant) << "\n"
      << "horizon = " << (it.horizon ? format_double(*it.horizon) : std::string("auto")) << "\n"
      << "output_dir = \"" << c.output_dir.string() << "\"\n"
      << "amplitude = " << format_double(c.amplitude) << "\n"
      << "perturbation = " << format_double(c.perturbation) << "\n"
      << "samples = " << c.samples << "\n"
      << "s1 = " << format_double(c.s1) << "\n"
      << "s2 = " << format_double(c.s2) << "\n"
      << "r = " << format_double(c.r) << "\n";
  return out.str();
}

}  // namespace lpmhd
