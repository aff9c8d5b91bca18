#pragma once

// Flat key = value run configuration (a TOML subset: bare keys, numbers,
// booleans and double-quoted strings, '#' comments). Keys match the long CLI
// flags, so a recipe file and a command line are interchangeable.

#include "kingate/core.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace kingate {

struct RunConfig {
  // atom-cavity system
  double g = 1.0;
  double kappa = 1.0;
  double delta_h = 0.0;
  double delta_v = 0.0;

  // incident pulse
  double duration = 10.0;
  double carrier = 0.0;
  Polarization polarization = Polarization::H;
  double v_carrier_offset = 0.0;

  double phi_target = 0.7853981633974483;  // pi/4

  int grid_points_per_sigma = kDefaultPointsPerSigma;
  int grid_halfwidth_sigmas = kDefaultHalfwidthSigmas;
  bool apply_appendix_phase = false;

  // tune
  std::string condition = "sqrt-swap-nonadiabatic";
  double epsilon = 0.0;

  // figure
  std::string figure = "fig5";
  std::optional<double> sweep_start;
  std::optional<double> sweep_stop;
  int sweep_points = 0;  // 0: recipe default

  // oracle-check
  std::uint64_t seed = 1;
  int draws = 30;
  double oracle_threshold = 1e-6;

  // scattering
  double t1 = 0.1;
  double t2 = 0.1;
  std::optional<double> kl;  // unset: first resonance kl = pi
  double length = 1.0;
  double light_speed = 1.0;

  // output
  std::string out;  // empty: stdout
  bool json = false;

  /// Keys set by a config file or flag rather than left at their defaults.
  std::set<std::string> explicit_keys;

  bool is_explicit(const std::string& key) const { return explicit_keys.count(key) != 0; }
  SystemParams system() const { return {g, kappa, delta_h, delta_v}; }
  PulseSpec pulse() const { return {duration, carrier, polarization, PulseShape::Gaussian}; }
};

/// One configurable key, bound to a field of a RunConfig instance.
struct ConfigField {
  using Target = std::variant<double*, int*, bool*, std::string*, std::optional<double>*,
                              std::uint64_t*, Polarization*>;
  std::string key;
  std::string help;
  Target target;
};

std::vector<ConfigField> config_fields(RunConfig& config);

/// Sets `key` from its text form. Throws std::invalid_argument on an unknown
/// key or a malformed value. The pseudo-key "delta-a" sets both detunings;
/// "T" and "Delta" are accepted for "duration" and "carrier".
void set_config_value(RunConfig& config, const std::string& key, const std::string& value);

RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Every key, one per line, doubles with 17 significant digits.
std::string to_config_text(const RunConfig& config);

/// 17 significant digits, '.' decimal separator; reads back exactly.
std::string format_double(double value);

}  // namespace kingate
