#include "kingate/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace kingate {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    std::string out;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
      if (s[i] == '\\' && i + 2 < s.size()) ++i;
      out.push_back(s[i]);
    }
    return out;
  }
  return s;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw std::invalid_argument("invalid value '" + value + "' for key '" + key + "'");
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string s = unquote(trim(text));
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) bad_value(key, text);
  return v;
}

template <typename Int>
Int parse_integer(const std::string& key, const std::string& text) {
  const std::string s = unquote(trim(text));
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) bad_value(key, text);
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string s = unquote(trim(text));
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  bad_value(key, text);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::vector<ConfigField> config_fields(RunConfig& c) {
  return {
      {"g", "atom-cavity coupling (units of kappa)", &c.g},
      {"kappa", "cavity loss rate", &c.kappa},
      {"delta-h", "atom-cavity detuning of the H transition", &c.delta_h},
      {"delta-v", "atom-cavity detuning of the V transition", &c.delta_v},
      {"duration", "pulse duration T (units of 1/kappa)", &c.duration},
      {"carrier", "pulse carrier Delta minus cavity resonance", &c.carrier},
      {"polarization", "incident polarization, H or V", &c.polarization},
      {"v-carrier-offset", "V pulse carrier relative to Delta in fidelity runs", &c.v_carrier_offset},
      {"phi-target", "target gate phase (pi/4 for sqrt(SWAP), 0 for SWAP)", &c.phi_target},
      {"grid-points-per-sigma", "frequency samples per spectral width 1/T", &c.grid_points_per_sigma},
      {"grid-halfwidth-sigmas", "grid half-width in units of 1/T", &c.grid_halfwidth_sigmas},
      {"apply-appendix-phase", "multiply outgoing spectra by the cavity phase factor",
       &c.apply_appendix_phase},
      {"condition", "tuning condition", &c.condition},
      {"epsilon", "ground-state splitting for the nondegenerate tuning", &c.epsilon},
      {"figure", "figure recipe: fig5 .. fig9", &c.figure},
      {"sweep-start", "first sweep value (recipe default if unset)", &c.sweep_start},
      {"sweep-stop", "last sweep value (recipe default if unset)", &c.sweep_stop},
      {"sweep-points", "number of sweep points (0: recipe default)", &c.sweep_points},
      {"seed", "random seed for oracle-check", &c.seed},
      {"draws", "number of random parameter draws for oracle-check", &c.draws},
      {"oracle-threshold", "maximum allowed L2 discrepancy", &c.oracle_threshold},
      {"t1", "amplitude transmission of mirror 1", &c.t1},
      {"t2", "amplitude transmission of mirror 2", &c.t2},
      {"kl", "round-trip phase k*l (first resonance if unset)", &c.kl},
      {"length", "cavity length", &c.length},
      {"light-speed", "speed of light in the same units", &c.light_speed},
      {"out", "output path (stdout if empty)", &c.out},
      {"json", "write JSON instead of CSV", &c.json},
  };
}

void set_config_value(RunConfig& config, const std::string& name, const std::string& value) {
  const std::string key = name == "T" ? "duration" : name == "Delta" ? "carrier" : name;
  if (key == "delta-a") {
    const double d = parse_double(key, value);
    config.delta_h = config.delta_v = d;
    config.explicit_keys.insert({"delta-h", "delta-v"});
    return;
  }
  for (auto& field : config_fields(config)) {
    if (field.key != key) continue;
    std::visit(overloaded{
                   [&](double* p) { *p = parse_double(key, value); },
                   [&](int* p) { *p = parse_integer<int>(key, value); },
                   [&](bool* p) { *p = parse_bool(key, value); },
                   [&](std::string* p) { *p = unquote(trim(value)); },
                   [&](std::optional<double>* p) { *p = parse_double(key, value); },
                   [&](std::uint64_t* p) { *p = parse_integer<std::uint64_t>(key, value); },
                   [&](Polarization* p) { *p = polarization_from_string(unquote(trim(value))); },
               },
               field.target);
    config.explicit_keys.insert(key);
    return;
  }
  throw std::invalid_argument("unknown configuration key '" + key + "'");
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = line;
    // Strip comments outside quotes.
    bool quoted = false;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '"' && (i == 0 || body[i - 1] != '\\')) quoted = !quoted;
      if (body[i] == '#' && !quoted) {
        body.resize(i);
        break;
      }
    }
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    set_config_value(base, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string to_config_text(const RunConfig& config) {
  RunConfig copy = config;
  std::ostringstream out;
  for (auto& field : config_fields(copy)) {
    std::string value;
    bool skip = false;
    std::visit(overloaded{
                   [&](double* p) { value = format_double(*p); },
                   [&](int* p) { value = std::to_string(*p); },
                   [&](bool* p) { value = *p ? "true" : "false"; },
                   [&](std::string* p) { value = quote(*p); },
                   [&](std::optional<double>* p) {
                     if (*p)
                       value = format_double(**p);
                     else
                       skip = true;
                   },
                   [&](std::uint64_t* p) { value = std::to_string(*p); },
                   [&](Polarization* p) { value = quote(to_string(*p)); },
               },
               field.target);
    if (!skip) out << field.key << " = " << value << "\n";
  }
  return out.str();
}

}  // namespace kingate
