#include "kingate/commands.hpp"

#include "kingate/oracle.hpp"
#include "kingate/parallel.hpp"
#include "kingate/scattering.hpp"
#include "kingate/spectral.hpp"
#include "kingate/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace kingate {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kNormTolerance = 1e-6;

void echo_config(Table& table, const std::string& command, const RunConfig& config) {
  table.add_meta("command", command);
  std::istringstream lines(to_config_text(config));
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find(" = ");
    const std::string key = line.substr(0, eq);
    if (key == "out" || key == "json") continue;
    table.add_meta(key, line.substr(eq + 3));
  }
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw std::invalid_argument("sweep needs at least one point");
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = n == 1 ? a : a + (b - a) * double(i) / double(n - 1);
  return x;
}

struct Sweep {
  double start;
  double stop;
  int points;
};

Sweep sweep_from(const RunConfig& c, Sweep defaults) {
  return {c.sweep_start.value_or(defaults.start), c.sweep_stop.value_or(defaults.stop),
          c.sweep_points > 0 ? c.sweep_points : defaults.points};
}

double log10_or_nan(double v) { return std::isnan(v) ? kNaN : std::log10(v); }

std::string branch_suffix(int branch) { return "_branch" + std::to_string(branch); }

std::string threshold_message(double g, double kappa) {
  std::ostringstream msg;
  msg << "no real solution: 2g^2/kappa^2 = " << format_double(2.0 * g * g / (kappa * kappa))
      << " is below the good-cavity threshold 12*sqrt(3)-20 = "
      << format_double(good_cavity_threshold());
  return msg.str();
}

GateResult degenerate_fidelity(double g, double kappa, double delta_a, double duration,
                               double carrier, double phi_target, const RunConfig& c) {
  const SystemParams p = SystemParams::degenerate_params(g, kappa, delta_a);
  const PulseSpec pulse{duration, carrier, Polarization::H, PulseShape::Gaussian};
  const FrequencyGrid grid = make_grid(pulse, c.grid_points_per_sigma, c.grid_halfwidth_sigmas);
  return fidelity(p, pulse, grid, phi_target);
}

// fig5: infidelity against Delta with delta_a chosen for sqrt(SWAP) at every point.
CommandResult figure_detuning_scan(const RunConfig& c) {
  CommandResult r;
  const double g = c.is_explicit("g") ? c.g : std::sqrt(169.0 / 175.0) * c.kappa;
  const Sweep s = sweep_from(c, {0.0, 0.4 * c.kappa, 401});
  const auto x = linspace(s.start, s.stop, s.points);
  const double phi = std::numbers::pi / 4;
  const auto rows = parallel_map<GateResult>(x.size(), [&](std::size_t i) {
    return degenerate_fidelity(g, c.kappa, sqrt_swap_delta_a(g, c.kappa, x[i]), c.duration, x[i],
                               phi, c);
  });
  echo_config(r.table, "figure", c);
  r.table.add_meta("g_used", g);
  r.table.columns = {"Delta",    "delta_a",     "infidelity", "log10_infidelity",
                     "phase_error", "log10_abs_phase_error"};
  std::size_t best = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const GateResult& gr = rows[i];
    r.table.add_row({x[i], sqrt_swap_delta_a(g, c.kappa, x[i]), gr.infidelity,
                     std::log10(gr.infidelity), gr.phase_error,
                     std::log10(std::abs(gr.phase_error))});
    if (gr.infidelity < rows[best].infidelity) best = i;
  }
  const double at_zero = degenerate_fidelity(g, c.kappa, sqrt_swap_delta_a(g, c.kappa, 0.0),
                                             c.duration, 0.0, phi, c)
                             .infidelity;
  r.table.add_meta("minimum_Delta", x[best]);
  r.table.add_meta("minimum_infidelity", rows[best].infidelity);
  r.table.add_meta("infidelity_at_Delta_zero", at_zero);
  r.table.add_meta("improvement_over_Delta_zero", at_zero / rows[best].infidelity);
  return r;
}

// fig6 / fig9: infidelity against T at the tunings that cancel the 1/T^2 term.
CommandResult figure_duration_scan(const RunConfig& c, bool swap) {
  CommandResult r;
  const double g = c.is_explicit("g") ? c.g : c.kappa;
  const auto solutions =
      swap ? swap_nonadiabatic_delta(g, c.kappa) : nonadiabatic_sqrt_swap(g, c.kappa);
  if (solutions.empty()) {
    if (swap) throw std::invalid_argument("no SWAP tuning: requires 2g^2 > kappa^2");
    throw std::invalid_argument(threshold_message(g, c.kappa));
  }
  const double phi = swap ? 0.0 : std::numbers::pi / 4;
  const Sweep s = sweep_from(c, {5.0 / c.kappa, 40.0 / c.kappa, 36});
  const auto T = linspace(s.start, s.stop, s.points);
  const std::size_t nb = solutions.size();
  const auto results = parallel_map<GateResult>(T.size() * nb, [&](std::size_t k) {
    const DetuningSolution& sol = solutions[k % nb];
    return degenerate_fidelity(g, c.kappa, sol.atom_detuning, T[k / nb], sol.carrier_detuning, phi,
                               c);
  });

  echo_config(r.table, "figure", c);
  r.table.add_meta("g_used", g);
  r.table.columns = {"T"};
  for (const auto& sol : solutions) {
    const std::string b = branch_suffix(sol.branch);
    r.table.columns.insert(r.table.columns.end(),
                           {"infidelity" + b, "log10_infidelity" + b, "phase_error" + b});
  }
  for (std::size_t i = 0; i < T.size(); ++i) {
    std::vector<Cell> row{T[i]};
    for (std::size_t b = 0; b < nb; ++b) {
      const GateResult& gr = results[i * nb + b];
      row.insert(row.end(), {gr.infidelity, std::log10(gr.infidelity), gr.phase_error});
    }
    r.table.add_row(std::move(row));
  }
  for (std::size_t b = 0; b < nb; ++b) {
    std::vector<double> y(T.size());
    for (std::size_t i = 0; i < T.size(); ++i) y[i] = results[i * nb + b].infidelity;
    const std::string suffix = branch_suffix(solutions[b].branch);
    r.table.add_meta("Delta" + suffix, solutions[b].carrier_detuning);
    r.table.add_meta("delta_a" + suffix, solutions[b].atom_detuning);
    r.table.add_meta("slope" + suffix, loglog_slope(T, y));
  }
  return r;
}

// fig7 / fig8: infidelity and phase error against g on one branch, for T = 10, 5, 2.
CommandResult figure_coupling_scan(const RunConfig& c, int branch) {
  CommandResult r;
  const double g_min = std::sqrt(good_cavity_threshold() / 2.0) * c.kappa * (1.0 + 1e-4);
  const Sweep s = sweep_from(c, {g_min, 2.0 * c.kappa, 200});
  const auto g = linspace(s.start, s.stop, s.points);
  const std::vector<double> durations{10.0 / c.kappa, 5.0 / c.kappa, 2.0 / c.kappa};
  const std::size_t nt = durations.size();

  struct Point {
    double delta = kNaN;
    double delta_a = kNaN;
    double psi2 = kNaN;
    std::vector<GateResult> results;
  };
  const auto points = parallel_map<Point>(g.size(), [&](std::size_t i) {
    Point p;
    const auto solutions = nonadiabatic_sqrt_swap(g[i], c.kappa);
    const auto it = std::find_if(solutions.begin(), solutions.end(),
                                 [&](const DetuningSolution& d) { return d.branch == branch; });
    if (it == solutions.end()) return p;
    p.delta = it->carrier_detuning;
    p.delta_a = it->atom_detuning;
    p.psi2 = psi_second_derivative(SystemParams::degenerate_params(g[i], c.kappa, p.delta_a),
                                   p.delta);
    for (double T : durations)
      p.results.push_back(degenerate_fidelity(g[i], c.kappa, p.delta_a, T, p.delta,
                                              std::numbers::pi / 4, c));
    return p;
  });

  echo_config(r.table, "figure", c);
  r.table.add_meta("branch", std::to_string(branch));
  r.table.columns = {"g", "Delta", "delta_a", "psi_second_derivative"};
  for (double T : durations) {
    const std::string t = "_T" + format_double(T);
    r.table.columns.insert(r.table.columns.end(),
                           {"log10_infidelity" + t, "log10_abs_phase_error" + t});
  }
  std::vector<double> best_phase(nt, std::numeric_limits<double>::infinity());
  std::vector<double> best_g(nt, kNaN);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point& p = points[i];
    std::vector<Cell> row{g[i], p.delta, p.delta_a, p.psi2};
    for (std::size_t k = 0; k < nt; ++k) {
      const double inf = p.results.empty() ? kNaN : p.results[k].infidelity;
      const double pe = p.results.empty() ? kNaN : std::abs(p.results[k].phase_error);
      row.insert(row.end(), {log10_or_nan(inf), log10_or_nan(pe)});
      if (pe < best_phase[k]) {
        best_phase[k] = pe;
        best_g[k] = g[i];
      }
    }
    r.table.add_row(std::move(row));
  }
  for (std::size_t k = 0; k < nt; ++k)
    r.table.add_meta("g_min_phase_error_T" + format_double(durations[k]), best_g[k]);
  return r;
}

SystemParams params_of(const DetuningSolution& s, double g, double kappa) {
  if (s.condition == Condition::NondegenerateSqrtSwap)
    return {g, kappa, s.atom_detuning, s.atom_detuning - s.epsilon};
  return SystemParams::degenerate_params(g, kappa, s.atom_detuning);
}

}  // namespace

FrequencyGrid spectra_grid(const SystemParams& params, const PulseSpec& pulse,
                           int points_per_sigma, int halfwidth_sigmas) {
  const double shift =
      pulse.polarization == Polarization::H ? params.epsilon() : -params.epsilon();
  return make_grid_covering(pulse, shift, points_per_sigma, halfwidth_sigmas);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("loglog_slope: need at least two matching points");
  const auto n = Eigen::Index(x.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = std::log10(x[i]);
    a(i, 1) = 1.0;
    b(i) = std::log10(y[i]);
  }
  return a.colPivHouseholderQr().solve(b)(0);
}

CommandResult cmd_spectra(const RunConfig& c) {
  const SystemParams params = c.system();
  const PulseSpec pulse = c.pulse();
  params.validate();
  pulse.validate();
  const FrequencyGrid grid =
      spectra_grid(params, pulse, c.grid_points_per_sigma, c.grid_halfwidth_sigmas);
  SpectralState out = outgoing_spectra_nondegenerate(params, pulse, grid);
  if (c.apply_appendix_phase) out = apply_appendix_phase(out, params.kappa);
  const Eigen::VectorXcd in = sample_spectrum(pulse, grid);

  CommandResult r;
  echo_config(r.table, "spectra", c);
  r.table.columns = {"omega",     "re_ch_in",  "im_ch_in",  "re_ch_out",
                     "im_ch_out", "re_cv_out", "im_cv_out"};
  for (Eigen::Index j = 0; j < grid.size(); ++j)
    r.table.add_row({grid.points(j), in(j).real(), in(j).imag(), out.c_h(j).real(),
                     out.c_h(j).imag(), out.c_v(j).real(), out.c_v(j).imag()});
  const double norm_in = grid.integrate(Eigen::VectorXd(in.array().abs2()));
  const double norm_out = out.norm();
  r.table.add_meta("grid_points", std::to_string(grid.size()));
  r.table.add_meta("norm_in", norm_in);
  r.table.add_meta("norm_out", norm_out);
  if (!(std::abs(norm_out - norm_in) < kNormTolerance)) {
    r.exit_code = kExitValidation;
    r.diagnostic = "spectra: outgoing norm " + format_double(norm_out) +
                   " differs from incoming norm " + format_double(norm_in);
  }
  return r;
}

CommandResult cmd_fidelity(const RunConfig& c) {
  const SystemParams params = c.system();
  const PulseSpec pulse = c.pulse();
  params.validate();
  pulse.validate();
  CommandResult r;
  echo_config(r.table, "fidelity", c);
  if (params.degenerate() && c.v_carrier_offset == 0.0) {
    const FrequencyGrid grid = make_grid(pulse, c.grid_points_per_sigma, c.grid_halfwidth_sigmas);
    const GateResult g = fidelity(params, pulse, grid, c.phi_target);
    r.table.columns = {"fidelity",   "infidelity",          "phase",
                       "phase_error", "psi_at_carrier",     "infidelity_coefficient",
                       "phase_coefficient"};
    r.table.add_row({g.fidelity, g.infidelity, g.phase, g.phase_error,
                     psi_phase(params, pulse.carrier_detuning),
                     infidelity_quadratic_term(params, pulse.carrier_detuning),
                     phase_quadratic_term(params, pulse.carrier_detuning)});
    return r;
  }
  // The H and V inputs and their outputs occupy the bands at offsets 0,
  // epsilon, the V offset, and the V offset minus epsilon.
  const double eps = params.epsilon();
  const double off = c.v_carrier_offset;
  const double lo = std::min({0.0, eps, off, off - eps});
  const double hi = std::max({0.0, eps, off, off - eps});
  PulseSpec anchor = pulse;
  anchor.carrier_detuning += lo;
  const FrequencyGrid grid =
      make_grid_covering(anchor, hi - lo, c.grid_points_per_sigma, c.grid_halfwidth_sigmas);
  const SpectralState target = ideal_gate_output(plus_input_state(pulse, grid, off), c.phi_target);
  const GateResult g = fidelity_nondegenerate(params, pulse, grid, target, c.phi_target, off);
  const AdiabaticCoeffs a = adiabatic_coeffs(params, pulse.carrier_detuning);
  r.table.columns = {"fidelity", "infidelity", "phase",   "phase_error",
                     "re_alpha", "im_alpha",   "re_beta", "im_beta"};
  r.table.add_row({g.fidelity, g.infidelity, g.phase, g.phase_error, a.alpha.real(),
                   a.alpha.imag(), a.beta.real(), a.beta.imag()});
  return r;
}

CommandResult cmd_figure(const RunConfig& c) {
  if (c.figure == "fig5") return figure_detuning_scan(c);
  if (c.figure == "fig6") return figure_duration_scan(c, false);
  if (c.figure == "fig9") return figure_duration_scan(c, true);
  if (c.figure == "fig7") return figure_coupling_scan(c, 1);
  if (c.figure == "fig8") return figure_coupling_scan(c, 2);
  throw std::invalid_argument("unknown figure '" + c.figure + "' (expected fig5 .. fig9)");
}

CommandResult cmd_tune(const RunConfig& c) {
  if (!(c.g > 0.0) || !(c.kappa > 0.0))
    throw std::invalid_argument("tune: g and kappa must be positive");
  std::vector<DetuningSolution> solutions;
  std::string note;
  if (c.condition == "sqrt-swap") {
    solutions.push_back(sqrt_swap_adiabatic(c.g, c.kappa, c.carrier));
  } else if (c.condition == "swap") {
    solutions.push_back(swap_adiabatic(c.g, c.kappa, c.carrier));
  } else if (c.condition == "sqrt-swap-nonadiabatic") {
    solutions = nonadiabatic_sqrt_swap(c.g, c.kappa);
    if (solutions.empty()) note = threshold_message(c.g, c.kappa);
  } else if (c.condition == "swap-nonadiabatic") {
    solutions = swap_nonadiabatic_delta(c.g, c.kappa);
    if (solutions.empty())
      note = "no real solution: 2g^2/kappa^2 = " +
             format_double(2.0 * c.g * c.g / (c.kappa * c.kappa)) + " must exceed 1";
  } else if (c.condition == "nondegenerate") {
    solutions.push_back(nondegenerate_sqrt_swap(c.g, c.kappa, c.epsilon).solution());
  } else {
    throw std::invalid_argument("unknown tuning condition '" + c.condition + "'");
  }

  CommandResult r;
  echo_config(r.table, "tune", c);
  if (c.condition == "sqrt-swap-nonadiabatic")
    r.table.add_meta("threshold_2g2_over_kappa2", good_cavity_threshold());
  r.table.add_meta("solutions", std::to_string(solutions.size()));
  if (!note.empty()) {
    r.table.add_meta("message", note);
    r.diagnostic = note;
  }
  r.table.columns = {"condition", "branch", "Delta", "delta_h", "delta_v", "theta", "residual"};
  for (const auto& s : solutions) {
    const SystemParams p = params_of(s, c.g, c.kappa);
    const double theta =
        s.condition == Condition::NondegenerateSqrtSwap ? std::atan(s.epsilon / c.kappa) : 0.0;
    r.table.add_row({to_string(s.condition), static_cast<long long>(s.branch), s.carrier_detuning,
                     p.delta_h, p.delta_v, theta, residual(s, c.g, c.kappa)});
  }
  return r;
}

std::vector<OracleDraw> oracle_suite_parameters(std::uint64_t seed, int draws, double kappa) {
  if (draws < 1) throw std::invalid_argument("oracle-check: draws must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double a, double b) { return a + (b - a) * unit(rng); };
  std::vector<OracleDraw> out(draws);
  for (auto& d : out) {
    const double g = uniform(0.5, 3.0) * kappa;
    const double carrier = uniform(-2.0, 2.0) * kappa;
    const double delta_a = uniform(-4.0, 4.0) * kappa;
    const double duration = uniform(2.0, 20.0) / kappa;
    const double eps = uniform(-1.0, 1.0) * kappa;
    const Polarization pol = unit(rng) < 0.5 ? Polarization::H : Polarization::V;
    d.params = {g, kappa, delta_a, delta_a - eps};
    d.pulse = {duration, carrier, pol, PulseShape::Gaussian};
  }
  return out;
}

OracleSuiteReport run_oracle_suite(std::uint64_t seed, int draws, const SpectraFunction& analytic,
                                   double kappa) {
  OracleSuiteReport report;
  report.draws = oracle_suite_parameters(seed, draws, kappa);
  const auto l2 = parallel_map<double>(report.draws.size(), [&](std::size_t i) {
    const OracleDraw& d = report.draws[i];
    const FrequencyGrid grid = spectra_grid(d.params, d.pulse);
    return l2_distance(analytic(d.params, d.pulse, grid), oracle_spectra(d.params, d.pulse, grid));
  });
  for (std::size_t i = 0; i < l2.size(); ++i) {
    report.draws[i].l2 = l2[i];
    if (!(l2[i] <= report.max_l2)) {
      report.max_l2 = l2[i];
      report.worst = i;
    }
  }
  return report;
}

CommandResult cmd_oracle_check(const RunConfig& c) {
  const OracleSuiteReport report = run_oracle_suite(
      c.seed, c.draws,
      [](const SystemParams& p, const PulseSpec& pulse, const FrequencyGrid& grid) {
        return outgoing_spectra_nondegenerate(p, pulse, grid);
      },
      c.kappa);
  CommandResult r;
  echo_config(r.table, "oracle-check", c);
  r.table.columns = {"draw", "g", "kappa", "delta_h", "delta_v", "T", "Delta", "polarization", "l2"};
  for (std::size_t i = 0; i < report.draws.size(); ++i) {
    const OracleDraw& d = report.draws[i];
    r.table.add_row({static_cast<long long>(i), d.params.g, d.params.kappa, d.params.delta_h,
                     d.params.delta_v, d.pulse.duration, d.pulse.carrier_detuning,
                     to_string(d.pulse.polarization), d.l2});
  }
  const bool ok = report.passed(c.oracle_threshold);
  r.table.add_meta("max_l2", report.max_l2);
  r.table.add_meta("worst_draw", std::to_string(report.worst));
  r.table.add_meta("status", ok ? "pass" : "fail");
  if (!ok) {
    const OracleDraw& w = report.draws[report.worst];
    r.exit_code = kExitValidation;
    r.diagnostic = "oracle-check failed: max L2 " + format_double(report.max_l2) +
                   " >= " + format_double(c.oracle_threshold) + " at draw " +
                   std::to_string(report.worst) + " (g=" + format_double(w.params.g) +
                   ", delta_h=" + format_double(w.params.delta_h) +
                   ", delta_v=" + format_double(w.params.delta_v) +
                   ", T=" + format_double(w.pulse.duration) +
                   ", Delta=" + format_double(w.pulse.carrier_detuning) +
                   ", polarization=" + to_string(w.pulse.polarization) + ")";
  }
  return r;
}

CommandResult cmd_scattering(const RunConfig& c) {
  const MirrorPair m{c.t1, c.t2, c.length, c.light_speed};
  m.validate();
  double k = 0.0;
  if (c.kl) {
    if (!(*c.kl > 0.0)) throw std::invalid_argument("scattering: kl must be positive");
    k = *c.kl / m.l;
  } else {
    k = nearest_resonant_k(m, std::numeric_limits<double>::min());
  }
  const ScatteringAmplitudes left = scattering_amplitudes(m, k);
  const ScatteringAmplitudes right = scattering_amplitudes_right(m, k);
  const ModeSplit split = mode_split(m);
  const NearResonanceAmplitudes near = near_resonance_amplitudes(split);
  const NetworkOutput net = beamsplitter_network_output(split, 1.0);
  const NetworkOutput exact_net =
      beamsplitter_network_output(split, left.a, left.d, right.a, right.d, 1.0);

  CommandResult r;
  echo_config(r.table, "scattering", c);
  r.table.add_meta("kl_used", k * m.l);
  r.table.add_meta("geometry", m.t1 == 0.0 || m.t2 == 0.0 ? "one-sided" : "two-sided");
  r.table.columns = {"quantity", "re", "im"};
  auto add = [&](const std::string& name, Complex v) {
    r.table.add_row({name, v.real(), v.imag()});
  };
  add("A", left.a);
  add("B", left.b);
  add("C", left.c_amp);
  add("D", left.d);
  add("A_right", right.a);
  add("D_right", right.d);
  add("kappa", total_loss_rate(m));
  add("tau1", split.tau1);
  add("tau2", split.tau2);
  add("failure_probability", uncoupled_failure_probability(split));
  add("A_near_resonance", near.a);
  add("D_near_resonance", near.d);
  add("A_exact_minus_near", left.a - near.a);
  add("D_exact_minus_near", left.d - near.d);
  add("network_back", net.back_along_input);
  add("network_upward", net.upward);
  add("network_back_exact", exact_net.back_along_input);
  add("network_upward_exact", exact_net.upward);
  return r;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"spectra", "fidelity",     "figure",
                                              "tune",    "oracle-check", "scattering"};
  return names;
}

CommandResult run_command(const std::string& name, const RunConfig& config) {
  if (name == "spectra") return cmd_spectra(config);
  if (name == "fidelity") return cmd_fidelity(config);
  if (name == "figure") return cmd_figure(config);
  if (name == "tune") return cmd_tune(config);
  if (name == "oracle-check") return cmd_oracle_check(config);
  if (name == "scattering") return cmd_scattering(config);
  throw std::invalid_argument("unknown command '" + name + "'");
}

}  // namespace kingate
