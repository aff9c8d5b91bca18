#pragma once

// Command implementations behind the CLI. Each returns a table plus an exit
// status; bad input is reported by throwing std::invalid_argument and failed
// numerical validation by NumericalError or a nonzero exit_code.

#include "kingate/config.hpp"
#include "kingate/core.hpp"
#include "kingate/table.hpp"

#include <functional>
#include <string>
#include <vector>

namespace kingate {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 1;
inline constexpr int kExitValidation = 2;

struct CommandResult {
  Table table;
  int exit_code = kExitOk;
  std::string diagnostic;  // printed to stderr when non-empty
};

CommandResult cmd_spectra(const RunConfig& config);
CommandResult cmd_fidelity(const RunConfig& config);
CommandResult cmd_figure(const RunConfig& config);
CommandResult cmd_tune(const RunConfig& config);
CommandResult cmd_oracle_check(const RunConfig& config);
CommandResult cmd_scattering(const RunConfig& config);

/// Dispatches on the subcommand name. Throws std::invalid_argument for an unknown one.
CommandResult run_command(const std::string& name, const RunConfig& config);

const std::vector<std::string>& command_names();

// Randomized comparison of the frequency-domain spectra against the
// time-domain oracle. The analytic routine is a parameter so tests can
// substitute a deliberately broken one.

using SpectraFunction =
    std::function<SpectralState(const SystemParams&, const PulseSpec&, const FrequencyGrid&)>;

struct OracleDraw {
  SystemParams params;
  PulseSpec pulse;
  double l2 = 0.0;
};

struct OracleSuiteReport {
  std::vector<OracleDraw> draws;
  double max_l2 = 0.0;
  std::size_t worst = 0;
  bool passed(double threshold) const { return max_l2 < threshold; }
};

/// Draws g in [0.5, 3], |Delta| <= 2, |delta_a| <= 4, T in [2, 20], |epsilon| <= 1
/// (all in units of kappa) and either polarization.
std::vector<OracleDraw> oracle_suite_parameters(std::uint64_t seed, int draws, double kappa = 1.0);

OracleSuiteReport run_oracle_suite(std::uint64_t seed, int draws, const SpectraFunction& analytic,
                                   double kappa = 1.0);

/// Grid with the default spacing covering the incident band and the band
/// shifted by epsilon into the other polarization.
FrequencyGrid spectra_grid(const SystemParams& params, const PulseSpec& pulse,
                           int points_per_sigma = kDefaultPointsPerSigma,
                           int halfwidth_sigmas = kDefaultHalfwidthSigmas);

/// Least-squares slope of log10(y) against log10(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace kingate
