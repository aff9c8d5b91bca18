// kingate: exact single-photon scattering off a cavity-coupled lambda atom.
//
//   kingate <command> [options]
//
// Values are resolved as built-in defaults, then --config FILE, then flags.

#include "kingate/commands.hpp"
#include "kingate/config.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

using namespace kingate;

std::string flag_name(const std::string& key) {
  if (key == "duration") return "-T,--duration";
  if (key == "carrier") return "--Delta,--carrier";
  return (key.size() == 1 ? "-" : "--") + key;
}

int write_output(const CommandResult& result, const RunConfig& config) {
  const std::string text = config.json ? to_json(result.table) : to_csv(result.table);
  if (config.out.empty()) {
    std::cout << text << std::flush;
  } else {
    std::ofstream file(config.out, std::ios::binary);
    file << text;
    if (!file) {
      std::cerr << "error: cannot write '" << config.out << "'\n";
      return kExitBadInput;
    }
  }
  if (!result.diagnostic.empty()) std::cerr << result.diagnostic << "\n";
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact outgoing spectra, gate fidelity and detuning conditions for a "
               "cavity-mediated photon-atom SWAP-family gate."};
  app.require_subcommand(1, 1);

  std::string config_path;
  app.add_option("--config", config_path, "flat key = value file; flags take precedence")
      ->check(CLI::ExistingFile);

  std::map<std::string, std::string> given;
  RunConfig defaults;
  app.add_option_function<std::string>(
      "--delta-a", [&](const std::string& v) { given["delta-a"] = v; },
      "set delta-h and delta-v together (degenerate case)");
  for (const auto& field : config_fields(defaults)) {
    const std::string key = field.key;
    if (std::holds_alternative<bool*>(field.target)) {
      app.add_flag_function(flag_name(key), [&given, key](std::int64_t) { given[key] = "true"; },
                            field.help);
    } else {
      app.add_option_function<std::string>(
          flag_name(key), [&given, key](const std::string& v) { given[key] = v; }, field.help);
    }
  }

  std::string figure_name;
  std::string condition_name;
  std::map<std::string, CLI::App*> subs;
  subs["spectra"] = app.add_subcommand("spectra", "incident and outgoing H/V spectra on a grid");
  subs["fidelity"] = app.add_subcommand("fidelity", "gate fidelity and phase for one parameter set");
  subs["figure"] = app.add_subcommand("figure", "data behind a figure recipe (fig5 .. fig9)");
  subs["figure"]->add_option("name", figure_name, "fig5, fig6, fig7, fig8 or fig9");
  subs["tune"] = app.add_subcommand("tune", "solve a detuning condition");
  subs["tune"]->add_option("condition", condition_name,
                           "sqrt-swap, sqrt-swap-nonadiabatic, swap, swap-nonadiabatic, "
                           "nondegenerate");
  subs["oracle-check"] =
      app.add_subcommand("oracle-check", "compare against the time-domain integration");
  subs["scattering"] = app.add_subcommand("scattering", "two-sided cavity scattering summary");
  for (auto& [name, sub] : subs) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (auto it = given.find("delta-a"); it != given.end())
      set_config_value(config, "delta-a", it->second);
    for (const auto& field : config_fields(defaults))
      if (auto it = given.find(field.key); it != given.end())
        set_config_value(config, field.key, it->second);
    if (!figure_name.empty()) set_config_value(config, "figure", figure_name);
    if (!condition_name.empty()) set_config_value(config, "condition", condition_name);

    std::string command;
    for (auto& [name, sub] : subs)
      if (sub->parsed()) command = name;
    return write_output(run_command(command, config), config);
  } catch (const NumericalError& e) {
    std::cerr << "numerical validation failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitValidation;
  }
}
