#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypnls/config.hpp"
#include "hypnls/errors.hpp"
#include "hypnls/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Radial NLS experiments on H^3 and R^3"};
  std::string experiment;
  std::string config_path;
  std::string out_dir;
  bool force = false;
  std::vector<std::string> overrides;

  app.add_option("experiment", experiment, "Experiment name")
      ->required()
      ->check(CLI::IsMember(hypnls::experiment_names()));
  app.add_option("--config", config_path, "Config file (key = value lines)")->required();
  app.add_option("--out", out_dir, "Output directory")->required();
  app.add_flag("--force", force, "Replace an existing output directory");
  app.add_option("--override", overrides, "key=value, applied after the config file")->take_all();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? hypnls::kExitOk : hypnls::kExitConfigError;
  }

  hypnls::Config user;
  try {
    user = hypnls::Config::from_file(config_path);
    for (const auto& o : overrides) user.apply_override(o);
  } catch (const hypnls::Error& e) {
    std::cerr << "hypnls: config error: " << e.what() << "\n";
    return hypnls::kExitConfigError;
  }

  std::string diagnostic;
  int code = hypnls::kExitRuntimeAbort;
  try {
    code = hypnls::run_experiment_to_directory(experiment, user, out_dir, force, &diagnostic);
  } catch (const std::exception& e) {
    diagnostic = std::string("runtime abort: ") + e.what();
  }
  (code == hypnls::kExitOk ? std::cout : std::cerr) << "hypnls " << experiment << ": " << diagnostic << "\n";
  return code;
}
