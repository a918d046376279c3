#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypnls/config.hpp"
#include "hypnls/data.hpp"
#include "hypnls/diagnostics.hpp"
#include "hypnls/field.hpp"
#include "hypnls/nls.hpp"

namespace hypnls {

// ---------------------------------------------------------------------------------------------
// Studies shared by the command line runner, the acceptance suite and the Python module.

struct SemiclassicalParams {
  int sigma = 1;
  double s = 0.3;
  double kappa = 1.0;
  double c0 = 0.1;
  int k = 2;
  int intervals = 2048;
  double radius_factor = 4.0;  // R = radius_factor * lambda
  int steps = 400;
  int snapshots = 20;
};

struct SemiclassicalRun {
  double eps = 0.0;
  double lambda = 0.0;
  double theta = 0.0;
  double delta = 0.0;
  double t_rescaled = 0.0;
  double t_original = 0.0;
  std::vector<double> times_rescaled;
  std::vector<double> errors;          // ||psi - phi||_{H^k} at each snapshot
  double approximation_error = 0.0;    // sup of errors
  double data_separation = 0.0;        // ||u01 - u02||_{H^s}
  double solution_separation = 0.0;    // ||u1(t) - u2(t)||_{H^s} at the end of the window
  double phase_modulus_drift = 0.0;    // max | |phi(t)| - |phi(0)| |
};

/// Critical Sobolev index 3/2 - 1/sigma.
double semiclassical_critical_index(int sigma);
SemiclassicalRun semiclassical_experiment(double eps, const SemiclassicalParams& params);

struct LongrangeParams {
  double radius = 2000.0;
  int intervals = 16384;
  double dt = 0.01;
  GaussianBump datum{0.0, 1.0, 1.0, 0.0};
  GaussianBump probe{0.0, 1.0, 1.0, 0.0};
  std::vector<double> probes{5.0, 10.0, 20.0, 40.0};
  std::vector<double> pairing_times;  // empty: 10 * 2^{k/3} up to 100
};

struct LongrangeGeometryReport {
  Geometry geometry = Geometry::Hyperbolic3;
  std::vector<double> defects;  // D(probes[i], probes[i+1])
  double defect_ratio = 0.0;    // first / last
  std::vector<double> pairing_times;
  std::vector<double> pairing_abs;
  std::optional<PowerLawFit> pairing_fit;
  TerminationStatus status = TerminationStatus::Completed;
  std::string message;
};

struct LongrangeReport {
  double sigma = 0.0;
  LongrangeGeometryReport hyperbolic;
  LongrangeGeometryReport euclidean;
};

std::vector<double> default_pairing_times(double dt);
LongrangeReport longrange_experiment(double sigma, const LongrangeParams& params);

struct PseudoConformalSample {
  double dt = 0.0;
  double t = 0.0;
  double Q = 0.0;
  double dQdt = 0.0;
  double RHS = 0.0;
  double rel_error = 0.0;
};

struct PseudoConformalStudy {
  std::vector<double> dts;
  std::vector<PseudoConformalSample> samples;
  std::vector<double> max_errors;    // per dt
  std::vector<double> error_ratios;  // max_errors[i] / max_errors[i+1]
  bool rhs_negative = true;          // RHS < 0 at every sampled t > 0
  TerminationStatus status = TerminationStatus::Completed;
  std::string message;
};

/// Centered differences (Q(t+dt) - Q(t-dt)) / 2dt against RHS(t) along runs with each dt.
PseudoConformalStudy pseudo_conformal_study(const RadialField& u0, double sigma, double kappa,
                                            const std::vector<double>& dts, const std::vector<double>& sample_times);

// ---------------------------------------------------------------------------------------------
// Command line runner

struct Check {
  std::string name;
  double value = 0.0;
  std::string requirement;
  bool passed = false;
};

struct SeriesTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;

  void add_row(std::vector<std::optional<double>> row);
  std::string to_csv() const;
};

struct ExperimentResult {
  SeriesTable series;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<Check> checks;
  bool aborted = false;
  std::string abort_message;

  bool checks_passed() const;
};

enum ExitCode { kExitOk = 0, kExitCheckFailed = 1, kExitConfigError = 2, kExitRuntimeAbort = 3 };

const std::vector<std::string>& experiment_names();
std::vector<KeyEntry> experiment_schema(const std::string& experiment);

/// Validates the full configuration and builds every object before any computation; throws ConfigError.
class PreparedExperiment {
 public:
  PreparedExperiment(const std::string& experiment, const Config& user);
  const std::string& name() const noexcept { return name_; }
  const ResolvedConfig& config() const noexcept { return config_; }
  ExperimentResult run() const;

 private:
  std::string name_;
  ResolvedConfig config_;
};

/// Writes series.csv, summary.json and resolved.cfg into out_dir. Returns the process exit code.
int run_experiment_to_directory(const std::string& experiment, const Config& user, const std::string& out_dir,
                                bool force, std::string* diagnostic = nullptr);

}  // namespace hypnls
