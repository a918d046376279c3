#pragma once

#include <string>
#include <vector>

#include "hypnls/field.hpp"

namespace hypnls {

struct SolverConfig {
  double sigma = 1.0;
  double kappa = 1.0;  // +1 defocusing, -1 focusing, 0 linear
  double dt = 1e-3;
  double t_begin = 0.0;
  double t_end = 1.0;
  std::vector<double> snapshot_times;
  /// Permit sigma >= 2 on H^3.
  bool allow_supercritical = false;
  /// Run the linear substep in long double. About 5x slower; keeps the mass to ~1e-15 over 1e5 steps
  /// where the double transform drifts by ~1e-16 per step.
  bool extended_precision = false;

  /// Throws DomainError on inconsistent settings; snapshots must land on step boundaries.
  void validate(Geometry geometry) const;
  /// Number of steps from t_begin to t.
  long steps_to(double t) const;
};

/// Snapshot times t_begin, t_begin + every, ..., t_end (every must be a multiple of dt).
std::vector<double> uniform_snapshots(double t_begin, double t_end, double every);

struct EnergyParts {
  double kinetic = 0.0;
  double potential = 0.0;
  double total() const { return kinetic + potential; }
};

struct SnapshotRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double tail_mass = 0.0;
};

enum class TerminationStatus { Completed, BoundaryReflection, NonFinite, BlowUp };

std::string_view to_string(TerminationStatus status);

class Trajectory {
 public:
  Trajectory(SolverConfig config, Geometry geometry) : config_(std::move(config)), geometry_(geometry) {}

  const SolverConfig& config() const noexcept { return config_; }
  Geometry geometry() const noexcept { return geometry_; }
  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }

  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<RadialField>& fields() const noexcept { return fields_; }
  const std::vector<SnapshotRecord>& records() const noexcept { return records_; }

  /// Index of the snapshot at time t (within 1e-9 relative to dt); throws LookupError.
  std::size_t index_of(double t) const;
  const RadialField& at(double t) const { return fields_[index_of(t)]; }

  TerminationStatus status() const noexcept { return status_; }
  bool completed() const noexcept { return status_ == TerminationStatus::Completed; }
  /// Last time the field was known to be valid (the final step boundary before an abort).
  double last_valid_time() const noexcept { return last_valid_time_; }
  const std::string& message() const noexcept { return message_; }

  void append(double t, RadialField field, SnapshotRecord record);
  void abort(TerminationStatus status, double last_valid_time, std::string message);

 private:
  SolverConfig config_;
  Geometry geometry_;
  std::vector<double> times_;
  std::vector<RadialField> fields_;
  std::vector<SnapshotRecord> records_;
  TerminationStatus status_ = TerminationStatus::Completed;
  double last_valid_time_ = 0.0;
  std::string message_;
};

inline constexpr double kTailMassThreshold = 1e-10;
/// Focusing runs abort once max |u| exceeds this multiple of max(1, max |u0|).
inline constexpr double kBlowUpAmplitude = 1e6;

/// u -> u exp(-i kappa dt |u|^{2 sigma}).
RadialField nonlinear_step(const RadialField& f, double dt, double sigma, double kappa);
/// Half nonlinear rotation, exact free flow over dt, half nonlinear rotation.
RadialField strang_step(const RadialField& f, const SolverConfig& config);
Trajectory evolve(const RadialField& u0, const SolverConfig& config);

/// 4 pi h sum |u_j|^2 m_j^2.
double mass(const RadialField& f);
/// Kinetic 4 pi h sum mu_k |v_hat_k|^2; potential kappa 4 pi h / (sigma+1) sum |u_j|^{2 sigma + 2} m_j^2.
EnergyParts energy(const RadialField& f, double sigma, double kappa = 1.0);
/// Mass in the outer window of width min(5, R/4).
double tail_mass(const RadialField& f);
double tail_window(const RadialGrid& grid);
/// max_j |u_j|.
double max_amplitude(const RadialField& f);

}  // namespace hypnls
