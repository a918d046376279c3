#include "hypnls/nls.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hypnls/errors.hpp"
#include "hypnls/propagators.hpp"
#include "hypnls/spectral.hpp"

namespace hypnls {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kStepSlack = 1e-9;

// |u|^{2 sigma} from the reduced sample; the weight underflow makes it vanish far out on H^3.
inline double modulus_power(complex v, double inv_m, double sigma) {
  const double a = std::abs(v) * inv_m;
  return sigma == 1.0 ? a * a : std::pow(a, 2.0 * sigma);
}

void rotate(std::span<complex> v, std::span<const double> inv_m, double angle_per_power, double sigma) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double p = modulus_power(v[j], inv_m[j], sigma);
    if (p != 0.0) v[j] *= std::polar(1.0, -angle_per_power * p);
  }
}

std::string describe(double t) {
  std::ostringstream os;
  os.precision(17);
  os << t;
  return os.str();
}

}  // namespace

void SolverConfig::validate(Geometry geometry) const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be positive");
  if (!(kappa == -1.0 || kappa == 0.0 || kappa == 1.0)) throw DomainError("kappa must be -1, 0 or +1");
  if (geometry == Geometry::Hyperbolic3 && sigma >= 2.0 && !allow_supercritical) {
    throw DomainError("sigma >= 2 on H^3 requires allow_supercritical");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
  if (!std::isfinite(t_begin) || !std::isfinite(t_end) || t_end < t_begin) {
    throw DomainError("need finite t_begin <= t_end");
  }
  steps_to(t_end);
  double prev = -std::numeric_limits<double>::infinity();
  for (double t : snapshot_times) {
    if (t < t_begin - kStepSlack * dt || t > t_end + kStepSlack * dt) {
      throw DomainError("snapshot time " + describe(t) + " outside [t_begin, t_end]");
    }
    if (!(t > prev)) throw DomainError("snapshot times must be strictly increasing");
    prev = t;
    steps_to(t);
  }
}

long SolverConfig::steps_to(double t) const {
  const double steps = (t - t_begin) / dt;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > kStepSlack * std::max(1.0, rounded)) {
    throw DomainError("time " + describe(t) + " is not on a step boundary of dt = " + describe(dt));
  }
  return static_cast<long>(rounded);
}

std::vector<double> uniform_snapshots(double t_begin, double t_end, double every) {
  if (!(every > 0.0)) throw DomainError("snapshot spacing must be positive");
  const long count = std::lround((t_end - t_begin) / every);
  std::vector<double> out;
  out.reserve(count + 1);
  for (long i = 0; i <= count; ++i) out.push_back(t_begin + i * every);
  return out;
}

std::string_view to_string(TerminationStatus status) {
  switch (status) {
    case TerminationStatus::Completed:
      return "completed";
    case TerminationStatus::BoundaryReflection:
      return "boundary_reflection";
    case TerminationStatus::NonFinite:
      return "non_finite";
    case TerminationStatus::BlowUp:
      return "blow_up";
  }
  return "unknown";
}

std::size_t Trajectory::index_of(double t) const {
  const double tol = kStepSlack * std::max(1.0, std::abs(t)) + 1e-9 * config_.dt;
  const auto it = std::lower_bound(times_.begin(), times_.end(), t - tol);
  if (it == times_.end() || std::abs(*it - t) > tol) {
    throw LookupError("no snapshot at t = " + describe(t));
  }
  return static_cast<std::size_t>(it - times_.begin());
}

void Trajectory::append(double t, RadialField field, SnapshotRecord record) {
  if (!times_.empty()) {
    if (!(t > times_.back())) throw DomainError("snapshot times must be strictly increasing");
    fields_.front().check_compatible(field);
  }
  times_.push_back(t);
  fields_.push_back(std::move(field));
  records_.push_back(record);
  last_valid_time_ = t;
}

void Trajectory::abort(TerminationStatus status, double last_valid_time, std::string message) {
  status_ = status;
  last_valid_time_ = last_valid_time;
  message_ = std::move(message);
}

RadialField nonlinear_step(const RadialField& f, double dt, double sigma, double kappa) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  RadialField out = f;
  if (kappa == 0.0 || dt == 0.0) return out;
  rotate(out.reduced_mut(), f.discretization().inverse_weight(), kappa * dt, sigma);
  return out;
}

RadialField strang_step(const RadialField& f, const SolverConfig& config) {
  if (config.kappa == 0.0) return free_evolve(f, config.dt);
  auto half = nonlinear_step(f, 0.5 * config.dt, config.sigma, config.kappa);
  auto mid = free_evolve(half, config.dt);
  return nonlinear_step(mid, 0.5 * config.dt, config.sigma, config.kappa);
}

double mass(const RadialField& f) {
  double sum = 0.0;
  for (const auto& v : f.reduced()) sum += std::norm(v);
  return kFourPi * f.grid().spacing() * sum;
}

EnergyParts energy(const RadialField& f, double sigma, double kappa) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  const auto F = forward_transform(f);
  const auto mu = f.discretization().laplacian_eigenvalues();
  const double h = f.grid().spacing();
  EnergyParts e;
  double kin = 0.0;
  for (int k = 0; k < F.size(); ++k) kin += mu[k] * std::norm(F.coeffs()[k]);
  e.kinetic = kFourPi * h * kin;
  if (kappa != 0.0) {
    const auto inv = f.discretization().inverse_weight();
    double pot = 0.0;
    for (int j = 0; j < f.size(); ++j) pot += std::norm(f.reduced()[j]) * modulus_power(f.reduced()[j], inv[j], sigma);
    e.potential = kappa * kFourPi * h * pot / (sigma + 1.0);
  }
  return e;
}

double tail_window(const RadialGrid& grid) { return std::min(5.0, 0.25 * grid.radius()); }

namespace {

double tail_mass_of(const RadialGrid& grid, std::span<const complex> v) {
  const double start = grid.radius() - tail_window(grid);
  double sum = 0.0;
  for (int j = static_cast<int>(v.size()) - 1; j >= 0 && grid.node(j) >= start; --j) sum += std::norm(v[j]);
  return kFourPi * grid.spacing() * sum;
}

double max_amplitude_of(std::span<const double> inv, std::span<const complex> v) {
  double m = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) m = std::max(m, std::abs(v[j]) * inv[j]);
  return m;
}

}  // namespace

double tail_mass(const RadialField& f) { return tail_mass_of(f.grid(), f.reduced()); }

double max_amplitude(const RadialField& f) { return max_amplitude_of(f.discretization().inverse_weight(), f.reduced()); }

Trajectory evolve(const RadialField& u0, const SolverConfig& config) {
  config.validate(u0.geometry());
  Trajectory traj(config, u0.geometry());
  const auto& disc = u0.discretization();
  const auto& transform = disc.transform();
  const auto inv = disc.inverse_weight();
  const auto mu = disc.laplacian_eigenvalues();
  const int n = u0.size();

  // The round-trip normalisation goes into the multiplier once; 1/(2N) is exact for N a power of two.
  const double round_trip = 1.0 / (2.0 * disc.grid().intervals());
  std::vector<complex> multiplier(n);
  for (int k = 0; k < n; ++k) multiplier[k] = round_trip * std::polar(1.0, -config.dt * mu[k]);

  const double mass0 = mass(u0);
  const double blow_up = kBlowUpAmplitude * std::max(1.0, max_amplitude(u0));
  auto record_for = [&](const RadialField& f, double t) {
    return SnapshotRecord{t, mass(f), energy(f, config.sigma, config.kappa).total(), tail_mass(f)};
  };
  auto check = [&](std::span<const complex> v, double t, double last_ok) -> bool {
    const double tail = tail_mass_of(disc.grid(), v);
    if (!std::isfinite(tail)) {
      traj.abort(TerminationStatus::NonFinite, last_ok, "non-finite field at t = " + describe(t));
      return false;
    }
    if (mass0 > 0.0 && tail > kTailMassThreshold * mass0) {
      traj.abort(TerminationStatus::BoundaryReflection, last_ok,
                 "tail mass " + describe(tail / mass0) + " of total near r = R at t = " + describe(t));
      return false;
    }
    if (config.kappa < 0.0 && max_amplitude_of(inv, v) > blow_up) {
      traj.abort(TerminationStatus::BlowUp, last_ok, "amplitude blow-up at t = " + describe(t));
      return false;
    }
    return true;
  };

  if (!check(u0.reduced(), config.t_begin, config.t_begin)) return traj;

  std::vector<long> snapshot_steps;
  for (double t : config.snapshot_times) snapshot_steps.push_back(config.steps_to(t));
  std::size_t next = 0;
  const long total_steps = config.steps_to(config.t_end);

  std::vector<complex> v(u0.reduced().begin(), u0.reduced().end());
  std::vector<complex> scratch(n);
  auto snapshot = [&](long step) {
    const double t = config.t_begin + step * config.dt;
    RadialField f(u0.shared_discretization(), v);
    auto rec = record_for(f, t);
    traj.append(t, std::move(f), rec);
  };
  while (next < snapshot_steps.size() && snapshot_steps[next] == 0) {
    snapshot(0);
    ++next;
  }

  std::shared_ptr<const ExtendedSineTransform> extended;
  std::vector<ExtendedSineTransform::value_type> ext_v, ext_scratch, ext_multiplier;
  if (config.extended_precision) {
    extended = ExtendedSineTransform::get(disc.grid().intervals());
    ext_v.resize(n);
    ext_scratch.resize(n);
    ext_multiplier.resize(n);
    const long double trip = 1.0L / (2.0L * disc.grid().intervals());
    for (int k = 0; k < n; ++k) ext_multiplier[k] = trip * std::polar(1.0L, -static_cast<long double>(config.dt) * mu[k]);
  }
  auto linear_step = [&] {
    if (!extended) {
      transform.apply_unnormalized(v, scratch);
      for (int k = 0; k < n; ++k) scratch[k] *= multiplier[k];
      transform.apply_unnormalized(scratch, v);
      return;
    }
    for (int j = 0; j < n; ++j) ext_v[j] = ExtendedSineTransform::value_type(v[j].real(), v[j].imag());
    extended->apply_unnormalized(ext_v, ext_scratch);
    for (int k = 0; k < n; ++k) ext_scratch[k] *= ext_multiplier[k];
    extended->apply_unnormalized(ext_scratch, ext_v);
    for (int j = 0; j < n; ++j) v[j] = complex(static_cast<double>(ext_v[j].real()), static_cast<double>(ext_v[j].imag()));
  };

  const bool nonlinear = config.kappa != 0.0;
  const double half_angle = 0.5 * config.dt * config.kappa;
  double last_ok = config.t_begin;
  for (long step = 1; step <= total_steps; ++step) {
    if (nonlinear) rotate(v, inv, half_angle, config.sigma);
    linear_step();
    if (nonlinear) rotate(v, inv, half_angle, config.sigma);

    const double t = config.t_begin + step * config.dt;
    if (!check(v, t, last_ok)) return traj;
    last_ok = t;
    while (next < snapshot_steps.size() && snapshot_steps[next] == step) {
      snapshot(step);
      ++next;
    }
  }
  return traj;
}

}  // namespace hypnls
