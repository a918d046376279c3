#include "hypnls/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>

#include "hypnls/errors.hpp"
#include "hypnls/propagators.hpp"
#include "hypnls/spectral.hpp"

namespace hypnls {

using nlohmann::json;

// ---------------------------------------------------------------------------------------------
// Semiclassical instability

double semiclassical_critical_index(int sigma) { return 1.5 - 1.0 / sigma; }

SemiclassicalRun semiclassical_experiment(double eps, const SemiclassicalParams& p) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
  if (p.sigma < 1) throw DomainError("semiclassical sigma must be a positive integer");
  if (!(p.s < semiclassical_critical_index(p.sigma))) {
    throw DomainError("s must be below the critical index 3/2 - 1/sigma");
  }
  if (p.kappa != 1.0 && p.kappa != -1.0) throw DomainError("semiclassical kappa must be +1 or -1");
  if (p.k < 0 || p.k > 3) throw UnsupportedError("error norm index k must lie in [0, 3]");
  if (p.steps < 1 || p.snapshots < 1 || p.steps % p.snapshots != 0) {
    throw DomainError("steps must be a positive multiple of snapshots");
  }
  // The a0 bump lives on [lambda, 2 lambda]; ask for 32 nodes across it.
  if (p.intervals / p.radius_factor < 32.0 || p.radius_factor < 2.0) {
    throw ResolutionError("semiclassical grid resolves [lambda, 2 lambda] with fewer than 32 nodes");
  }

  const double sigma = p.sigma;
  SemiclassicalRun run;
  run.eps = eps;
  run.theta = 1.0 / (1.0 + 2.0 * sigma * p.k);
  const double log_eps = std::abs(std::log(eps));
  // eps = lambda^{3 sigma/2 - 1 - s sigma}
  run.lambda = std::pow(eps, 1.0 / (1.5 * sigma - 1.0 - p.s * sigma));
  run.delta = std::pow(log_eps, -run.theta);
  run.t_rescaled = p.c0 * eps * std::pow(log_eps, run.theta);
  const double time_scale = std::pow(run.lambda, 1.5 * sigma + 1.0 - p.s * sigma);
  run.t_original = time_scale * run.t_rescaled;

  const auto disc = Discretization::make(RadialGrid(p.radius_factor * run.lambda, p.intervals), Geometry::Hyperbolic3);
  const auto rescaled = Discretization::make(RadialGrid(p.radius_factor, p.intervals), Geometry::Euclidean3);
  const double amplitude = std::pow(run.lambda, p.s - 1.5);
  const auto u01 = make_field(disc, CompactBump{run.lambda, amplitude});
  const auto u02 = make_field(disc, CompactBump{run.lambda, (1.0 + run.delta) * amplitude});

  SolverConfig cfg;
  cfg.sigma = sigma;
  cfg.kappa = p.kappa;
  cfg.dt = run.t_original / p.steps;
  cfg.t_end = run.t_original;
  const int every = p.steps / p.snapshots;
  for (int j = 1; j <= p.snapshots; ++j) cfg.snapshot_times.push_back(j * every * cfg.dt);
  cfg.snapshot_times.back() = cfg.t_end;

  const auto traj1 = evolve(u01, cfg);
  const auto traj2 = evolve(u02, cfg);
  if (!traj1.completed() || !traj2.completed()) {
    throw Error("semiclassical run aborted: " + (traj1.completed() ? traj2.message() : traj1.message()));
  }

  const double psi_scale = std::pow(run.lambda, 1.5 - p.s);
  const int n = disc->size();
  std::vector<double> a0(n);
  for (int j = 0; j < n; ++j) a0[j] = compact_bump_profile(rescaled->grid().node(j));
  for (std::size_t i = 0; i < traj1.size(); ++i) {
    const double t = traj1.times()[i] / time_scale;
    const auto& u = traj1.fields()[i];
    std::vector<complex> diff(n);
    for (int j = 0; j < n; ++j) {
      const double amp = std::pow(a0[j], 2.0 * sigma);
      const complex phi = a0[j] * std::polar(1.0, -p.kappa * t / eps * amp);
      run.phase_modulus_drift = std::max(run.phase_modulus_drift, std::abs(std::abs(phi) - a0[j]));
      diff[j] = psi_scale * u.value(j) - phi;
    }
    const double err = sobolev_norm(RadialField::from_values(rescaled, diff), p.k);
    run.times_rescaled.push_back(t);
    run.errors.push_back(err);
    run.approximation_error = std::max(run.approximation_error, err);
  }
  run.data_separation = sobolev_norm(u02 - u01, p.s);
  run.solution_separation = sobolev_norm(traj2.fields().back() - traj1.fields().back(), p.s);
  return run;
}

// ---------------------------------------------------------------------------------------------
// Long-range comparison

std::vector<double> default_pairing_times(double dt) {
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double t = 10.0 * std::pow(2.0, k / 3.0);
    if (t > 100.0 + 1e-9) break;
    out.push_back(std::round(t / dt) * dt);
  }
  return out;
}

namespace {

LongrangeGeometryReport longrange_run(Geometry geometry, double sigma, const LongrangeParams& p) {
  LongrangeGeometryReport rep;
  rep.geometry = geometry;
  const auto disc = Discretization::make(RadialGrid(p.radius, p.intervals), geometry);
  const auto u0 = make_field(disc, p.datum);
  const auto psi = make_field(disc, p.probe);
  const bool linear = sigma == 0.0;
  rep.pairing_times = p.pairing_times.empty() ? default_pairing_times(p.dt) : p.pairing_times;

  SolverConfig cfg;
  cfg.sigma = linear ? 1.0 : sigma;
  cfg.kappa = linear ? 0.0 : 1.0;
  cfg.dt = p.dt;
  std::set<double> times(p.probes.begin(), p.probes.end());
  if (!linear) times.insert(rep.pairing_times.begin(), rep.pairing_times.end());
  cfg.snapshot_times.assign(times.begin(), times.end());
  cfg.t_end = cfg.snapshot_times.back();

  const auto traj = evolve(u0, cfg);
  rep.status = traj.status();
  rep.message = traj.message();
  for (std::size_t i = 0; i + 1 < p.probes.size(); ++i) {
    if (p.probes[i + 1] > traj.last_valid_time() + 1e-9) break;
    rep.defects.push_back(scattering_defect(traj, p.probes[i], p.probes[i + 1]));
  }
  if (rep.defects.size() >= 2 && rep.defects.back() > 0.0) rep.defect_ratio = rep.defects.front() / rep.defects.back();
  if (!linear) {
    std::vector<double> ts;
    for (double t : rep.pairing_times) {
      if (t > traj.last_valid_time() + 1e-9) break;
      ts.push_back(t);
      rep.pairing_abs.push_back(std::abs(nonlinear_pairing(traj, psi, t)));
    }
    rep.pairing_times = ts;
    if (ts.size() >= 2 && std::all_of(rep.pairing_abs.begin(), rep.pairing_abs.end(), [](double x) { return x > 0.0; })) {
      rep.pairing_fit = fit_power_law(ts, rep.pairing_abs);
    }
  } else {
    rep.pairing_times.clear();
  }
  return rep;
}

}  // namespace

LongrangeReport longrange_experiment(double sigma, const LongrangeParams& params) {
  if (!(sigma >= 0.0)) throw DomainError("longrange sigma must be non-negative");
  if (params.probes.size() < 2 || !std::is_sorted(params.probes.begin(), params.probes.end())) {
    throw DomainError("longrange probes must be at least two increasing times");
  }
  LongrangeReport report;
  report.sigma = sigma;
  report.hyperbolic = longrange_run(Geometry::Hyperbolic3, sigma, params);
  report.euclidean = longrange_run(Geometry::Euclidean3, sigma, params);
  return report;
}

// ---------------------------------------------------------------------------------------------
// Pseudo-conformal law

PseudoConformalStudy pseudo_conformal_study(const RadialField& u0, double sigma, double kappa,
                                            const std::vector<double>& dts, const std::vector<double>& sample_times) {
  if (dts.empty() || sample_times.empty()) throw DomainError("pseudo_conformal_study needs dts and sample times");
  PseudoConformalStudy study;
  study.dts = dts;
  for (double dt : dts) {
    SolverConfig cfg;
    cfg.sigma = sigma;
    cfg.kappa = kappa;
    cfg.dt = dt;
    std::set<double> times;
    for (double t : sample_times) {
      if (!(t - dt > 0.0)) throw DomainError("pseudo-conformal samples need t > dt");
      times.insert({t - dt, t, t + dt});
    }
    cfg.snapshot_times.assign(times.begin(), times.end());
    cfg.t_end = cfg.snapshot_times.back();
    const auto traj = evolve(u0, cfg);
    if (!traj.completed()) {
      study.status = traj.status();
      study.message = traj.message();
      return study;
    }
    double worst = 0.0;
    for (double t : sample_times) {
      auto q_at = [&](double tau) {
        const auto& u = traj.at(tau);
        return pseudo_conformal(u, galilean_apply(u, tau), tau, sigma, kappa);
      };
      const auto minus = q_at(t - dt);
      const auto mid = q_at(t);
      const auto plus = q_at(t + dt);
      PseudoConformalSample s;
      s.dt = dt;
      s.t = t;
      s.Q = mid.Q;
      s.dQdt = (plus.Q - minus.Q) / (2.0 * dt);
      s.RHS = mid.RHS;
      s.rel_error = std::abs(s.dQdt - s.RHS) / std::max(std::abs(s.RHS), 1e-300);
      if (!(s.RHS < 0.0)) study.rhs_negative = false;
      worst = std::max(worst, s.rel_error);
      study.samples.push_back(s);
    }
    study.max_errors.push_back(worst);
  }
  for (std::size_t i = 0; i + 1 < study.max_errors.size(); ++i) {
    study.error_ratios.push_back(study.max_errors[i] / study.max_errors[i + 1]);
  }
  return study;
}

// ---------------------------------------------------------------------------------------------
// Tables and results

void SeriesTable::add_row(std::vector<std::optional<double>> row) {
  if (row.size() != columns.size()) throw Error("series row width does not match the header");
  rows.push_back(std::move(row));
}

std::string SeriesTable::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c];
  }
  out += '\n';
  char buf[64];
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (row[c]) {
        std::snprintf(buf, sizeof buf, "%.17g", *row[c]);
        out += buf;
      }
    }
    out += '\n';
  }
  return out;
}

bool ExperimentResult::checks_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

json fit_json(const PowerLawFit& f) {
  return {{"exponent", f.exponent},
          {"exponent_stderr", f.exponent_stderr},
          {"prefactor", f.prefactor},
          {"min_residual", f.min_residual},
          {"max_residual", f.max_residual},
          {"points", f.points}};
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

void add_check(ExperimentResult& res, std::string name, double value, std::string requirement, bool passed) {
  res.checks.push_back({std::move(name), value, std::move(requirement), passed});
}

// ---- schema pieces ----

std::vector<KeyEntry> grid_keys(const std::string& R, const std::string& N) {
  return {{"grid.R", KeyType::Number, R}, {"grid.N", KeyType::Integer, N}};
}

std::vector<KeyEntry> solver_keys(const std::string& sigma, const std::string& kappa, const std::string& dt,
                                 const std::string& t_end, const std::string& every) {
  return {{"solver.sigma", KeyType::Number, sigma},
          {"solver.kappa", KeyType::Number, kappa},
          {"solver.dt", KeyType::Number, dt},
          {"solver.t_begin", KeyType::Number, "0"},
          {"solver.t_end", KeyType::Number, t_end},
          {"solver.snapshot_every", KeyType::Number, every},
          {"solver.allow_supercritical", KeyType::Flag, "false"},
          {"solver.extended_precision", KeyType::Flag, "false"}};
}

std::vector<KeyEntry> data_keys(const std::string& prefix, const std::string& center, const std::string& amplitude,
                               const std::string& phase_slope) {
  return {{prefix + ".family", KeyType::Text, "gaussian_bump"},
          {prefix + ".center", KeyType::Number, center},
          {prefix + ".width", KeyType::Number, "1"},
          {prefix + ".amplitude", KeyType::Number, amplitude},
          {prefix + ".phase_slope", KeyType::Number, phase_slope},
          {prefix + ".scale", KeyType::Number, "1"}};
}

template <class... Parts>
std::vector<KeyEntry> join(Parts... parts) {
  std::vector<KeyEntry> out;
  (out.insert(out.end(), parts.begin(), parts.end()), ...);
  return out;
}

// ---- builders (also run during validation) ----

DiscretizationPtr build_discretization(const ResolvedConfig& c, Geometry geometry) {
  const long n = c.integer("grid.N");
  if (n < 4 || n > (1L << 24)) throw ConfigError("grid.N must lie in [4, 2^24]");
  const double R = c.number("grid.R");
  if (!(R > 0.0)) throw ConfigError("grid.R must be positive");
  return Discretization::make(RadialGrid(R, static_cast<int>(n)), geometry);
}

Geometry build_geometry(const ResolvedConfig& c) { return parse_geometry(c.text("geometry")); }

InitialDatum build_datum(const ResolvedConfig& c, const std::string& prefix = "data") {
  const auto& family = c.text(prefix + ".family");
  if (family == "gaussian_bump") {
    GaussianBump g{c.number(prefix + ".center"), c.number(prefix + ".width"), c.number(prefix + ".amplitude"),
                   c.number(prefix + ".phase_slope")};
    if (!(g.width > 0.0)) throw ConfigError(prefix + ".width must be positive");
    return g;
  }
  if (family == "compact_bump") {
    CompactBump b{c.number(prefix + ".scale"), c.number(prefix + ".amplitude")};
    if (!(b.scale > 0.0)) throw ConfigError(prefix + ".scale must be positive");
    return b;
  }
  throw ConfigError(prefix + ".family must be gaussian_bump or compact_bump, got '" + family + "'");
}

SolverConfig build_solver(const ResolvedConfig& c, Geometry geometry) {
  SolverConfig s;
  s.sigma = c.number("solver.sigma");
  s.kappa = c.number("solver.kappa");
  s.dt = c.number("solver.dt");
  s.t_begin = c.number("solver.t_begin");
  s.t_end = c.number("solver.t_end");
  s.allow_supercritical = c.flag("solver.allow_supercritical");
  s.extended_precision = c.flag("solver.extended_precision");
  const double every = c.number("solver.snapshot_every");
  if (!(every > 0.0)) throw ConfigError("solver.snapshot_every must be positive");
  s.snapshot_times = uniform_snapshots(s.t_begin, s.t_end, every);
  if (!s.snapshot_times.empty() && std::abs(s.snapshot_times.back() - s.t_end) > 1e-9 * std::max(1.0, s.t_end)) {
    throw ConfigError("solver.snapshot_every must divide t_end - t_begin");
  }
  s.validate(geometry);
  return s;
}

// ---- experiment descriptions ----

struct Experiment {
  std::function<std::vector<KeyEntry>()> schema;
  std::function<void(const ResolvedConfig&)> validate;
  std::function<ExperimentResult(const ResolvedConfig&)> run;
};

std::vector<std::optional<double>> snapshot_row(const SnapshotRecord& r) {
  return {r.t, r.mass, r.energy, r.tail_mass};
}

void record_abort(ExperimentResult& res, const Trajectory& traj) {
  if (traj.completed()) return;
  res.aborted = true;
  res.abort_message = std::string(std::string(to_string(traj.status()))) + ": " + traj.message();
  res.summary["termination"] = {{"status", std::string(to_string(traj.status()))},
                                {"last_valid_time", traj.last_valid_time()},
                                {"message", traj.message()}};
}

json trajectory_summary(const Trajectory& traj) {
  json j;
  j["status"] = std::string(to_string(traj.status()));
  j["snapshots"] = traj.size();
  if (!traj.empty()) {
    const auto& recs = traj.records();
    double mass_drift = 0.0, energy_drift = 0.0;
    for (const auto& r : recs) {
      mass_drift = std::max(mass_drift, std::abs(r.mass - recs.front().mass));
      energy_drift = std::max(energy_drift, std::abs(r.energy - recs.front().energy));
    }
    j["initial_mass"] = recs.front().mass;
    j["initial_energy"] = recs.front().energy;
    j["mass_drift_relative"] = recs.front().mass > 0.0 ? mass_drift / recs.front().mass : 0.0;
    j["energy_drift_relative"] = recs.front().energy != 0.0 ? energy_drift / std::abs(recs.front().energy) : 0.0;
  }
  return j;
}

// selftest ------------------------------------------------------------------------------------

Experiment selftest_experiment() {
  Experiment e;
  e.schema = [] {
    return join(grid_keys("40", "4096"),
                std::vector<KeyEntry>{{"geometry", KeyType::Text, "hyperbolic"},
                                     {"seed", KeyType::Integer, "1"},
                                     {"selftest.fields", KeyType::Integer, "100"},
                                     {"selftest.tolerance", KeyType::Number, "1e-12"},
                                     {"selftest.flow_tolerance", KeyType::Number, "1e-10"}});
  };
  e.validate = [](const ResolvedConfig& c) {
    build_discretization(c, build_geometry(c));
    if (c.integer("selftest.fields") < 1) throw ConfigError("selftest.fields must be positive");
  };
  e.run = [](const ResolvedConfig& c) {
    ExperimentResult res;
    const auto disc = build_discretization(c, build_geometry(c));
    const double tol = c.number("selftest.tolerance");
    std::mt19937_64 rng(static_cast<std::uint64_t>(c.integer("seed")));
    std::normal_distribution<double> normal;
    res.series.columns = {"index", "roundtrip_error", "plancherel_error", "unitarity_error", "group_law_error"};
    double worst[4] = {0, 0, 0, 0};
    const int n = disc->size();
    for (long i = 0; i < c.integer("selftest.fields"); ++i) {
      std::vector<complex> v(n);
      for (auto& z : v) z = complex(normal(rng), normal(rng));
      const RadialField f(disc, std::move(v));
      const double norm = std::sqrt(mass(f));
      const auto F = forward_transform(f);
      const double e_round = std::sqrt(mass(inverse_transform(F) - f)) / norm;
      const double e_planch = std::abs(F.l2_norm() - norm) / norm;
      const double t1 = 0.1 + 0.01 * i;
      const auto a = free_evolve(f, t1);
      const double e_unit = std::abs(std::sqrt(mass(a)) - norm) / norm;
      const double e_group = std::sqrt(mass(free_evolve(a, 0.3) - free_evolve(f, t1 + 0.3))) / norm;
      const double errs[4] = {e_round, e_planch, e_unit, e_group};
      for (int k = 0; k < 4; ++k) worst[k] = std::max(worst[k], errs[k]);
      res.series.add_row({static_cast<double>(i), e_round, e_planch, e_unit, e_group});
    }
    // The flow checks lose digits to the rounding of the phases mu_k t (mu_k up to ~1e5).
    const double flow_tol = c.number("selftest.flow_tolerance");
    const char* names[4] = {"roundtrip", "plancherel", "unitarity", "group_law"};
    for (int k = 0; k < 4; ++k) {
      const double limit = k < 2 ? tol : flow_tol;
      add_check(res, names[k], worst[k], "< " + fmt(limit), worst[k] < limit);
      res.summary["max_errors"][names[k]] = worst[k];
    }
    return res;
  };
  return e;
}

// evolve --------------------------------------------------------------------------------------

Experiment evolve_experiment() {
  Experiment e;
  e.schema = [] {
    return join(grid_keys("40", "4096"), std::vector<KeyEntry>{{"geometry", KeyType::Text, "hyperbolic"}},
                solver_keys("1", "1", "0.001", "1", "0.1"), data_keys("data", "3", "1", "0"),
                std::vector<KeyEntry>{{"evolve.mass_tolerance", KeyType::Number, "1e-12"}});
  };
  e.validate = [](const ResolvedConfig& c) {
    const auto g = build_geometry(c);
    build_discretization(c, g);
    build_solver(c, g);
    build_datum(c);
  };
  e.run = [](const ResolvedConfig& c) {
    ExperimentResult res;
    const auto g = build_geometry(c);
    const auto disc = build_discretization(c, g);
    const auto cfg = build_solver(c, g);
    const auto traj = evolve(make_field(disc, build_datum(c)), cfg);
    res.series.columns = {"t", "mass", "energy", "tail_mass", "h1_norm"};
    for (std::size_t i = 0; i < traj.size(); ++i) {
      auto row = snapshot_row(traj.records()[i]);
      row.push_back(sobolev_norm(traj.fields()[i], 1.0));
      res.series.add_row(row);
    }
    res.summary["trajectory"] = trajectory_summary(traj);
    record_abort(res, traj);
    const double drift = res.summary["trajectory"].value("mass_drift_relative", 0.0);
    const double tol = c.number("evolve.mass_tolerance");
    add_check(res, "mass_conservation", drift, "< " + fmt(tol), drift < tol);
    return res;
  };
  return e;
}

// scatter -------------------------------------------------------------------------------------

Experiment scatter_experiment() {
  Experiment e;
  e.schema = [] {
    return join(grid_keys("2000", "16384"), std::vector<KeyEntry>{{"geometry", KeyType::Text, "hyperbolic"}},
                solver_keys("0.3", "1", "0.01", "40", "1"), data_keys("data", "0", "1", "0"),
                std::vector<KeyEntry>{{"scatter.probes", KeyType::NumberList, "5,10,20,40"}});
  };
  e.validate = [](const ResolvedConfig& c) {
    const auto g = build_geometry(c);
    build_discretization(c, g);
    auto cfg = build_solver(c, g);
    build_datum(c);
    const auto probes = c.numbers("scatter.probes");
    if (probes.size() < 2) throw ConfigError("scatter.probes needs at least two times");
    for (double t : probes) {
      if (std::none_of(cfg.snapshot_times.begin(), cfg.snapshot_times.end(),
                       [&](double s) { return std::abs(s - t) <= 1e-9 * std::max(1.0, t); })) {
        throw ConfigError("scatter probe " + fmt(t) + " is not a snapshot time");
      }
    }
  };
  e.run = [](const ResolvedConfig& c) {
    ExperimentResult res;
    const auto g = build_geometry(c);
    const auto disc = build_discretization(c, g);
    const auto cfg = build_solver(c, g);
    const auto traj = evolve(make_field(disc, build_datum(c)), cfg);
    record_abort(res, traj);
    res.summary["trajectory"] = trajectory_summary(traj);
    res.series.columns = {"t", "mass", "energy", "tail_mass", "profile_distance_to_last"};
    if (traj.empty()) return res;
    const auto last = scattering_profile(traj.fields().back(), traj.times().back());
    for (std::size_t i = 0; i < traj.size(); ++i) {
      auto row = snapshot_row(traj.records()[i]);
      row.push_back((scattering_profile(traj.fields()[i], traj.times()[i]) - last).l2_norm());
      res.series.add_row(row);
    }
    std::vector<double> probes;
    for (double t : c.numbers("scatter.probes")) {
      if (t <= traj.last_valid_time() + 1e-9) probes.push_back(t);
    }
    const auto rep = scattering_report(traj, probes);
    res.summary["probe_times"] = rep.probe_times;
    res.summary["defects"] = rep.defects;
    if (rep.consecutive_fit.points > 0) res.summary["consecutive_defect_fit"] = fit_json(rep.consecutive_fit);
    if (rep.u_plus) res.summary["u_plus_norm"] = rep.u_plus->l2_norm();
    bool symmetric = true;
    for (std::size_t a = 0; a < rep.defects.size(); ++a) {
      for (std::size_t b = 0; b < rep.defects.size(); ++b) {
        symmetric = symmetric && rep.defects[a][b] == rep.defects[b][a] && rep.defects[a][b] >= 0.0;
      }
    }
    add_check(res, "defects_symmetric_nonnegative", symmetric ? 1.0 : 0.0, "== 1", symmetric);
    return res;
  };
  return e;
}

// morawetz ------------------------------------------------------------------------------------

Experiment morawetz_experiment() {
  Experiment e;
  e.schema = [] {
    return join(grid_keys("200", "4096"), solver_keys("1", "1", "0.005", "10", "0.05"),
                data_keys("data", "3", "1", "0.5"),
                std::vector<KeyEntry>{{"morawetz.times", KeyType::NumberList, "1,2,5,10"},
                                     {"morawetz.stride", KeyType::Integer, "10"},
                                     {"morawetz.tolerance", KeyType::Number, "1e-3"}});
  };
  e.validate = [](const ResolvedConfig& c) {
    build_discretization(c, Geometry::Hyperbolic3);
    const auto cfg = build_solver(c, Geometry::Hyperbolic3);
    if (cfg.kappa == -1.0) throw ConfigError("morawetz needs kappa = +1 or 0");
    build_datum(c);
    if (c.integer("morawetz.stride") < 1) throw ConfigError("morawetz.stride must be positive");
    for (double T : c.numbers("morawetz.times")) {
      if (T <= cfg.t_begin || T > cfg.t_end) throw ConfigError("morawetz.times must lie in (t_begin, t_end]");
    }
  };
  e.run = [](const ResolvedConfig& c) {
    ExperimentResult res;
    const auto disc = build_discretization(c, Geometry::Hyperbolic3);
    const auto cfg = build_solver(c, Geometry::Hyperbolic3);
    const auto traj = evolve(make_field(disc, build_datum(c)), cfg);
    record_abort(res, traj);
    res.summary["trajectory"] = trajectory_summary(traj);
    const long stride = c.integer("morawetz.stride");
    res.series.columns = {"t", "mass", "energy", "tail_mass", "l4_power", "interaction_momentum"};
    for (std::size_t i = 0; i < traj.size(); ++i) {
      auto row = snapshot_row(traj.records()[i]);
      row.push_back(std::pow(lq_norm(traj.fields()[i], 4.0, false), 4.0));
      if (i % stride == 0 || i + 1 == traj.size()) {
        row.push_back(interaction_momentum(traj.fields()[i]));
      } else {
        row.push_back(std::nullopt);
      }
      res.series.add_row(row);
    }
    if (traj.empty()) return res;
    const double h1 = sobolev_norm(traj.fields().front(), 1.0);
    const double floor = -c.number("morawetz.tolerance") * std::pow(h1, 4.0);
    res.summary["initial_h1_norm"] = h1;
    for (double T : c.numbers("morawetz.times")) {
      if (T > traj.last_valid_time() + 1e-9) break;
      const auto rec = morawetz_check(traj, T, static_cast<int>(stride));
      res.summary["records"].push_back({{"T", rec.T},
                                        {"lhs", rec.lhs},
                                        {"rhs", rec.rhs},
                                        {"margin", rec.margin},
                                        {"sharp_rhs", rec.sharp_rhs},
                                        {"sharp_margin", rec.sharp_margin},
                                        {"max_abs_momentum", rec.max_abs_momentum},
                                        {"sup_h1_norm", rec.sup_h1_norm},
                                        {"momentum_ratio", rec.momentum_ratio}});
      char name[64];
      std::snprintf(name, sizeof name, "margin_T%g", T);
      add_check(res, name, rec.margin, ">= -tolerance * ||u0||_H1^4", rec.margin >= floor);
    }
    return res;
  };
  return e;
}

// pseudoconformal -----------------------------------------------------------------------------

Experiment pseudoconformal_experiment() {
  Experiment e;
  e.schema = [] {
    return join(grid_keys("60", "2048"), data_keys("data", "0", "1", "0"),
                std::vector<KeyEntry>{{"solver.sigma", KeyType::Number, "1"},
                                     {"solver.kappa", KeyType::Number, "1"},
                                     {"pseudoconformal.dt", KeyType::NumberList, "0.01,0.005,0.0025"},
                                     {"pseudoconformal.samples", KeyType::NumberList, "0.5,1,1.5"},
                                     {"pseudoconformal.ratio_min", KeyType::Number, "3"},
                                     {"pseudoconformal.ratio_max", KeyType::Number, "5"}});
  };
  e.validate = [](const ResolvedConfig& c) {
    build_discretization(c, Geometry::Hyperbolic3);
    build_datum(c);
    SolverConfig s;
    s.sigma = c.number("solver.sigma");
    s.kappa = c.number("solver.kappa");
    s.validate(Geometry::Hyperbolic3);
    for (double dt : c.numbers("pseudoconformal.dt")) {
      if (!(dt > 0.0)) throw ConfigError("pseudoconformal.dt entries must be positive");
      for (double t : c.numbers("pseudoconformal.samples")) {
        if (!(t > dt)) throw ConfigError("pseudoconformal.samples must exceed every dt");
        s.dt = dt;
        s.t_end = t + dt;
        s.steps_to(t - dt);
      }
    }
  };
  e.run = [](const ResolvedConfig& c) {
    ExperimentResult res;
    const auto disc = build_discretization(c, Geometry::Hyperbolic3);
    const double sigma = c.number("solver.sigma");
    const double kappa = c.number("solver.kappa");
    const auto study = pseudo_conformal_study(make_field(disc, build_datum(c)), sigma, kappa,
                                              c.numbers("pseudoconformal.dt"), c.numbers("pseudoconformal.samples"));
    res.series.columns = {"dt", "t", "Q", "dQdt", "RHS", "rel_error"};
    for (const auto& s : study.samples) res.series.add_row({s.dt, s.t, s.Q, s.dQdt, s.RHS, s.rel_error});
    res.summary["max_errors"] = study.max_errors;
    res.summary["error_ratios"] = study.error_ratios;
    res.summary["rhs_negative"] = study.rhs_negative;
    if (study.status != TerminationStatus::Completed) {
      res.aborted = true;
      res.abort_message = study.message;
      return res;
    }
    const double lo = c.number("pseudoconformal.ratio_min");
    const double hi = c.number("pseudoconformal.ratio_max");
    for (std::size_t i = 0; i < study.error_ratios.size(); ++i) {
      const double r = study.error_ratios[i];
      add_check(res, "error_ratio_" + std::to_string(i), r, "in [" + fmt(lo) + ", " + fmt(hi) + "]",
                r >= lo && r <= hi);
    }
    if (sigma > 2.0 / 3.0 && kappa > 0.0) {
      add_check(res, "rhs_negative", study.rhs_negative ? 1.0 : 0.0, "== 1", study.rhs_negative);
    }
    return res;
  };
  return e;
}

// semiclassical -------------------------------------------------------------------------------

Experiment semiclassical_experiment_runner() {
  Experiment e;
  e.schema = [] {
    return std::vector<KeyEntry>{{"semiclassical.eps", KeyType::NumberList, "0.1,0.05,0.025"},
                                {"semiclassical.sigma", KeyType::Integer, "1"},
                                {"semiclassical.s", KeyType::Number, "0.3"},
                                {"semiclassical.kappa", KeyType::Number, "1"},
                                {"semiclassical.c0", KeyType::Number, "0.1"},
                                {"semiclassical.k", KeyType::Integer, "2"},
                                {"semiclassical.N", KeyType::Integer, "2048"},
                                {"semiclassical.radius_factor", KeyType::Number, "4"},
                                {"semiclassical.steps", KeyType::Integer, "400"},
                                {"semiclassical.snapshots", KeyType::Integer, "20"},
                                {"semiclassical.data_separation_drop", KeyType::Number, "2"},
                                {"semiclassical.solution_separation_drop", KeyType::Number, "1.3"}};
  };
  auto params = [](const ResolvedConfig& c) {
    SemiclassicalParams p;
    p.sigma = static_cast<int>(c.integer("semiclassical.sigma"));
    p.s = c.number("semiclassical.s");
    p.kappa = c.number("semiclassical.kappa");
    p.c0 = c.number("semiclassical.c0");
    p.k = static_cast<int>(c.integer("semiclassical.k"));
    p.intervals = static_cast<int>(c.integer("semiclassical.N"));
    p.radius_factor = c.number("semiclassical.radius_factor");
    p.steps = static_cast<int>(c.integer("semiclassical.steps"));
    p.snapshots = static_cast<int>(c.integer("semiclassical.snapshots"));
    return p;
  };
  e.validate = [params](const ResolvedConfig& c) {
    const auto p = params(c);
    if (p.sigma < 1) throw ConfigError("semiclassical.sigma must be a positive integer");
    if (!(p.s < semiclassical_critical_index(p.sigma))) throw ConfigError("semiclassical.s must be below 3/2 - 1/sigma");
    if (p.kappa != 1.0 && p.kappa != -1.0) throw ConfigError("semiclassical.kappa must be +1 or -1");
    if (p.steps < 1 || p.snapshots < 1 || p.steps % p.snapshots != 0) {
      throw ConfigError("semiclassical.steps must be a positive multiple of semiclassical.snapshots");
    }
    if (!(p.c0 > 0.0)) throw ConfigError("semiclassical.c0 must be positive");
    for (double eps : c.numbers("semiclassical.eps")) {
      if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("semiclassical.eps entries must lie in (0, 1)");
    }
  };
  e.run = [params](const ResolvedConfig& c) {
    ExperimentResult res;
    const auto p = params(c);
    auto eps_list = c.numbers("semiclassical.eps");
    res.series.columns = {"eps", "t_rescaled", "approximation_error"};
    std::vector<SemiclassicalRun> runs;
    for (double eps : eps_list) {
      runs.push_back(semiclassical_experiment(eps, p));
      const auto& r = runs.back();
      for (std::size_t i = 0; i < r.errors.size(); ++i) res.series.add_row({eps, r.times_rescaled[i], r.errors[i]});
      res.summary["runs"].push_back({{"eps", r.eps},
                                     {"lambda", r.lambda},
                                     {"theta", r.theta},
                                     {"delta", r.delta},
                                     {"t_rescaled", r.t_rescaled},
                                     {"t_original", r.t_original},
                                     {"approximation_error", r.approximation_error},
                                     {"data_separation", r.data_separation},
                                     {"solution_separation", r.solution_separation},
                                     {"phase_modulus_drift", r.phase_modulus_drift}});
    }
    res.summary["critical_index"] = semiclassical_critical_index(p.sigma);
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
      monotone = monotone && runs[i + 1].approximation_error < runs[i].approximation_error;
    }
    add_check(res, "approximation_error_monotone", monotone ? 1.0 : 0.0, "strictly decreasing in eps", monotone);
    if (runs.size() >= 2) {
      const double data_drop = runs.front().data_separation / runs.back().data_separation;
      const double sol_drop = runs.front().solution_separation / runs.back().solution_separation;
      const double need_data = c.number("semiclassical.data_separation_drop");
      const double max_sol = c.number("semiclassical.solution_separation_drop");
      res.summary["data_separation_drop"] = data_drop;
      res.summary["solution_separation_drop"] = sol_drop;
      add_check(res, "data_separation_drop", data_drop, ">= " + fmt(need_data), data_drop >= need_data);
      add_check(res, "solution_separation_drop", sol_drop, "< " + fmt(max_sol), sol_drop < max_sol);
    }
    return res;
  };
  return e;
}

// h2kernel ------------------------------------------------------------------------------------

Experiment h2kernel_experiment() {
  Experiment e;
  e.schema = [] {
    return std::vector<KeyEntry>{{"h2kernel.rho_min", KeyType::Number, "0.01"},
                                {"h2kernel.rho_max", KeyType::Number, "20"},
                                {"h2kernel.rho_count", KeyType::Integer, "60"},
                                {"h2kernel.times", KeyType::NumberList, "0.1,1,10"},
                                {"h2kernel.tolerance", KeyType::Number, "1e-6"},
                                {"h2kernel.refined_min_level", KeyType::Integer, "2"},
                                {"h2kernel.max_change", KeyType::Number, "0.01"}};
  };
  e.validate = [](const ResolvedConfig& c) {
    const double lo = c.number("h2kernel.rho_min");
    const double hi = c.number("h2kernel.rho_max");
    if (!(lo > 0.0 && hi > lo)) throw ConfigError("need 0 < h2kernel.rho_min < h2kernel.rho_max");
    if (c.integer("h2kernel.rho_count") < 2) throw ConfigError("h2kernel.rho_count must be at least 2");
    for (double t : c.numbers("h2kernel.times")) {
      if (t == 0.0) throw ConfigError("h2kernel.times must be nonzero");
    }
    const long lvl = c.integer("h2kernel.refined_min_level");
    if (lvl < 1 || lvl > 6) throw ConfigError("h2kernel.refined_min_level must lie in [1, 6]");
  };
  e.run = [](const ResolvedConfig& c) {
    ExperimentResult res;
    const double lo = c.number("h2kernel.rho_min");
    const double hi = c.number("h2kernel.rho_max");
    const long count = c.integer("h2kernel.rho_count");
    H2KernelOptions base;
    base.tolerance = c.number("h2kernel.tolerance");
    H2KernelOptions refined = base;
    refined.min_level = static_cast<int>(c.integer("h2kernel.refined_min_level"));
    refined.max_level = refined.min_level + 6;
    res.series.columns = {"rho", "t", "re", "im", "abs", "bound", "ratio", "refined_ratio", "majorant"};
    double sup = 0.0, sup_refined = 0.0;
    bool below_majorant = true;
    for (double t : c.numbers("h2kernel.times")) {
      for (long i = 0; i < count; ++i) {
        const double rho = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
        const auto I = h2_kernel_integral(rho, t, base);
        const auto Ir = h2_kernel_integral(rho, t, refined);
        const double bound = h2_kernel_bound(rho);
        const double maj = h2_kernel_majorant(rho);
        below_majorant = below_majorant && std::abs(I) <= maj * (1.0 + 1e-9);
        sup = std::max(sup, std::abs(I) / bound);
        sup_refined = std::max(sup_refined, std::abs(Ir) / bound);
        res.series.add_row({rho, t, I.real(), I.imag(), std::abs(I), bound, std::abs(I) / bound, std::abs(Ir) / bound, maj});
      }
    }
    const double change = std::abs(sup_refined - sup) / sup;
    res.summary["sup_ratio"] = sup;
    res.summary["sup_ratio_refined"] = sup_refined;
    res.summary["relative_change"] = change;
    const double max_change = c.number("h2kernel.max_change");
    add_check(res, "sup_ratio_finite", sup, "finite", std::isfinite(sup));
    add_check(res, "refinement_change", change, "< " + fmt(max_change), change < max_change);
    add_check(res, "below_majorant", below_majorant ? 1.0 : 0.0, "== 1", below_majorant);
    return res;
  };
  return e;
}

// longrange -----------------------------------------------------------------------------------

Experiment longrange_experiment_runner() {
  Experiment e;
  e.schema = [] {
    return join(grid_keys("2000", "16384"), data_keys("data", "0", "1", "0"), data_keys("psi", "0", "1", "0"),
                std::vector<KeyEntry>{{"solver.dt", KeyType::Number, "0.01"},
                                     {"longrange.sigma", KeyType::Number, "0.3"},
                                     {"longrange.probes", KeyType::NumberList, "5,10,20,40"},
                                     {"longrange.pairing_times", KeyType::Text, "default"},
                                     {"longrange.hyperbolic_ratio_min", KeyType::Number, "4"},
                                     {"longrange.euclidean_ratio_max", KeyType::Number, "1.5"},
                                     {"longrange.pairing_tolerance", KeyType::Number, "0.15"},
                                     {"longrange.hyperbolic_pairing_max", KeyType::Number, "-2"}});
  };
  auto params = [](const ResolvedConfig& c) {
    LongrangeParams p;
    p.radius = c.number("grid.R");
    p.intervals = static_cast<int>(c.integer("grid.N"));
    p.dt = c.number("solver.dt");
    const auto d = build_datum(c, "data");
    const auto q = build_datum(c, "psi");
    if (!std::holds_alternative<GaussianBump>(d) || !std::holds_alternative<GaussianBump>(q)) {
      throw ConfigError("longrange uses gaussian_bump data and probe");
    }
    p.datum = std::get<GaussianBump>(d);
    p.probe = std::get<GaussianBump>(q);
    p.probes = c.numbers("longrange.probes");
    const auto& pt = c.text("longrange.pairing_times");
    if (pt != "default") p.pairing_times = parse_number_list("longrange.pairing_times", pt);
    return p;
  };
  e.validate = [params](const ResolvedConfig& c) {
    build_discretization(c, Geometry::Hyperbolic3);
    const auto p = params(c);
    const double sigma = c.number("longrange.sigma");
    if (!(sigma >= 0.0 && sigma < 2.0)) throw ConfigError("longrange.sigma must lie in [0, 2)");
    if (!(p.dt > 0.0)) throw ConfigError("solver.dt must be positive");
    SolverConfig s;
    s.dt = p.dt;
    s.t_end = 1e300;
    for (double t : p.probes) s.steps_to(t);
    for (double t : p.pairing_times) s.steps_to(t);
    if (p.probes.size() < 2 || !std::is_sorted(p.probes.begin(), p.probes.end())) {
      throw ConfigError("longrange.probes must be at least two increasing times");
    }
  };
  e.run = [params](const ResolvedConfig& c) {
    ExperimentResult res;
    const double sigma = c.number("longrange.sigma");
    const auto rep = longrange_experiment(sigma, params(c));
    res.series.columns = {"geometry", "t", "pairing_abs"};
    auto geom_json = [](const LongrangeGeometryReport& g) {
      json j{{"defects", g.defects},
             {"defect_ratio", g.defect_ratio},
             {"pairing_times", g.pairing_times},
             {"pairing_abs", g.pairing_abs},
             {"status", std::string(to_string(g.status))}};
      if (g.pairing_fit) j["pairing_fit"] = fit_json(*g.pairing_fit);
      if (!g.message.empty()) j["message"] = g.message;
      return j;
    };
    for (const auto* g : {&rep.hyperbolic, &rep.euclidean}) {
      const double code = g->geometry == Geometry::Hyperbolic3 ? 0.0 : 1.0;
      for (std::size_t i = 0; i < g->pairing_times.size(); ++i) res.series.add_row({code, g->pairing_times[i], g->pairing_abs[i]});
      if (g->status != TerminationStatus::Completed) {
        res.aborted = true;
        res.abort_message = std::string(to_string(g->geometry)) + ": " + g->message;
      }
    }
    res.summary["sigma"] = sigma;
    res.summary["geometry_codes"] = {{"hyperbolic", 0}, {"euclidean", 1}};
    res.summary["hyperbolic"] = geom_json(rep.hyperbolic);
    res.summary["euclidean"] = geom_json(rep.euclidean);
    if (sigma == 0.0) {
      const double worst = std::max(rep.hyperbolic.defects.empty() ? 0.0 : *std::max_element(rep.hyperbolic.defects.begin(), rep.hyperbolic.defects.end()),
                                    rep.euclidean.defects.empty() ? 0.0 : *std::max_element(rep.euclidean.defects.begin(), rep.euclidean.defects.end()));
      add_check(res, "linear_defects_vanish", worst, "< 1e-12", worst < 1e-12);
      return res;
    }
    const double hmin = c.number("longrange.hyperbolic_ratio_min");
    const double emax = c.number("longrange.euclidean_ratio_max");
    add_check(res, "hyperbolic_defect_ratio", rep.hyperbolic.defect_ratio, ">= " + fmt(hmin),
              rep.hyperbolic.defect_ratio >= hmin);
    add_check(res, "euclidean_defect_ratio", rep.euclidean.defect_ratio, "< " + fmt(emax),
              rep.euclidean.defect_ratio > 0.0 && rep.euclidean.defect_ratio < emax);
    const double expected = -3.0 * sigma;
    const double tol = c.number("longrange.pairing_tolerance");
    const double ex = rep.euclidean.pairing_fit ? rep.euclidean.pairing_fit->exponent : 0.0;
    add_check(res, "euclidean_pairing_exponent", ex,
              "within " + fmt(tol) + " of " + fmt(expected),
              rep.euclidean.pairing_fit && std::abs(ex - expected) <= tol);
    const double hx = rep.hyperbolic.pairing_fit ? rep.hyperbolic.pairing_fit->exponent : 0.0;
    const double hmax = c.number("longrange.hyperbolic_pairing_max");
    add_check(res, "hyperbolic_pairing_exponent", hx, "< " + fmt(hmax),
              rep.hyperbolic.pairing_fit && hx < hmax);
    return res;
  };
  return e;
}

const std::map<std::string, Experiment>& registry() {
  static const std::map<std::string, Experiment> r = {
      {"selftest", selftest_experiment()},
      {"evolve", evolve_experiment()},
      {"scatter", scatter_experiment()},
      {"morawetz", morawetz_experiment()},
      {"pseudoconformal", pseudoconformal_experiment()},
      {"semiclassical", semiclassical_experiment_runner()},
      {"h2kernel", h2kernel_experiment()},
      {"longrange", longrange_experiment_runner()},
  };
  return r;
}

const Experiment& lookup(const std::string& name) {
  const auto& r = registry();
  const auto it = r.find(name);
  if (it == r.end()) throw ConfigError("unknown experiment '" + name + "'");
  return it->second;
}

std::vector<KeyEntry> full_schema(const std::string& name) {
  auto schema = lookup(name).schema();
  schema.push_back({"experiment", KeyType::Text, name});
  return schema;
}

ResolvedConfig resolve(const std::string& name, const Config& user) {
  ResolvedConfig c(full_schema(name), user);
  if (c.text("experiment") != name) {
    throw ConfigError("config names experiment '" + c.text("experiment") + "' but '" + name + "' was requested");
  }
  return c;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
  }();
  return names;
}

std::vector<KeyEntry> experiment_schema(const std::string& experiment) { return full_schema(experiment); }

PreparedExperiment::PreparedExperiment(const std::string& experiment, const Config& user)
    : name_(experiment), config_(resolve(experiment, user)) {
  try {
    lookup(name_).validate(config_);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

ExperimentResult PreparedExperiment::run() const {
  auto res = lookup(name_).run(config_);
  res.summary["experiment"] = name_;
  res.summary["config"] = config_.values();
  json checks = json::array();
  for (const auto& c : res.checks) {
    checks.push_back({{"name", c.name}, {"value", c.value}, {"requirement", c.requirement}, {"passed", c.passed}});
  }
  res.summary["checks"] = checks;
  res.summary["aborted"] = res.aborted;
  if (res.aborted) res.summary["abort_message"] = res.abort_message;
  res.summary["passed"] = !res.aborted && res.checks_passed();
  return res;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace

int run_experiment_to_directory(const std::string& experiment, const Config& user, const std::string& out_dir,
                                bool force, std::string* diagnostic) {
  namespace fs = std::filesystem;
  auto note = [&](const std::string& msg) {
    if (diagnostic) *diagnostic = msg;
  };
  std::optional<PreparedExperiment> prepared;
  try {
    prepared.emplace(experiment, user);
  } catch (const Error& e) {
    note(std::string("config error: ") + e.what());
    return kExitConfigError;
  }

  const fs::path dir(out_dir);
  std::error_code ec;
  if (fs::exists(dir, ec)) {
    if (!force) {
      note("output directory '" + out_dir + "' exists (use --force to replace it)");
      return kExitConfigError;
    }
    fs::remove_all(dir, ec);
    if (ec) {
      note("cannot remove '" + out_dir + "': " + ec.message());
      return kExitConfigError;
    }
  }
  if (!fs::create_directories(dir, ec) || ec) {
    note("cannot create output directory '" + out_dir + "'");
    return kExitConfigError;
  }
  write_file(dir / "resolved.cfg", prepared->config().serialize());

  ExperimentResult res;
  try {
    res = prepared->run();
  } catch (const Error& e) {
    json summary{{"experiment", experiment},
                 {"config", prepared->config().values()},
                 {"aborted", true},
                 {"abort_message", e.what()},
                 {"passed", false}};
    write_file(dir / "summary.json", summary.dump(2) + "\n");
    note(std::string("runtime abort: ") + e.what());
    return kExitRuntimeAbort;
  }
  write_file(dir / "series.csv", res.series.to_csv());
  write_file(dir / "summary.json", res.summary.dump(2) + "\n");
  if (res.aborted) {
    note("runtime abort: " + res.abort_message);
    return kExitRuntimeAbort;
  }
  if (!res.checks_passed()) {
    std::string failed;
    for (const auto& c : res.checks) {
      if (!c.passed) failed += (failed.empty() ? "" : ", ") + c.name;
    }
    note("checks failed: " + failed);
    return kExitCheckFailed;
  }
  note("ok");
  return kExitOk;
}

}  // namespace hypnls
