#include "hypnls/diagnostics.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypnls/errors.hpp"
#include "hypnls/propagators.hpp"
#include "hypnls/spectral.hpp"

namespace hypnls {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * kPi;

double log_sinh(double x) { return log_reduction_weight(Geometry::Hyperbolic3, x); }

void require_hyperbolic(const RadialField& f, const char* what) {
  if (f.geometry() != Geometry::Hyperbolic3) throw UnsupportedError(std::string(what) + " is defined on H^3 only");
}

// 4 pi h sum |v_j|^q r_j^{2-q} (weighted) or |v_j|^q m_j^{2-q}: |w_3 u|^q w_3^{-2} sinh^2 r = |v|^q r^{2-q}.
double lq_power(const RadialField& f, double q, bool weighted) {
  const auto& grid = f.grid();
  const auto logm = f.discretization().log_weight();
  double sum = 0.0;
  for (int j = 0; j < f.size(); ++j) {
    const double a = std::abs(f.reduced()[j]);
    if (a == 0.0) continue;
    const double log_w = weighted ? std::log(grid.node(j)) : logm[j];
    sum += std::exp(q * std::log(a) + (2.0 - q) * log_w);
  }
  return kFourPi * grid.spacing() * sum;
}

}  // namespace

PowerLawFit fit_power_law(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) throw DomainError("fit_power_law: size mismatch");
  if (t.size() < 2) throw DegenerateInputError("fit_power_law needs at least two points");
  const std::size_t n = t.size();
  std::vector<double> x(n), z(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(t[i] > 0.0) || !(y[i] > 0.0)) throw DegenerateInputError("fit_power_law needs positive data");
    x[i] = std::log(t[i]);
    z[i] = std::log(y[i]);
  }
  double mx = 0.0, mz = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    mz += z[i];
  }
  mx /= n;
  mz /= n;
  double sxx = 0.0, sxz = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxz += (x[i] - mx) * (z[i] - mz);
  }
  if (sxx == 0.0) throw DegenerateInputError("fit_power_law needs distinct abscissae");
  PowerLawFit fit;
  fit.exponent = sxz / sxx;
  const double intercept = mz - fit.exponent * mx;
  fit.prefactor = std::exp(intercept);
  fit.points = static_cast<int>(n);
  double ss = 0.0;
  fit.min_residual = std::numeric_limits<double>::infinity();
  fit.max_residual = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double r = z[i] - (intercept + fit.exponent * x[i]);
    ss += r * r;
    fit.min_residual = std::min(fit.min_residual, r);
    fit.max_residual = std::max(fit.max_residual, r);
  }
  fit.exponent_stderr = n > 2 ? std::sqrt(ss / (n - 2) / sxx) : 0.0;
  return fit;
}

SpectralField scattering_profile(const RadialField& f, double t) { return free_evolve(forward_transform(f), -t); }

double scattering_defect(const Trajectory& traj, double T1, double T2) {
  const auto& f1 = traj.at(T1);
  const auto& f2 = traj.at(T2);
  if (T1 == T2) return 0.0;
  return (scattering_profile(f2, T2) - scattering_profile(f1, T1)).l2_norm();
}

ScatteringReport scattering_report(const Trajectory& traj, const std::vector<double>& probe_times) {
  ScatteringReport report;
  report.probe_times = probe_times;
  const std::size_t n = probe_times.size();
  std::vector<SpectralField> profiles;
  profiles.reserve(n);
  for (double t : probe_times) profiles.push_back(scattering_profile(traj.at(t), t));
  report.defects.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double d = (profiles[b] - profiles[a]).l2_norm();
      report.defects[a][b] = d;
      report.defects[b][a] = d;
    }
  }
  std::vector<double> ts, ds;
  for (std::size_t a = 0; a + 1 < n; ++a) {
    if (probe_times[a] > 0.0 && report.defects[a][a + 1] > 0.0) {
      ts.push_back(probe_times[a]);
      ds.push_back(report.defects[a][a + 1]);
    }
  }
  if (ts.size() >= 2) report.consecutive_fit = fit_power_law(ts, ds);
  if (n > 0) report.u_plus = profiles.back();
  return report;
}

complex nonlinear_pairing(const Trajectory& traj, const RadialField& psi, double t) {
  const auto& u = traj.at(t);
  u.check_compatible(psi);
  const double sigma = traj.config().sigma;
  const auto evolved = free_evolve(psi, t);
  const auto inv = u.discretization().inverse_weight();
  complex sum = 0.0;
  for (int j = 0; j < u.size(); ++j) {
    const complex v = u.reduced()[j];
    const double a = std::abs(v) * inv[j];
    if (a == 0.0) continue;
    sum += evolved.reduced()[j] * std::conj(std::pow(a, 2.0 * sigma) * v);
  }
  return kFourPi * u.grid().spacing() * sum;
}

double lq_norm(const RadialField& f, double q, bool weighted) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("lq_norm needs finite q >= 1");
  return std::pow(lq_power(f, q, weighted), 1.0 / q);
}

double spacetime_norm(const Trajectory& traj, double p, double q, bool weighted, double t_from, double t_to) {
  if (!(p >= 1.0) || !std::isfinite(p) || !(q >= 1.0) || !std::isfinite(q)) {
    throw DomainError("spacetime_norm needs finite p, q >= 1");
  }
  const auto& times = traj.times();
  std::vector<std::size_t> idx;
  const double slack = 1e-9 * traj.config().dt;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= t_from - slack && times[i] <= t_to + slack) idx.push_back(i);
  }
  if (idx.size() < static_cast<std::size_t>(kMinSpacetimeSnapshots)) {
    throw ResolutionError("spacetime_norm needs at least 16 snapshots in the window, got " +
                          std::to_string(idx.size()));
  }
  double integral = 0.0;
  double prev = std::pow(lq_power(traj.fields()[idx[0]], q, weighted), p / q);
  for (std::size_t k = 1; k < idx.size(); ++k) {
    const double cur = std::pow(lq_power(traj.fields()[idx[k]], q, weighted), p / q);
    integral += 0.5 * (times[idx[k]] - times[idx[k - 1]]) * (prev + cur);
    prev = cur;
  }
  return std::pow(integral, 1.0 / p);
}

double spacetime_norm(const Trajectory& traj, double p, double q, bool weighted) {
  if (traj.empty()) throw ResolutionError("spacetime_norm of an empty trajectory");
  return spacetime_norm(traj, p, q, weighted, traj.times().front(), traj.times().back());
}

// ---------------------------------------------------------------------------------------------
// Interaction momentum

namespace {

// Phi(y) = y cosh y - sinh y, in the log domain; Phi(y) ~ y^3/3 near 0.
double log_phi(double y) {
  if (y < 0.1) {
    const double y2 = y * y;
    return std::log(y * y2 / 3.0 * (1.0 + y2 / 10.0 * (1.0 + y2 / 28.0)));
  }
  if (y < 30.0) return std::log(y * std::cosh(y) - std::sinh(y));
  return y + std::log(0.5 * (y - 1.0));
}

struct NodeTables {
  std::vector<double> r, coth, log_sinh;
  std::vector<double> log_sinh_gap, log_phi_gap;  // indexed by |i - j|
};

NodeTables node_tables(const RadialGrid& grid) {
  const int n = grid.size();
  NodeTables t;
  t.r.resize(n);
  t.coth.resize(n);
  t.log_sinh.resize(n);
  t.log_sinh_gap.resize(n);
  t.log_phi_gap.resize(n);
  for (int j = 0; j < n; ++j) {
    const double r = grid.node(j);
    t.r[j] = r;
    t.coth[j] = 1.0 / std::tanh(r);
    t.log_sinh[j] = log_sinh(r);
  }
  t.log_sinh_gap[0] = -std::numeric_limits<double>::infinity();
  t.log_phi_gap[0] = -std::numeric_limits<double>::infinity();
  for (int d = 1; d < n; ++d) {
    t.log_sinh_gap[d] = log_sinh(d * grid.spacing());
    t.log_phi_gap[d] = log_phi(d * grid.spacing());
  }
  return t;
}

// d/dr of G(r, r') = int_{-1}^{1} d(r, r', x) dx = [Phi(r + r') - Phi(|r - r'|)] / (sinh r sinh r').
// With sinh(r+r')/(sinh r sinh r') = coth r + coth r' and cosh(r+r')/(...) = 1 + coth r coth r',
// nothing here overflows.
double dG_dr(const NodeTables& t, int i, int j) {
  const double r = t.r[i];
  const double s = t.r[j];
  const double ci = t.coth[i];
  const double cj = t.coth[j];
  const int gap = std::abs(i - j);
  const double log_s = t.log_sinh[i] + t.log_sinh[j];
  const double phi_gap = gap == 0 ? 0.0 : std::exp(t.log_phi_gap[gap] - log_s);
  const double sinh_gap = gap == 0 ? 0.0 : std::exp(t.log_sinh_gap[gap] - log_s);
  const double G = (r + s) * (1.0 + ci * cj) - (ci + cj) - phi_gap;
  return (r + s) * (ci + cj) - (r - s) * sinh_gap - G * ci;
}

// d_r a = (sinh r cosh r' - cosh r sinh r' x) / sinh a, with every factor scaled by e^{-(r+r')}.
double dr_distance(double r, double s, double x) {
  const double a = hyperbolic_distance(r, s, x);
  if (a == 0.0) return 0.0;
  const double er = std::exp(-2.0 * r);
  const double es = std::exp(-2.0 * s);
  const double num = 0.25 * ((1.0 - er) * (1.0 + es) - (1.0 + er) * (1.0 - es) * x);
  return num / std::exp(log_sinh(a) - r - s);
}

double angular_integral_quadrature(double r, double s) {
  using G = boost::math::quadrature::gauss<double, 64>;
  auto f = [&](double x) { return dr_distance(r, s, x); };
  const double gap = std::abs(r - s);
  // The integrand turns over on the scale 1 - x ~ gap^2 / (sinh r sinh s) near x = 1.
  const double scale = gap * gap / std::max(std::sinh(r) * std::sinh(s), 1e-300);
  if (scale > 0.5) return G::integrate(f, -1.0, 1.0);
  double total = G::integrate(f, -1.0, 0.5);
  double lo = 0.5;
  const double floor = std::max(0.25 * scale, 1e-14);
  for (double width = 0.25; width > floor; width *= 0.25) {
    total += G::integrate(f, lo, 1.0 - width);
    lo = 1.0 - width;
  }
  total += G::integrate(f, lo, 1.0);
  return total;
}

}  // namespace

double interaction_momentum(const RadialField& f, MomentumMethod method) {
  require_hyperbolic(f, "interaction_momentum");
  const int n = f.size();
  const auto v = f.reduced();
  const auto dv = reduced_derivative(f);
  std::vector<double> current(n), density(n);
  double dmax = 0.0, cmax = 0.0;
  for (int j = 0; j < n; ++j) {
    current[j] = std::imag(dv[j] * std::conj(v[j]));
    density[j] = std::norm(v[j]);
    dmax = std::max(dmax, density[j]);
    cmax = std::max(cmax, std::abs(current[j]));
  }
  if (dmax == 0.0 || cmax == 0.0) return 0.0;
  // Nodes whose contribution is below roundoff of the largest term are skipped.
  std::vector<int> active_i, active_j;
  for (int j = 0; j < n; ++j) {
    if (density[j] > 1e-32 * dmax) active_i.push_back(j);
    if (std::abs(current[j]) > 1e-32 * cmax) active_j.push_back(j);
  }
  const auto& grid = f.grid();
  const double h = grid.spacing();
  double total = 0.0;
  if (method == MomentumMethod::Exact) {
    const auto tables = node_tables(grid);
    for (int j : active_j) {
      double inner = 0.0;
      for (int i : active_i) inner += dG_dr(tables, j, i) * density[i];
      total += current[j] * inner;
    }
  } else {
    for (int j : active_j) {
      double inner = 0.0;
      for (int i : active_i) inner += angular_integral_quadrature(grid.node(j), grid.node(i)) * density[i];
      total += current[j] * inner;
    }
  }
  // 2 (symmetry) * 8 pi^2 (angular reduction)
  return 16.0 * kPi * kPi * h * h * total;
}

MorawetzRecord morawetz_check(const Trajectory& traj, double T, int stride) {
  if (traj.empty()) throw LookupError("morawetz_check on an empty trajectory");
  if (traj.geometry() != Geometry::Hyperbolic3) throw UnsupportedError("morawetz_check is defined on H^3 only");
  if (stride < 1) throw DomainError("stride must be positive");
  const std::size_t last = traj.index_of(T);
  MorawetzRecord rec;
  rec.T = T;
  const double t0 = traj.times().front();
  const double m0 = interaction_momentum(traj.fields().front());
  const double mT = last == 0 ? m0 : interaction_momentum(traj.fields()[last]);
  rec.lhs = mT - m0;
  double l4 = 0.0;
  if (last > 0) {
    const double norm = spacetime_norm(traj, 4.0, 4.0, false, t0, T);
    l4 = std::pow(norm, 4.0);
  }
  rec.rhs = 2.0 * l4;
  rec.margin = rec.lhs - rec.rhs;
  rec.sharp_rhs = 16.0 * kPi * l4;
  rec.sharp_margin = rec.lhs - rec.sharp_rhs;
  rec.max_abs_momentum = std::max(std::abs(m0), std::abs(mT));
  for (std::size_t i = 0; i <= last; ++i) rec.sup_h1_norm = std::max(rec.sup_h1_norm, sobolev_norm(traj.fields()[i], 1.0));
  for (std::size_t i = stride; i < last; i += stride) {
    rec.max_abs_momentum = std::max(rec.max_abs_momentum, std::abs(interaction_momentum(traj.fields()[i])));
  }
  const double h1_4 = std::pow(rec.sup_h1_norm, 4.0);
  rec.momentum_ratio = h1_4 > 0.0 ? rec.max_abs_momentum / h1_4 : 0.0;
  return rec;
}

MorawetzRecord morawetz_check(const Trajectory& traj) {
  if (traj.empty()) throw LookupError("morawetz_check on an empty trajectory");
  return morawetz_check(traj, traj.times().back());
}

// ---------------------------------------------------------------------------------------------

RadialField galilean_apply(const RadialField& f, double t) {
  if (!std::isfinite(t)) throw DomainError("time must be finite");
  const auto& grid = f.grid();
  const int n = f.size();
  std::vector<complex> out(n);
  if (t == 0.0) {
    for (int j = 0; j < n; ++j) out[j] = grid.node(j) * f.reduced()[j];
    return RadialField(f.shared_discretization(), std::move(out));
  }
  std::vector<complex> w(n);
  for (int j = 0; j < n; ++j) {
    const double r = grid.node(j);
    w[j] = std::polar(1.0, -r * r / (4.0 * t)) * f.reduced()[j];
  }
  const auto dw = reduced_derivative(f.discretization(), w);
  for (int j = 0; j < n; ++j) {
    const double r = grid.node(j);
    out[j] = complex(0.0, 2.0 * t) * std::polar(1.0, r * r / (4.0 * t)) * dw[j];
  }
  return RadialField(f.shared_discretization(), std::move(out));
}

double galilean_norm(const RadialField& Jf) {
  const auto w = Jf.reduced();
  if (w.size() < 2) return std::sqrt(mass(Jf));
  // Jf m is even in r, so w(0) = (4 w(h) - w(2h)) / 3 + O(h^4); the trapezoid needs its half weight.
  const complex w0 = (4.0 * w[0] - w[1]) / 3.0;
  return std::sqrt(mass(Jf) + 0.5 * kFourPi * Jf.grid().spacing() * std::norm(w0));
}

double weighted_gn_ratio(const RadialField& f, const RadialField& Jf, double t, double q) {
  if (!(q >= 2.0 && q < 6.0)) throw DomainError("weighted_gn_ratio needs q in [2, 6)");
  if (t == 0.0 || !std::isfinite(t)) throw DomainError("weighted_gn_ratio needs finite t != 0");
  f.check_compatible(Jf);
  const double delta = dispersive_exponent(q);
  const double nf = std::sqrt(mass(f));
  const double nj = galilean_norm(Jf);
  if (nf == 0.0 || (delta > 0.0 && nj == 0.0)) throw DegenerateInputError("weighted_gn_ratio: zero norm");
  const double lhs = q == 2.0 ? nf : lq_norm(f, q, true);
  return lhs * std::pow(std::abs(t), delta) / (std::pow(nf, 1.0 - delta) * std::pow(nj, delta));
}

PseudoConformalRecord pseudo_conformal(const RadialField& f, const RadialField& Jf, double t, double sigma,
                                       double kappa) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  f.check_compatible(Jf);
  const auto& grid = f.grid();
  const auto inv = f.discretization().inverse_weight();
  const bool hyperbolic = f.geometry() == Geometry::Hyperbolic3;
  double pot = 0.0, weighted = 0.0;
  for (int j = 0; j < f.size(); ++j) {
    const complex v = f.reduced()[j];
    const double a = std::abs(v) * inv[j];
    if (a == 0.0) continue;
    const double term = std::norm(v) * std::pow(a, 2.0 * sigma);
    const double rc = hyperbolic ? r_coth(grid.node(j)) : 1.0;
    pot += term;
    weighted += (2.0 - sigma - 2.0 * sigma * rc) * term;
  }
  const double scale = kFourPi * grid.spacing() / (sigma + 1.0);
  PseudoConformalRecord rec;
  const double nj = galilean_norm(Jf);
  rec.Q = nj * nj + kappa * 4.0 * t * t * scale * pot;
  rec.RHS = kappa * 4.0 * t * scale * weighted;
  return rec;
}

}  // namespace hypnls
