#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hypnls/field.hpp"
#include "hypnls/nls.hpp"

namespace hypnls {

/// Least-squares fit of log y = log prefactor + exponent log t.
struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double exponent_stderr = 0.0;
  double min_residual = 0.0;  // in log y
  double max_residual = 0.0;
  int points = 0;
};

PowerLawFit fit_power_law(std::span<const double> t, std::span<const double> y);

/// U(-t) f in the sine basis: v_hat_k exp(+i t mu_k).
SpectralField scattering_profile(const RadialField& f, double t);
/// || U(-T2) u(T2) - U(-T1) u(T1) ||_{L^2(dV)}.
double scattering_defect(const Trajectory& traj, double T1, double T2);

struct ScatteringReport {
  std::vector<double> probe_times;
  std::vector<std::vector<double>> defects;  // defects[a][b] = D(T_a, T_b)
  /// Fit of D(T_a, T_{a+1}) against T_a.
  PowerLawFit consecutive_fit;
  std::optional<SpectralField> u_plus;
};

ScatteringReport scattering_report(const Trajectory& traj, const std::vector<double>& probe_times);

/// <U(t) psi, |u|^{2 sigma} u(t)>_{L^2(dV)} = int U(t)psi * conj(|u|^{2 sigma} u) dV.
complex nonlinear_pairing(const Trajectory& traj, const RadialField& psi, double t);

/// (int ||w^{1-2/q} u(t)||_{L^q(dV)}^p dt)^{1/p} by the trapezoid rule over the snapshots in [t_from, t_to].
/// The weight is w_3 = sinh r / r on H^3 and 1 on R^3.
double spacetime_norm(const Trajectory& traj, double p, double q, bool weighted);
double spacetime_norm(const Trajectory& traj, double p, double q, bool weighted, double t_from, double t_to);
/// ||w^{1-2/q} f||_{L^q(dV)} (unweighted when weighted = false).
double lq_norm(const RadialField& f, double q, bool weighted);

inline constexpr int kMinSpacetimeSnapshots = 16;

enum class MomentumMethod {
  /// Angular integral in closed form; O(N^2).
  Exact,
  /// Gauss-Legendre in the direction cosine with graded panels near coincident points; O(64 N^2).
  Quadrature,
};

/// M_a = Im int int <grad a, grad U> conj(U) dV dV' with a the distance on H^3 x H^3 and U = u(x) u(y).
double interaction_momentum(const RadialField& f, MomentumMethod method = MomentumMethod::Exact);

struct MorawetzRecord {
  double T = 0.0;
  double lhs = 0.0;        // M_a(T) - M_a(t_begin)
  double rhs = 0.0;        // 2 int ||u||_{L^4}^4 dt
  double margin = 0.0;     // lhs - rhs
  double sharp_rhs = 0.0;  // 16 pi int ||u||_{L^4}^4 dt
  double sharp_margin = 0.0;
  double max_abs_momentum = 0.0;  // over the sampled snapshots in [t_begin, T]
  double sup_h1_norm = 0.0;       // sup ||u||_{H^1} over the same snapshots
  double momentum_ratio = 0.0;    // max |M_a| / sup ||u||_{H^1}^4
};

/// Integrated interaction Morawetz inequality up to T. M_a is sampled every `stride` snapshots
/// (and always at t_begin and T) for the max |M_a| report.
MorawetzRecord morawetz_check(const Trajectory& traj, double T, int stride = 1);
MorawetzRecord morawetz_check(const Trajectory& traj);

/// J(t) f with J = r + 2it d_r + 2it coth r, through (J f) m = 2it e^{ir^2/4t} d_r (e^{-ir^2/4t} f m).
RadialField galilean_apply(const RadialField& f, double t);

/// ||Jf||_{L^2(dV)}. Unlike f m, the reduced profile of Jf is even and nonzero at r = 0, so the
/// quadrature carries the endpoint node (extrapolated from the first two interior nodes).
double galilean_norm(const RadialField& Jf);

/// ||w^{1-2/q} f||_{L^q} |t|^{delta(q)} / (||f||^{1-delta(q)} ||Jf||^{delta(q)}), q in [2, 6).
double weighted_gn_ratio(const RadialField& f, const RadialField& Jf, double t, double q);

struct PseudoConformalRecord {
  double Q = 0.0;
  double RHS = 0.0;
};

/// Q = ||Jf||^2 + kappa 4t^2/(sigma+1) ||f||^{2 sigma+2}_{L^{2 sigma+2}},
/// RHS = kappa 4t/(sigma+1) int (2 - sigma - 2 sigma r coth r) |f|^{2 sigma+2} dV, so that dQ/dt = RHS.
PseudoConformalRecord pseudo_conformal(const RadialField& f, const RadialField& Jf, double t, double sigma,
                                       double kappa = 1.0);

}  // namespace hypnls
