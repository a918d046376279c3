#pragma once

#include <complex>
#include <span>

#include "hypnls/field.hpp"

namespace hypnls {

/// Exact free flow: v_hat_k -> exp(-i t mu_k) v_hat_k with mu_k the Laplacian eigenvalue.
RadialField free_evolve(const RadialField& f, double t);
SpectralField free_evolve(const SpectralField& F, double t);
/// In-place multiplier on sine coefficients.
void apply_free_multiplier(const Discretization& disc, std::span<complex> coeffs, double t);

/// Direct evaluation of the explicit radial kernel on H^3 by trapezoid quadrature on the field's
/// own grid. O(N^2); intended as an independent check of free_evolve.
RadialField free_evolve_kernel(const RadialField& f, double t);

struct AsymptoticProfile {
  RadialField field;
  /// Fraction of spectral mass at frequencies the profile cannot place on [0, R] at time t.
  double uncovered_fraction = 0.0;
  bool coverage_warning = false;
};

/// Large-time profile c exp(-it + i r^2/4t) t^{-3/2} (r / sinh r) f0_hat(r / 2t), c = 2^{-3/2} e^{-3i pi/4}.
AsymptoticProfile asymptotic_profile(const RadialField& f0, double t);

inline constexpr double kCoverageWarningFraction = 1e-6;

struct H2KernelOptions {
  double tolerance = 1e-6;
  int min_level = 0;
  int max_level = 7;
};

/// int_rho^inf s exp(i s^2 / 4t) / sqrt(cosh s - cosh rho) ds.
std::complex<double> h2_kernel_integral(double rho, double t, const H2KernelOptions& options = {});
/// Same integral at a fixed refinement level (each panel split into 2^level pieces).
std::complex<double> h2_kernel_integral_at_level(double rho, double t, int level);
/// Modulus majorant int_rho^inf s / sqrt(cosh s - cosh rho) ds.
double h2_kernel_majorant(double rho, int level = 1);
/// (rho / sinh rho)^{1/2} (1 + rho)^{1/2}.
double h2_kernel_bound(double rho);

}  // namespace hypnls
