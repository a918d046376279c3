#pragma once

#include <memory>
#include <span>
#include <vector>

#include "hypnls/field.hpp"

struct fftw_plan_s;

namespace hypnls {

/// Orthonormal DST-I on the N-1 interior nodes of an N-interval grid, plus the matching
/// cosine synthesis used for spectral derivatives. Plans are cached per N and immutable;
/// apply() is safe to call concurrently.
class SineTransform {
 public:
  static std::shared_ptr<const SineTransform> get(int intervals);

  explicit SineTransform(int intervals);
  ~SineTransform();
  SineTransform(const SineTransform&) = delete;
  SineTransform& operator=(const SineTransform&) = delete;

  int intervals() const noexcept { return intervals_; }
  int size() const noexcept { return intervals_ - 1; }

  /// out_k = sqrt(2/N) sum_j in_j sin(pi j k / N). The transform is its own inverse.
  /// `in` and `out` must not alias.
  void apply(std::span<const complex> in, std::span<complex> out) const;
  void apply_in_place(std::span<complex> data) const;
  /// 2 sum_j in_j sin(pi j k / N); applied twice it returns 2N times the input. Repeated
  /// round trips through apply() pick up the rounding of sqrt(2N) every time.
  void apply_unnormalized(std::span<const complex> in, std::span<complex> out) const;

  /// out_j = sqrt(2/N) sum_k coeffs_k cos(pi j k / N) for j = 0..N (N+1 outputs).
  void cosine_synthesis(std::span<const complex> coeffs, std::span<complex> out) const;

 private:
  int intervals_;
  fftw_plan_s* sine_plan_ = nullptr;
  fftw_plan_s* sine_plan_in_place_ = nullptr;
  fftw_plan_s* cosine_plan_ = nullptr;
  double scale_;
};

/// The same DST-I in long double, unnormalised. Used by the time stepper when the rounding bias
/// of the double transform (about one unit roundoff of mass per round trip) matters.
class ExtendedSineTransform {
 public:
  using value_type = std::complex<long double>;

  static std::shared_ptr<const ExtendedSineTransform> get(int intervals);

  explicit ExtendedSineTransform(int intervals);
  ~ExtendedSineTransform();
  ExtendedSineTransform(const ExtendedSineTransform&) = delete;
  ExtendedSineTransform& operator=(const ExtendedSineTransform&) = delete;

  int size() const noexcept { return intervals_ - 1; }
  /// out_k = 2 sum_j in_j sin(pi j k / N).
  void apply_unnormalized(std::span<const value_type> in, std::span<value_type> out) const;

 private:
  int intervals_;
  void* plan_ = nullptr;
};

SpectralField forward_transform(const RadialField& f);
RadialField inverse_transform(const SpectralField& F);

/// (4 pi sum_k mu_k^s |v_hat_k|^2 h)^{1/2} with mu_k = 1 + lambda_k^2, for s in [-2, 3].
double sobolev_norm(const SpectralField& F, double s);
double sobolev_norm(const RadialField& f, double s);

/// Samples of the continuum radial transform f_hat(lambda_k) = sqrt(2/pi) / lambda_k
/// int sin(lambda_k r) f(r) m(r) dr, recovered from the discrete coefficients.
std::vector<complex> continuum_transform(const SpectralField& F);
/// The lambda -> 0 limit sqrt(2/pi) int r f(r) m(r) dr.
complex continuum_transform_at_zero(const RadialField& f);

/// dv/dr at the interior nodes, differentiated in the sine basis.
std::vector<complex> reduced_derivative(const RadialField& f);
/// d/dr of an arbitrary reduced profile given on the interior nodes (Dirichlet at both ends).
std::vector<complex> reduced_derivative(const Discretization& disc, std::span<const complex> reduced);

}  // namespace hypnls
