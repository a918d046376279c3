#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "hypnls/geometry.hpp"

namespace hypnls {

using complex = std::complex<double>;

class SineTransform;

/// A grid bound to a geometry, with the per-node tables every field operation needs.
/// Shared (immutable) between all fields living on it.
class Discretization {
 public:
  static std::shared_ptr<const Discretization> make(const RadialGrid& grid, Geometry geometry);

  const RadialGrid& grid() const noexcept { return grid_; }
  Geometry geometry() const noexcept { return geometry_; }
  int size() const noexcept { return grid_.size(); }

  /// log m(r_j).
  std::span<const double> log_weight() const noexcept { return log_weight_; }
  /// 1 / m(r_j); underflows to zero far out on H^3.
  std::span<const double> inverse_weight() const noexcept { return inverse_weight_; }
  /// Spectrum of -Delta on the sine modes: 1 + lambda_k^2 on H^3, lambda_k^2 on R^3.
  std::span<const double> laplacian_eigenvalues() const noexcept { return eigenvalues_; }
  const SineTransform& transform() const noexcept { return *transform_; }

  bool same_as(const Discretization& other) const noexcept {
    return this == &other || (grid_ == other.grid_ && geometry_ == other.geometry_);
  }

  Discretization(const RadialGrid& grid, Geometry geometry);

 private:
  RadialGrid grid_;
  Geometry geometry_;
  std::vector<double> log_weight_;
  std::vector<double> inverse_weight_;
  std::vector<double> eigenvalues_;
  std::shared_ptr<const SineTransform> transform_;
};

using DiscretizationPtr = std::shared_ptr<const Discretization>;

/// Complex radial function u(r) sampled on the interior nodes.
///
/// Storage is the reduced profile v_j = u(r_j) m(r_j): on H^3 it stays O(1) where u itself
/// underflows (r beyond ~700), and it is the variable in which the Laplacian is diagonal.
class RadialField {
 public:
  RadialField(DiscretizationPtr disc, std::vector<complex> reduced);

  static RadialField zeros(DiscretizationPtr disc);
  /// From samples u(r_j).
  static RadialField from_values(DiscretizationPtr disc, std::span<const complex> values);
  /// From u(r) = exp(log_modulus(r) + i phase(r)); the weight is folded in logarithmically.
  static RadialField from_log_profile(DiscretizationPtr disc, const std::function<double(double)>& log_modulus,
                                      const std::function<double(double)>& phase);
  static RadialField sample(DiscretizationPtr disc, const std::function<complex(double)>& u);

  const Discretization& discretization() const noexcept { return *disc_; }
  const DiscretizationPtr& shared_discretization() const noexcept { return disc_; }
  const RadialGrid& grid() const noexcept { return disc_->grid(); }
  Geometry geometry() const noexcept { return disc_->geometry(); }
  int size() const noexcept { return static_cast<int>(reduced_.size()); }

  std::span<const complex> reduced() const noexcept { return reduced_; }
  std::span<complex> reduced_mut() noexcept { return reduced_; }

  /// u(r_j).
  complex value(int index) const noexcept { return reduced_[index] * disc_->inverse_weight()[index]; }
  std::vector<complex> values() const;

  RadialField conj() const;
  RadialField& operator*=(complex scale);
  RadialField& operator+=(const RadialField& other);
  RadialField& operator-=(const RadialField& other);
  friend RadialField operator*(complex scale, RadialField f) { return f *= scale; }
  friend RadialField operator+(RadialField a, const RadialField& b) { return a += b; }
  friend RadialField operator-(RadialField a, const RadialField& b) { return a -= b; }

  void check_compatible(const RadialField& other) const;

 private:
  DiscretizationPtr disc_;
  std::vector<complex> reduced_;
};

/// Coefficients of v = u m in the orthonormal sine basis sqrt(2/N) sin(pi j k / N).
class SpectralField {
 public:
  SpectralField(DiscretizationPtr disc, std::vector<complex> coeffs);

  static SpectralField zeros(DiscretizationPtr disc);

  const Discretization& discretization() const noexcept { return *disc_; }
  const DiscretizationPtr& shared_discretization() const noexcept { return disc_; }
  const RadialGrid& grid() const noexcept { return disc_->grid(); }
  Geometry geometry() const noexcept { return disc_->geometry(); }
  int size() const noexcept { return static_cast<int>(coeffs_.size()); }

  std::span<const complex> coeffs() const noexcept { return coeffs_; }
  std::span<complex> coeffs_mut() noexcept { return coeffs_; }

  /// L^2(dV) norm including the 4 pi of the sphere; equals the norm of the dual RadialField.
  double l2_norm() const;

  SpectralField& operator-=(const SpectralField& other);
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }

 private:
  DiscretizationPtr disc_;
  std::vector<complex> coeffs_;
};

}  // namespace hypnls
