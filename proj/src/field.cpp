#include "hypnls/field.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hypnls/errors.hpp"
#include "hypnls/spectral.hpp"

namespace hypnls {

Discretization::Discretization(const RadialGrid& grid, Geometry geometry)
    : grid_(grid), geometry_(geometry), transform_(SineTransform::get(grid.intervals())) {
  const int n = grid_.size();
  log_weight_.resize(n);
  inverse_weight_.resize(n);
  eigenvalues_.resize(n);
  const double shift = geometry_ == Geometry::Hyperbolic3 ? 1.0 : 0.0;
  for (int i = 0; i < n; ++i) {
    log_weight_[i] = log_reduction_weight(geometry_, grid_.node(i));
    inverse_weight_[i] = std::exp(-log_weight_[i]);
    const double lam = grid_.frequency(i);
    eigenvalues_[i] = shift + lam * lam;
  }
}

std::shared_ptr<const Discretization> Discretization::make(const RadialGrid& grid, Geometry geometry) {
  return std::make_shared<const Discretization>(grid, geometry);
}

RadialField::RadialField(DiscretizationPtr disc, std::vector<complex> reduced)
    : disc_(std::move(disc)), reduced_(std::move(reduced)) {
  if (!disc_) throw DomainError("RadialField needs a discretization");
  if (static_cast<int>(reduced_.size()) != disc_->size()) {
    throw DomainError("RadialField size " + std::to_string(reduced_.size()) + " does not match grid size " +
                      std::to_string(disc_->size()));
  }
}

RadialField RadialField::zeros(DiscretizationPtr disc) {
  const int n = disc->size();
  return RadialField(std::move(disc), std::vector<complex>(n));
}

RadialField RadialField::from_values(DiscretizationPtr disc, std::span<const complex> values) {
  if (static_cast<int>(values.size()) != disc->size()) throw DomainError("value count does not match grid");
  std::vector<complex> v(values.size());
  const auto logm = disc->log_weight();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double a = std::abs(values[i]);
    if (a == 0.0) continue;
    if (!std::isfinite(a)) throw DomainError("field values must be finite");
    v[i] = values[i] / a * std::exp(std::log(a) + logm[i]);
  }
  return RadialField(std::move(disc), std::move(v));
}

RadialField RadialField::from_log_profile(DiscretizationPtr disc, const std::function<double(double)>& log_modulus,
                                          const std::function<double(double)>& phase) {
  const int n = disc->size();
  std::vector<complex> v(n);
  const auto logm = disc->log_weight();
  for (int i = 0; i < n; ++i) {
    const double r = disc->grid().node(i);
    const double lm = log_modulus(r);
    if (lm == -std::numeric_limits<double>::infinity()) continue;
    v[i] = std::polar(std::exp(lm + logm[i]), phase(r));
  }
  return RadialField(std::move(disc), std::move(v));
}

RadialField RadialField::sample(DiscretizationPtr disc, const std::function<complex(double)>& u) {
  const int n = disc->size();
  std::vector<complex> values(n);
  for (int i = 0; i < n; ++i) values[i] = u(disc->grid().node(i));
  return from_values(std::move(disc), values);
}

std::vector<complex> RadialField::values() const {
  std::vector<complex> out(reduced_.size());
  const auto inv = disc_->inverse_weight();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = reduced_[i] * inv[i];
  return out;
}

RadialField RadialField::conj() const {
  RadialField out = *this;
  for (auto& z : out.reduced_) z = std::conj(z);
  return out;
}

RadialField& RadialField::operator*=(complex scale) {
  for (auto& z : reduced_) z *= scale;
  return *this;
}

void RadialField::check_compatible(const RadialField& other) const {
  if (!disc_->same_as(*other.disc_)) throw DomainError("fields live on different grids or geometries");
}

RadialField& RadialField::operator+=(const RadialField& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < reduced_.size(); ++i) reduced_[i] += other.reduced_[i];
  return *this;
}

RadialField& RadialField::operator-=(const RadialField& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < reduced_.size(); ++i) reduced_[i] -= other.reduced_[i];
  return *this;
}

SpectralField::SpectralField(DiscretizationPtr disc, std::vector<complex> coeffs)
    : disc_(std::move(disc)), coeffs_(std::move(coeffs)) {
  if (!disc_) throw DomainError("SpectralField needs a discretization");
  if (static_cast<int>(coeffs_.size()) != disc_->size()) throw DomainError("coefficient count does not match grid");
}

SpectralField SpectralField::zeros(DiscretizationPtr disc) {
  const int n = disc->size();
  return SpectralField(std::move(disc), std::vector<complex>(n));
}

double SpectralField::l2_norm() const {
  double sum = 0.0;
  for (const auto& c : coeffs_) sum += std::norm(c);
  return std::sqrt(4.0 * std::numbers::pi * grid().spacing() * sum);
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (!disc_->same_as(*other.disc_)) throw DomainError("spectra live on different grids or geometries");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

}  // namespace hypnls
