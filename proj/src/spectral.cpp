#include "hypnls/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "hypnls/errors.hpp"

namespace hypnls {

namespace {

// FFTW's planner is not thread-safe; execution of an existing plan on new arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

constexpr unsigned kPlanFlags = FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT;

// Real and imaginary parts of interleaved complex data as two strided real transforms.
fftw_plan plan_pair(int n, fftw_r2r_kind kind, double* in, double* out) {
  return fftw_plan_many_r2r(1, &n, 2, in, nullptr, 2, 1, out, nullptr, 2, 1, &kind, kPlanFlags);
}

double* as_doubles(complex* p) { return reinterpret_cast<double*>(p); }
double* as_doubles(const complex* p) { return const_cast<double*>(reinterpret_cast<const double*>(p)); }

}  // namespace

SineTransform::SineTransform(int intervals) : intervals_(intervals) {
  if (intervals < 2) throw DomainError("sine transform needs at least 2 intervals");
  const int n = intervals - 1;
  std::vector<complex> a(intervals + 1), b(intervals + 1);
  std::lock_guard lock(planner_mutex());
  sine_plan_ = plan_pair(n, FFTW_RODFT00, as_doubles(a.data()), as_doubles(b.data()));
  sine_plan_in_place_ = plan_pair(n, FFTW_RODFT00, as_doubles(a.data()), as_doubles(a.data()));
  cosine_plan_ = plan_pair(intervals + 1, FFTW_REDFT00, as_doubles(a.data()), as_doubles(b.data()));
  if (!sine_plan_ || !sine_plan_in_place_ || !cosine_plan_) throw Error("FFTW planning failed");
  // RODFT00 and REDFT00 both carry a factor 2 relative to the orthonormal sqrt(2/N) basis.
  scale_ = 1.0 / std::sqrt(2.0 * intervals);
}

SineTransform::~SineTransform() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(sine_plan_);
  fftw_destroy_plan(sine_plan_in_place_);
  fftw_destroy_plan(cosine_plan_);
}

std::shared_ptr<const SineTransform> SineTransform::get(int intervals) {
  static std::mutex cache_mutex;
  static std::map<int, std::weak_ptr<const SineTransform>> cache;
  std::lock_guard lock(cache_mutex);
  auto& slot = cache[intervals];
  if (auto existing = slot.lock()) return existing;
  auto created = std::make_shared<const SineTransform>(intervals);
  slot = created;
  return created;
}

void SineTransform::apply(std::span<const complex> in, std::span<complex> out) const {
  if (static_cast<int>(in.size()) != size() || static_cast<int>(out.size()) != size()) {
    throw DomainError("sine transform length mismatch");
  }
  fftw_execute_r2r(sine_plan_, as_doubles(in.data()), as_doubles(out.data()));
  for (auto& z : out) z *= scale_;
}

void SineTransform::apply_unnormalized(std::span<const complex> in, std::span<complex> out) const {
  if (static_cast<int>(in.size()) != size() || static_cast<int>(out.size()) != size()) {
    throw DomainError("sine transform length mismatch");
  }
  fftw_execute_r2r(sine_plan_, as_doubles(in.data()), as_doubles(out.data()));
}

void SineTransform::apply_in_place(std::span<complex> data) const {
  if (static_cast<int>(data.size()) != size()) throw DomainError("sine transform length mismatch");
  fftw_execute_r2r(sine_plan_in_place_, as_doubles(data.data()), as_doubles(data.data()));
  for (auto& z : data) z *= scale_;
}

void SineTransform::cosine_synthesis(std::span<const complex> coeffs, std::span<complex> out) const {
  if (static_cast<int>(coeffs.size()) != size() || static_cast<int>(out.size()) != intervals_ + 1) {
    throw DomainError("cosine synthesis length mismatch");
  }
  std::vector<complex> padded(intervals_ + 1);
  std::copy(coeffs.begin(), coeffs.end(), padded.begin() + 1);
  fftw_execute_r2r(cosine_plan_, as_doubles(padded.data()), as_doubles(out.data()));
  for (auto& z : out) z *= scale_;
}

ExtendedSineTransform::ExtendedSineTransform(int intervals) : intervals_(intervals) {
  if (intervals < 2) throw DomainError("sine transform needs at least 2 intervals");
  int n = intervals - 1;
  std::vector<value_type> a(n), b(n);
  fftwl_r2r_kind kind = FFTW_RODFT00;
  auto* in = reinterpret_cast<long double*>(a.data());
  auto* out = reinterpret_cast<long double*>(b.data());
  std::lock_guard lock(planner_mutex());
  plan_ = fftwl_plan_many_r2r(1, &n, 2, in, nullptr, 2, 1, out, nullptr, 2, 1, &kind, kPlanFlags);
  if (!plan_) throw Error("FFTW planning failed");
}

ExtendedSineTransform::~ExtendedSineTransform() {
  std::lock_guard lock(planner_mutex());
  fftwl_destroy_plan(static_cast<fftwl_plan>(plan_));
}

std::shared_ptr<const ExtendedSineTransform> ExtendedSineTransform::get(int intervals) {
  static std::mutex cache_mutex;
  static std::map<int, std::weak_ptr<const ExtendedSineTransform>> cache;
  std::lock_guard lock(cache_mutex);
  auto& slot = cache[intervals];
  if (auto existing = slot.lock()) return existing;
  auto created = std::make_shared<const ExtendedSineTransform>(intervals);
  slot = created;
  return created;
}

void ExtendedSineTransform::apply_unnormalized(std::span<const value_type> in, std::span<value_type> out) const {
  if (static_cast<int>(in.size()) != size() || static_cast<int>(out.size()) != size()) {
    throw DomainError("sine transform length mismatch");
  }
  fftwl_execute_r2r(static_cast<fftwl_plan>(plan_), const_cast<long double*>(reinterpret_cast<const long double*>(in.data())),
                    reinterpret_cast<long double*>(out.data()));
}

SpectralField forward_transform(const RadialField& f) {
  std::vector<complex> coeffs(f.size());
  f.discretization().transform().apply(f.reduced(), coeffs);
  return SpectralField(f.shared_discretization(), std::move(coeffs));
}

RadialField inverse_transform(const SpectralField& F) {
  std::vector<complex> v(F.size());
  F.discretization().transform().apply(F.coeffs(), v);
  return RadialField(F.shared_discretization(), std::move(v));
}

double sobolev_norm(const SpectralField& F, double s) {
  if (!(s >= -2.0 && s <= 3.0)) throw UnsupportedError("sobolev_norm supports s in [-2, 3], got " + std::to_string(s));
  const auto& grid = F.grid();
  double sum = 0.0;
  for (int k = 0; k < F.size(); ++k) {
    const double lam = grid.frequency(k);
    sum += std::pow(1.0 + lam * lam, s) * std::norm(F.coeffs()[k]);
  }
  return std::sqrt(4.0 * std::numbers::pi * grid.spacing() * sum);
}

double sobolev_norm(const RadialField& f, double s) { return sobolev_norm(forward_transform(f), s); }

std::vector<complex> continuum_transform(const SpectralField& F) {
  const auto& grid = F.grid();
  const double c = std::sqrt(grid.spacing() * grid.radius() / std::numbers::pi);
  std::vector<complex> out(F.size());
  for (int k = 0; k < F.size(); ++k) out[k] = c * F.coeffs()[k] / grid.frequency(k);
  return out;
}

complex continuum_transform_at_zero(const RadialField& f) {
  const auto& grid = f.grid();
  complex sum = 0.0;
  for (int j = 0; j < f.size(); ++j) sum += grid.node(j) * f.reduced()[j];
  return std::sqrt(2.0 / std::numbers::pi) * grid.spacing() * sum;
}

std::vector<complex> reduced_derivative(const Discretization& disc, std::span<const complex> reduced) {
  const auto& tr = disc.transform();
  const auto& grid = disc.grid();
  std::vector<complex> coeffs(reduced.size());
  tr.apply(reduced, coeffs);
  for (int k = 0; k < static_cast<int>(coeffs.size()); ++k) coeffs[k] *= grid.frequency(k);
  std::vector<complex> full(grid.intervals() + 1);
  tr.cosine_synthesis(coeffs, full);
  return std::vector<complex>(full.begin() + 1, full.end() - 1);
}

std::vector<complex> reduced_derivative(const RadialField& f) { return reduced_derivative(f.discretization(), f.reduced()); }

}  // namespace hypnls
