#include "hypnls/propagators.hpp"

#include <cmath>
// Boost 1.74's pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "hypnls/errors.hpp"
#include "hypnls/spectral.hpp"

namespace hypnls {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite_time(double t) {
  if (!std::isfinite(t)) throw DomainError("time must be finite");
}

}  // namespace

void apply_free_multiplier(const Discretization& disc, std::span<complex> coeffs, double t) {
  require_finite_time(t);
  const auto mu = disc.laplacian_eigenvalues();
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] *= std::polar(1.0, -t * mu[k]);
}

SpectralField free_evolve(const SpectralField& F, double t) {
  SpectralField out = F;
  apply_free_multiplier(F.discretization(), out.coeffs_mut(), t);
  return out;
}

RadialField free_evolve(const RadialField& f, double t) {
  require_finite_time(t);
  if (t == 0.0) return f;
  return inverse_transform(free_evolve(forward_transform(f), t));
}

RadialField free_evolve_kernel(const RadialField& f, double t) {
  if (f.geometry() != Geometry::Hyperbolic3) {
    throw UnsupportedError("free_evolve_kernel is only defined on H^3; use free_evolve");
  }
  require_finite_time(t);
  if (t == 0.0) throw DomainError("the explicit kernel is singular at t = 0");

  const auto& grid = f.grid();
  const int n = f.size();
  const double h = grid.spacing();
  const auto v0 = f.reduced();

  // v(t, r) = e^{-it} (4 pi i t)^{-1/2} (-2i) e^{i r^2/4t} int e^{i rho^2/4t} sin(r rho / 2t) v0(rho) d rho
  std::vector<complex> chirped(n);
  for (int j = 0; j < n; ++j) {
    const double rho = grid.node(j);
    chirped[j] = std::polar(1.0, rho * rho / (4.0 * t)) * v0[j];
  }
  const complex prefactor = std::polar(1.0, -t) / std::sqrt(complex(0.0, 4.0 * kPi * t)) * complex(0.0, -2.0) * h;
  const double step = h * h / (2.0 * t);

  std::vector<complex> out(n);
  for (int i = 0; i < n; ++i) {
    complex sum = 0.0;
    const double a = step * (i + 1);
    for (int j = 0; j < n; ++j) sum += std::sin(a * (j + 1)) * chirped[j];
    const double r = grid.node(i);
    out[i] = prefactor * std::polar(1.0, r * r / (4.0 * t)) * sum;
  }
  return RadialField(f.shared_discretization(), std::move(out));
}

AsymptoticProfile asymptotic_profile(const RadialField& f0, double t) {
  if (f0.geometry() != Geometry::Hyperbolic3) throw UnsupportedError("asymptotic_profile is defined on H^3");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("asymptotic_profile needs finite t > 0");

  const auto& grid = f0.grid();
  const int n = f0.size();
  const auto spectrum = forward_transform(f0);
  const auto fhat = continuum_transform(spectrum);

  double total = 0.0;
  double uncovered = 0.0;
  const double lambda_cover = grid.radius() / (2.0 * t);
  for (int k = 0; k < n; ++k) {
    const double w = std::norm(spectrum.coeffs()[k]);
    total += w;
    if (grid.frequency(k) > lambda_cover) uncovered += w;
  }
  AsymptoticProfile result{RadialField::zeros(f0.shared_discretization())};
  if (total == 0.0) return result;
  result.uncovered_fraction = uncovered / total;
  result.coverage_warning = result.uncovered_fraction > kCoverageWarningFraction;

  std::vector<double> lam(n + 1), re(n + 1), im(n + 1);
  const complex at_zero = continuum_transform_at_zero(f0);
  lam[0] = 0.0;
  re[0] = at_zero.real();
  im[0] = at_zero.imag();
  for (int k = 0; k < n; ++k) {
    lam[k + 1] = grid.frequency(k);
    re[k + 1] = fhat[k].real();
    im[k + 1] = fhat[k].imag();
  }
  const double lambda_max = lam.back();
  using boost::math::interpolators::pchip;
  auto lam_copy = lam;
  pchip<std::vector<double>> interp_re(std::move(lam), std::move(re));
  pchip<std::vector<double>> interp_im(std::move(lam_copy), std::move(im));

  const complex c = std::pow(2.0, -1.5) * std::polar(1.0, -0.75 * kPi);
  const double decay = std::pow(t, -1.5);
  auto v = result.field.reduced_mut();
  for (int j = 0; j < n; ++j) {
    const double r = grid.node(j);
    const double l = r / (2.0 * t);
    if (l > lambda_max) continue;
    const complex value(interp_re(l), interp_im(l));
    v[j] = c * decay * r * std::polar(1.0, -t + r * r / (4.0 * t)) * value;
  }
  return result;
}

// ---------------------------------------------------------------------------------------------
// H^2 kernel integral

namespace {

constexpr int kNodes = 20;
constexpr double kRegionA = 0.25;     // y = s - rho below which the square-root substitution is used
constexpr double kEnvelopeFloor = 1e-13;
constexpr double kMaxPhasePerPanel = 2.0;

struct Rule {
  std::array<double, kNodes> x{};
  std::array<double, kNodes> w{};
  std::array<std::array<double, kNodes>, kNodes> legendre{};  // legendre[k][i] = P_k(x_i)
};

const Rule& rule() {
  static const Rule r = [] {
    Rule out;
    using G = boost::math::quadrature::gauss<double, kNodes>;
    const auto& a = G::abscissa();
    const auto& wt = G::weights();
    const int half = kNodes / 2;
    for (int i = 0; i < half; ++i) {
      out.x[half - 1 - i] = -a[i];
      out.w[half - 1 - i] = wt[i];
      out.x[half + i] = a[i];
      out.w[half + i] = wt[i];
    }
    for (int k = 0; k < kNodes; ++k) {
      for (int i = 0; i < kNodes; ++i) out.legendre[k][i] = boost::math::legendre_p(k, out.x[i]);
    }
    return out;
  }();
  return r;
}

double log_sinh(double x) { return log_reduction_weight(Geometry::Hyperbolic3, x); }

// s / sqrt(cosh s - cosh rho) for s > rho, via cosh s - cosh rho = 2 sinh((s+rho)/2) sinh((s-rho)/2).
double envelope(double rho, double s) {
  return s * std::exp(-0.5 * (std::numbers::ln2 + log_sinh(0.5 * (s + rho)) + log_sinh(0.5 * (s - rho))));
}

// Region A integrand in w (s = rho + w^2) without the phase: 2 s / sqrt(sinh(rho + w^2/2) sinhc(w^2/2)).
double region_a_amplitude(double rho, double w) {
  const double w2 = w * w;
  const double s = rho + w2;
  return 2.0 * s * std::exp(-0.5 * log_sinh(rho + 0.5 * w2)) / std::sqrt(sinhc(0.5 * w2));
}

std::vector<double> region_a_breaks(double rho, double t) {
  const double top = std::sqrt(kRegionA);
  std::vector<double> breaks{0.0};
  // The amplitude has complex singularities at w = +-i sqrt(2 rho); grade towards w = 0.
  double b = std::min(top, 0.5 * std::sqrt(2.0 * rho));
  while (b < top) {
    breaks.push_back(b);
    b *= 2.0;
  }
  breaks.push_back(top);
  if (!std::isfinite(t)) return breaks;
  std::vector<double> refined{0.0};
  for (std::size_t p = 1; p < breaks.size(); ++p) {
    const double lo = breaks[p - 1];
    const double hi = breaks[p];
    const double phase_lo = std::pow(rho + lo * lo, 2) / (4.0 * std::abs(t));
    const double phase_hi = std::pow(rho + hi * hi, 2) / (4.0 * std::abs(t));
    const int pieces = std::max(1, static_cast<int>(std::ceil((phase_hi - phase_lo) / kMaxPhasePerPanel)));
    for (int q = 1; q <= pieces; ++q) refined.push_back(lo + (hi - lo) * q / pieces);
  }
  return refined;
}

std::vector<double> region_b_breaks(double rho, double max_width) {
  double y_end = kRegionA;
  while (envelope(rho, rho + y_end) >= kEnvelopeFloor) y_end += 1.0;
  std::vector<double> breaks{kRegionA};
  double y = kRegionA;
  double width = kRegionA;
  while (y < y_end) {
    y = std::min(y_end, y + std::min(width, max_width));
    breaks.push_back(y);
    width *= 2.0;
  }
  return breaks;
}

template <class F>
void for_each_subpanel(const std::vector<double>& breaks, int level, F&& f) {
  const int pieces = 1 << level;
  for (std::size_t p = 1; p < breaks.size(); ++p) {
    const double lo = breaks[p - 1];
    const double hi = breaks[p];
    for (int q = 0; q < pieces; ++q) f(lo + (hi - lo) * q / pieces, lo + (hi - lo) * (q + 1) / pieces);
  }
}

// int_{-1}^{1} P_k(x) e^{i theta x} dx = 2 i^k j_k(theta)
std::array<complex, kNodes> legendre_moments(double theta) {
  std::array<complex, kNodes> m{};
  const double a = std::abs(theta);
  complex ik = 1.0;
  for (int k = 0; k < kNodes; ++k) {
    double j = std::sph_bessel(static_cast<unsigned>(k), a);
    if (theta < 0.0 && (k % 2 == 1)) j = -j;
    m[k] = 2.0 * ik * j;
    ik *= complex(0.0, 1.0);
  }
  return m;
}

}  // namespace

std::complex<double> h2_kernel_integral_at_level(double rho, double t, int level) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("h2_kernel_integral needs finite rho > 0");
  if (t == 0.0 || !std::isfinite(t)) throw DomainError("h2_kernel_integral needs finite t != 0");
  if (level < 0 || level > 20) throw DomainError("refinement level out of range");
  const Rule& g = rule();
  complex total = 0.0;

  for_each_subpanel(region_a_breaks(rho, t), level, [&](double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double d = 0.5 * (hi - lo);
    complex sum = 0.0;
    for (int i = 0; i < kNodes; ++i) {
      const double w = c + d * g.x[i];
      const double s = rho + w * w;
      sum += g.w[i] * region_a_amplitude(rho, w) * std::polar(1.0, s * s / (4.0 * t));
    }
    total += d * sum;
  });

  const double max_width = std::min(1.0, 2.0 * std::sqrt(8.0 * std::abs(t)));
  for_each_subpanel(region_b_breaks(rho, max_width), level, [&](double lo, double hi) {
    const double c = rho + 0.5 * (lo + hi);
    const double d = 0.5 * (hi - lo);
    // s^2/4t = c^2/4t + (c/2t)(s - c) + (s - c)^2/4t: linear part exact, chirp kept in the amplitude.
    std::array<complex, kNodes> amp{};
    for (int i = 0; i < kNodes; ++i) {
      const double ds = d * g.x[i];
      amp[i] = envelope(rho, c + ds) * std::polar(1.0, ds * ds / (4.0 * t));
    }
    const auto moments = legendre_moments(c / (2.0 * t) * d);
    complex sum = 0.0;
    for (int k = 0; k < kNodes; ++k) {
      complex coeff = 0.0;
      for (int i = 0; i < kNodes; ++i) coeff += g.w[i] * amp[i] * g.legendre[k][i];
      sum += (k + 0.5) * coeff * moments[k];
    }
    total += d * std::polar(1.0, c * c / (4.0 * t)) * sum;
  });
  return total;
}

std::complex<double> h2_kernel_integral(double rho, double t, const H2KernelOptions& options) {
  complex prev = h2_kernel_integral_at_level(rho, t, options.min_level);
  double estimate = std::numeric_limits<double>::infinity();
  for (int level = options.min_level + 1; level <= options.max_level; ++level) {
    const complex cur = h2_kernel_integral_at_level(rho, t, level);
    const double scale = std::max(std::abs(cur), 1e-300);
    estimate = std::abs(cur - prev) / scale;
    if (estimate <= options.tolerance) return cur;
    prev = cur;
  }
  throw QuadratureError("h2_kernel_integral did not converge (rho = " + std::to_string(rho) +
                            ", t = " + std::to_string(t) + ")",
                        estimate);
}

double h2_kernel_majorant(double rho, int level) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("h2_kernel_majorant needs finite rho > 0");
  const Rule& g = rule();
  double total = 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  for_each_subpanel(region_a_breaks(rho, inf), level, [&](double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double d = 0.5 * (hi - lo);
    for (int i = 0; i < kNodes; ++i) total += d * g.w[i] * region_a_amplitude(rho, c + d * g.x[i]);
  });
  for_each_subpanel(region_b_breaks(rho, 1.0), level, [&](double lo, double hi) {
    const double c = rho + 0.5 * (lo + hi);
    const double d = 0.5 * (hi - lo);
    for (int i = 0; i < kNodes; ++i) total += d * g.w[i] * envelope(rho, c + d * g.x[i]);
  });
  return total;
}

double h2_kernel_bound(double rho) {
  if (!(rho > 0.0)) throw DomainError("h2_kernel_bound needs rho > 0");
  return std::sqrt(rho / std::sinh(rho) * (1.0 + rho));
}

}  // namespace hypnls
