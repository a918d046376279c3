#include "hypnls/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hypnls/errors.hpp"

namespace hypnls {

namespace {

void require_radius(double r) {
  if (!std::isfinite(r) || r < 0.0) {
    throw DomainError("radius must be finite and non-negative, got " + std::to_string(r));
  }
}

constexpr double kTaylorCutoff = 1e-4;
constexpr double kCosineSlack = 1e-12;

}  // namespace

std::string_view to_string(Geometry g) {
  switch (g) {
    case Geometry::Hyperbolic3:
      return "hyperbolic";
    case Geometry::Euclidean3:
      return "euclidean";
  }
  return "unknown";
}

Geometry parse_geometry(std::string_view name) {
  if (name == "hyperbolic" || name == "H3") return Geometry::Hyperbolic3;
  if (name == "euclidean" || name == "R3") return Geometry::Euclidean3;
  throw ConfigError("unknown geometry '" + std::string(name) + "' (expected hyperbolic or euclidean)");
}

double volume_weight(Geometry g, double r) {
  require_radius(r);
  const double m = reduction_weight(g, r);
  return m * m;
}

double reduction_weight(Geometry g, double r) {
  require_radius(r);
  return g == Geometry::Hyperbolic3 ? std::sinh(r) : r;
}

double log_reduction_weight(Geometry g, double r) {
  require_radius(r);
  if (g == Geometry::Euclidean3) return std::log(r);
  if (r < 1.0) return std::log(std::sinh(r));
  // sinh r = e^r (1 - e^{-2r}) / 2
  return r + std::log1p(-std::exp(-2.0 * r)) - std::numbers::ln2;
}

double sinhc(double r) {
  if (std::abs(r) < kTaylorCutoff) {
    const double r2 = r * r;
    return 1.0 + r2 / 6.0 * (1.0 + r2 / 20.0 * (1.0 + r2 / 42.0));
  }
  return std::sinh(r) / r;
}

double r_coth(double r) {
  if (std::abs(r) < kTaylorCutoff) {
    const double r2 = r * r;
    return 1.0 + r2 / 3.0 - r2 * r2 / 45.0;
  }
  if (r > 20.0) return r;  // coth r = 1 to double precision
  return r / std::tanh(r);
}

double strichartz_weight(int n, double r) {
  require_radius(r);
  if (n == 3) return sinhc(r);
  if (n == 2) return std::sqrt(sinhc(r) / (1.0 + r));
  throw UnsupportedError("strichartz_weight supports n = 2 or 3, got " + std::to_string(n));
}

double hyperbolic_distance(double r, double r2, double x) {
  require_radius(r);
  require_radius(r2);
  if (!(std::abs(x) <= 1.0 + kCosineSlack)) {
    throw DomainError("direction cosine must lie in [-1, 1], got " + std::to_string(x));
  }
  x = std::clamp(x, -1.0, 1.0);
  // cosh a - 1 = 2 sinh^2((r - r2)/2) + sinh r sinh r2 (1 - x), so the half-angle form
  // sinh(a/2)^2 = sinh^2((r - r2)/2) + sinh r sinh r2 (1 - x) / 2 has no cancellation.
  const double half_diff = std::sinh(0.5 * (r - r2));
  const double a = half_diff * half_diff;
  if (r + r2 < 600.0) {
    const double q = a + 0.5 * std::sinh(r) * std::sinh(r2) * (1.0 - x);
    return 2.0 * std::asinh(std::sqrt(std::max(q, 0.0)));
  }
  // Large radii: 2 asinh(sqrt q) = log(4 q) up to e^{-a}, with log q by log-sum-exp.
  const double log_a = a > 0.0 ? 2.0 * (std::abs(0.5 * (r - r2)) + std::log1p(-std::exp(-std::abs(r - r2))) -
                                       std::numbers::ln2)
                                 : -std::numeric_limits<double>::infinity();
  const double one_minus_x = 1.0 - x;
  const double log_b = one_minus_x > 0.0 ? log_reduction_weight(Geometry::Hyperbolic3, std::max(r, 1e-300)) +
                                               log_reduction_weight(Geometry::Hyperbolic3, std::max(r2, 1e-300)) +
                                               std::log(0.5 * one_minus_x)
                                         : -std::numeric_limits<double>::infinity();
  const double hi = std::max(log_a, log_b);
  const double lo = std::min(log_a, log_b);
  const double log_q = hi + std::log1p(std::exp(lo - hi));
  return 2.0 * std::numbers::ln2 + log_q;
}

RadialGrid::RadialGrid(double radius, int intervals) : radius_(radius), intervals_(intervals) {
  if (!std::isfinite(radius) || radius <= 0.0) {
    throw DomainError("grid radius must be positive and finite");
  }
  if (intervals < 2) throw DomainError("grid needs at least 2 intervals (one interior node)");
  spacing_ = radius / intervals;
}

double RadialGrid::frequency(int index) const noexcept {
  return (index + 1) * std::numbers::pi / radius_;
}

double dispersive_exponent(double q) {
  if (std::isinf(q)) return 1.5;
  return 3.0 * (0.5 - 1.0 / q);
}

bool AdmissiblePair::is_admissible(int d, double p, double q, double tol) {
  if (d < 2 || !(q >= 2.0)) return false;
  const double q_max = d == 2 ? std::numeric_limits<double>::infinity() : 2.0 * d / (d - 2.0);
  if (q > q_max * (1.0 + tol)) return false;
  if (d == 2 && std::isinf(q)) return false;  // (2, inf) is excluded
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  return std::abs(2.0 * inv_p - d * (0.5 - inv_q)) <= tol;
}

AdmissiblePair AdmissiblePair::from_q(int d, double q) {
  if (d < 2) throw UnsupportedError("admissible pairs need d >= 2");
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double rhs = d * (0.5 - inv_q);
  const double p = rhs == 0.0 ? std::numeric_limits<double>::infinity() : 2.0 / rhs;
  if (!is_admissible(d, p, q)) {
    throw DomainError("q = " + std::to_string(q) + " is not admissible in dimension " + std::to_string(d));
  }
  return {d, p, q};
}

}  // namespace hypnls
