#include "hypnls/data.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hypnls/errors.hpp"

namespace hypnls {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_compact_bump(double r) {
  const double x = 2.0 * r - 3.0;
  const double d = 1.0 - x * x;
  return d > 0.0 ? -1.0 / d : kNegInf;
}

}  // namespace

double compact_bump_profile(double r) {
  const double l = log_compact_bump(r);
  return l == kNegInf ? 0.0 : std::exp(l);
}

RadialField make_field(const DiscretizationPtr& disc, const InitialDatum& datum) {
  if (const auto* g = std::get_if<GaussianBump>(&datum)) {
    if (!(g->width > 0.0)) throw DomainError("gaussian_bump width must be positive");
    if (g->amplitude == 0.0) return RadialField::zeros(disc);
    const double log_a = std::log(std::abs(g->amplitude));
    const double phase0 = g->amplitude < 0.0 ? std::numbers::pi : 0.0;
    return RadialField::from_log_profile(
        disc,
        [&](double r) {
          const double z = (r - g->center) / g->width;
          return log_a - z * z;
        },
        [&](double r) { return phase0 + g->phase_slope * r; });
  }
  const auto& b = std::get<CompactBump>(datum);
  if (!(b.scale > 0.0)) throw DomainError("compact_bump scale must be positive");
  if (b.amplitude == 0.0) return RadialField::zeros(disc);
  const double log_a = std::log(std::abs(b.amplitude));
  const double phase0 = b.amplitude < 0.0 ? std::numbers::pi : 0.0;
  return RadialField::from_log_profile(
      disc, [&](double r) { return log_a + log_compact_bump(r / b.scale); }, [&](double) { return phase0; });
}

}  // namespace hypnls
