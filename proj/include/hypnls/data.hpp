#pragma once

#include <variant>

#include "hypnls/field.hpp"

namespace hypnls {

/// amplitude * exp(-((r - center)/width)^2) * exp(i phase_slope r)
struct GaussianBump {
  double center = 0.0;
  double width = 1.0;
  double amplitude = 1.0;
  double phase_slope = 0.0;
};

/// amplitude * a0(r / scale) with the smooth bump a0(r) = exp(-1/(1 - (2r-3)^2)) supported in [1, 2].
struct CompactBump {
  double scale = 1.0;
  double amplitude = 1.0;
};

using InitialDatum = std::variant<GaussianBump, CompactBump>;

double compact_bump_profile(double r);

RadialField make_field(const DiscretizationPtr& disc, const InitialDatum& datum);

}  // namespace hypnls
