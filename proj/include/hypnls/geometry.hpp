#pragma once

#include <string_view>

namespace hypnls {

enum class Geometry { Hyperbolic3, Euclidean3 };

std::string_view to_string(Geometry g);
Geometry parse_geometry(std::string_view name);

/// Radial volume density: sinh^2 r on H^3, r^2 on R^3 (without the 4 pi of the sphere).
double volume_weight(Geometry g, double r);

/// Reduction weight m(r) of the substitution v = u * m: sinh r on H^3, r on R^3.
double reduction_weight(Geometry g, double r);

/// log m(r) for r > 0; stays finite where m itself overflows.
double log_reduction_weight(Geometry g, double r);

/// sinh(r) / r with a Taylor branch below 1e-4.
double sinhc(double r);

/// r * cotanh(r), equal to 1 at r = 0.
double r_coth(double r);

/// w_3(r) = sinh r / r for n = 3, w~_2(r) = (sinh r / (r (1 + r)))^{1/2} for n = 2.
double strichartz_weight(int n, double r);

/// Distance on H^3 between points at radii r, r2 whose directions have cosine x.
double hyperbolic_distance(double r, double r2, double x);

/// Uniform discretization of [0, R] with N intervals. Interior nodes r_j = j h (j = 1..N-1) are
/// stored at index j-1; the endpoints carry the implicit Dirichlet condition. The dual sine
/// frequencies are lambda_k = k pi / R, k = 1..N-1.
class RadialGrid {
 public:
  RadialGrid(double radius, int intervals);

  double radius() const noexcept { return radius_; }
  int intervals() const noexcept { return intervals_; }
  int size() const noexcept { return intervals_ - 1; }
  double spacing() const noexcept { return spacing_; }

  double node(int index) const noexcept { return (index + 1) * spacing_; }
  double frequency(int index) const noexcept;
  double max_frequency() const noexcept { return frequency(size() - 1); }

  bool operator==(const RadialGrid& other) const noexcept {
    return radius_ == other.radius_ && intervals_ == other.intervals_;
  }

 private:
  double radius_;
  int intervals_;
  double spacing_;
};

/// Strichartz-admissible exponents: 2/p = d (1/2 - 1/q), 2 <= q <= 2d/(d-2), (p, q) != (2, inf).
struct AdmissiblePair {
  int d;
  double p;
  double q;

  /// Builds the pair with the given q, solving for p. Use q = +inf for the endpoint-free case d = 2.
  static AdmissiblePair from_q(int d, double q);
  static bool is_admissible(int d, double p, double q, double tol = 1e-12);
};

/// delta(q) = 3 (1/2 - 1/q), the decay exponent of the three-dimensional Gagliardo-Nirenberg bound.
double dispersive_exponent(double q);

}  // namespace hypnls
