#pragma once

// Independent reference computations used by the unit and acceptance tests. Nothing here calls
// into the spectral machinery under test.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

using complex = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

/// Composite Simpson on [a, b] with n (even) panels.
template <class F>
auto simpson(F&& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  auto sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * (h / 3.0);
}

inline double reduction(bool hyperbolic, double r) { return hyperbolic ? std::sinh(r) : r; }

/// 4 pi int_0^L |u|^2 m^2 dr.
inline double mass(const std::function<complex(double)>& u, bool hyperbolic, double L, int n = 20000) {
  return 4.0 * pi * simpson([&](double r) { return std::norm(u(r)) * std::pow(reduction(hyperbolic, r), 2); }, 0.0, L, n);
}

/// sqrt(2/pi) / lambda int_0^L sin(lambda r) u(r) m(r) dr.
inline complex continuum_transform(const std::function<complex(double)>& u, bool hyperbolic, double lambda, double L,
                                   int n = 20000) {
  const auto I = simpson([&](double r) { return std::sin(lambda * r) * u(r) * reduction(hyperbolic, r); }, 0.0, L, n);
  return std::sqrt(2.0 / pi) / lambda * I;
}

/// Fourth-order central difference of f sampled at r_j = (j+1) h, extended oddly through r = 0
/// and by zero past the last node.
inline std::vector<complex> derivative(const std::vector<complex>& f, double h) {
  const int n = static_cast<int>(f.size());
  auto at = [&](int j) -> complex {
    if (j >= 0 && j < n) return f[j];
    if (j == -1) return 0.0;
    if (j < -1) return -f[-j - 2];
    return 0.0;
  };
  std::vector<complex> d(n);
  for (int j = 0; j < n; ++j) d[j] = (8.0 * (at(j + 1) - at(j - 1)) - (at(j + 2) - at(j - 2))) / (12.0 * h);
  return d;
}

/// d/dr of the H^3 distance between points at radii r, s with direction cosine x.
inline double distance_dr(double r, double s, double x) {
  const double ch = std::cosh(r) * std::cosh(s) - std::sinh(r) * std::sinh(s) * x;
  if (ch <= 1.0) return 0.0;
  const double d = std::acosh(ch);
  return (std::sinh(r) * std::cosh(s) - std::cosh(r) * std::sinh(s) * x) / std::sinh(d);
}

/// Interaction momentum on H^3 from the reduced profile v = u sinh r at r_j = (j+1) h:
/// 16 pi^2 h^2 sum_i sum_j Im(v' conj v)(r_i) |v(r_j)|^2 int_{-1}^{1} d_r a(r_i, r_j, x) dx,
/// with the angular integral done by tanh-sinh on the distance derivative itself.
inline double interaction_momentum(const std::vector<complex>& v, double h) {
  const int n = static_cast<int>(v.size());
  const auto dv = derivative(v, h);
  boost::math::quadrature::tanh_sinh<double> ts;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = (i + 1) * h;
    const double current = std::imag(dv[i] * std::conj(v[i]));
    if (std::abs(current) < 1e-300) continue;
    double inner = 0.0;
    for (int j = 0; j < n; ++j) {
      const double s = (j + 1) * h;
      const double density = std::norm(v[j]);
      if (density < 1e-30) continue;
      inner += density * ts.integrate([&](double x) { return distance_dr(r, s, x); }, -1.0, 1.0);
    }
    total += current * inner;
  }
  return 16.0 * pi * pi * h * h * total;
}

}  // namespace oracle
