#include <cmath>
#include <random>

#include <doctest.h>

#include "../oracles.hpp"
#include "hypnls/data.hpp"
#include "hypnls/errors.hpp"
#include "hypnls/nls.hpp"
#include "hypnls/spectral.hpp"

using namespace hypnls;

namespace {

RadialField random_field(const DiscretizationPtr& disc, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  std::vector<complex> v(disc->size());
  for (auto& z : v) z = {n(rng), n(rng)};
  return RadialField(disc, v);
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("round trip and discrete Plancherel") {
    for (auto g : {Geometry::Hyperbolic3, Geometry::Euclidean3}) {
      const auto disc = Discretization::make(RadialGrid(40.0, 1000), g);
      const auto f = random_field(disc, 7);
      const auto F = forward_transform(f);
      CHECK(std::sqrt(mass(inverse_transform(F) - f) / mass(f)) < 1e-14);
      CHECK(F.l2_norm() == doctest::Approx(std::sqrt(mass(f))).epsilon(1e-14));
    }
  }

  TEST_CASE("transform matches a direct sine sum") {
    const int N = 16;
    const auto disc = Discretization::make(RadialGrid(3.0, N), Geometry::Euclidean3);
    const auto f = random_field(disc, 3);
    const auto F = forward_transform(f);
    for (int k = 1; k < N; ++k) {
      complex ref = 0.0;
      for (int j = 1; j < N; ++j) ref += f.reduced()[j - 1] * std::sin(M_PI * j * k / N);
      ref *= std::sqrt(2.0 / N);
      CHECK(std::abs(F.coeffs()[k - 1] - ref) < 1e-13);
    }
  }

  TEST_CASE("mass equals the quadrature of |u|^2 dV") {
    const auto disc = Discretization::make(RadialGrid(40.0, 4096), Geometry::Hyperbolic3);
    const auto f = make_field(disc, GaussianBump{3.0, 1.0, 1.0, 0.5});
    const auto u = [](double r) { return std::exp(-(r - 3.0) * (r - 3.0)) * std::polar(1.0, 0.5 * r); };
    CHECK(mass(f) == doctest::Approx(oracle::mass(u, true, 12.0)).epsilon(1e-10));
  }

  TEST_CASE("Sobolev norms against finite differences") {
    // (1 + lambda^2)^s weights: s = 1 is ||grad u||^2 on H^3 (where -Delta = 1 + lambda^2) and ||u||^2 + ||grad u||^2 on R^3.
    for (auto g : {Geometry::Hyperbolic3, Geometry::Euclidean3}) {
      const bool hyp = g == Geometry::Hyperbolic3;
      const auto disc = Discretization::make(RadialGrid(30.0, 8192), g);
      const auto f = make_field(disc, GaussianBump{4.0, 1.0, 1.0, 0.0});
      const auto du = [](double r) { return -2.0 * (r - 4.0) * std::exp(-(r - 4.0) * (r - 4.0)); };
      const double grad2 = 4.0 * M_PI * oracle::simpson([&](double r) { return du(r) * du(r) * std::pow(oracle::reduction(hyp, r), 2); }, 0.0, 14.0, 20000);
      const double s1 = sobolev_norm(f, 1.0);
      CHECK(s1 * s1 == doctest::Approx(hyp ? grad2 : grad2 + mass(f)).epsilon(1e-9));
      CHECK(sobolev_norm(f, 0.0) == doctest::Approx(std::sqrt(mass(f))).epsilon(1e-13));
    }
  }

  TEST_CASE("Sobolev index range") {
    const auto disc = Discretization::make(RadialGrid(10.0, 64), Geometry::Hyperbolic3);
    const auto f = make_field(disc, GaussianBump{3.0, 1.0, 1.0, 0.0});
    CHECK_NOTHROW(sobolev_norm(f, -2.0));
    CHECK_NOTHROW(sobolev_norm(f, 3.0));
    CHECK_THROWS_AS(sobolev_norm(f, 3.5), UnsupportedError);
    CHECK(sobolev_norm(f, -1.0) < sobolev_norm(f, 0.0));
  }

  TEST_CASE("continuum samples against dense quadrature") {
    for (auto g : {Geometry::Hyperbolic3, Geometry::Euclidean3}) {
      const bool hyp = g == Geometry::Hyperbolic3;
      const auto disc = Discretization::make(RadialGrid(40.0, 4096), g);
      const auto f = make_field(disc, GaussianBump{3.0, 1.0, 1.0, 0.0});
      const auto u = [](double r) { return complex(std::exp(-(r - 3.0) * (r - 3.0))); };
      const auto samples = continuum_transform(forward_transform(f));
      for (int k : {0, 5, 40, 120}) {
        const auto ref = oracle::continuum_transform(u, hyp, disc->grid().frequency(k), 12.0);
        CHECK(std::abs(samples[k] - ref) < 1e-9 * std::abs(samples[0]));
      }
      const auto ref0 = sqrt(2.0 / M_PI) * oracle::simpson([&](double r) { return r * u(r) * oracle::reduction(hyp, r); }, 0.0, 12.0, 20000);
      CHECK(std::abs(continuum_transform_at_zero(f) - ref0) < 1e-9 * std::abs(ref0));
    }
  }

  TEST_CASE("spectral derivative") {
    const auto disc = Discretization::make(RadialGrid(20.0, 2048), Geometry::Euclidean3);
    const auto f = RadialField::sample(disc, [](double r) { return complex(std::exp(-(r - 5) * (r - 5))); });
    const auto dv = reduced_derivative(f);
    for (int j = 0; j < f.size(); j += 97) {
      const double r = disc->grid().node(j);
      const double ref = std::exp(-(r - 5) * (r - 5)) * (1.0 - 2.0 * r * (r - 5));  // d/dr (r u)
      CHECK(std::abs(dv[j] - ref) < 1e-10);
    }
  }
}
