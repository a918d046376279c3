#include <cmath>

#include <doctest.h>

#include "hypnls/data.hpp"
#include "hypnls/errors.hpp"
#include "hypnls/nls.hpp"
#include "hypnls/propagators.hpp"
#include "hypnls/spectral.hpp"

using namespace hypnls;

namespace {

double rel_distance(const RadialField& a, const RadialField& b) { return std::sqrt(mass(a - b) / mass(b)); }

}  // namespace

TEST_SUITE("propagators") {
  TEST_CASE("free flow is unitary and a group") {
    const auto disc = Discretization::make(RadialGrid(40.0, 2048), Geometry::Hyperbolic3);
    const auto f = make_field(disc, GaussianBump{3.0, 1.0, 1.0, 0.3});
    const auto a = free_evolve(f, 0.7);
    CHECK(mass(a) == doctest::Approx(mass(f)).epsilon(1e-13));
    CHECK(rel_distance(free_evolve(a, 0.4), free_evolve(f, 1.1)) < 1e-12);
    CHECK(rel_distance(free_evolve(a, -0.7), f) < 1e-12);
    CHECK(rel_distance(free_evolve(f, 0.0), f) == 0.0);
  }

  TEST_CASE("Euclidean flow of a Gaussian matches the closed form") {
    // u0 = exp(-r^2): u(t) = (1 + 4it)^{-3/2} exp(-r^2 / (1 + 4it)) for i u_t + Delta u = 0.
    const auto disc = Discretization::make(RadialGrid(60.0, 4096), Geometry::Euclidean3);
    const auto f = make_field(disc, GaussianBump{0.0, 1.0, 1.0, 0.0});
    const double t = 0.8;
    const auto exact = RadialField::sample(disc, [&](double r) {
      const complex a = 1.0 + complex(0.0, 4.0 * t);
      return std::pow(a, -1.5) * std::exp(-r * r / a);
    });
    CHECK(rel_distance(free_evolve(f, t), exact) < 1e-12);
  }

  TEST_CASE("kernel quadrature matches the spectral flow on H^3") {
    const auto disc = Discretization::make(RadialGrid(40.0, 2048), Geometry::Hyperbolic3);
    const auto f = make_field(disc, GaussianBump{3.0, 1.0, 1.0, 0.0});
    for (double t : {0.5, -1.0}) CHECK(rel_distance(free_evolve_kernel(f, t), free_evolve(f, t)) < 1e-6);
    CHECK_THROWS_AS(free_evolve_kernel(f, 0.0), DomainError);
    const auto e = Discretization::make(RadialGrid(40.0, 256), Geometry::Euclidean3);
    CHECK_THROWS_AS(free_evolve_kernel(make_field(e, GaussianBump{}), 1.0), UnsupportedError);
  }

  TEST_CASE("asymptotic profile") {
    const auto disc = Discretization::make(RadialGrid(400.0, 8192), Geometry::Hyperbolic3);
    const auto f = make_field(disc, GaussianBump{0.0, 1.0, 1.0, 0.0});
    double prev = 1e300;
    for (double t : {5.0, 10.0, 20.0}) {
      const auto p = asymptotic_profile(f, t);
      CHECK_FALSE(p.coverage_warning);
      const double err = rel_distance(free_evolve(f, t), p.field) * std::sqrt(mass(free_evolve(f, t)) / mass(f));
      CHECK(err < prev);
      prev = err;
    }
    // A short grid cannot hold the profile of the high frequencies at late times.
    const auto small = Discretization::make(RadialGrid(20.0, 1024), Geometry::Hyperbolic3);
    CHECK(asymptotic_profile(make_field(small, GaussianBump{0.0, 0.3, 1.0, 0.0}), 50.0).coverage_warning);
    CHECK_THROWS_AS(asymptotic_profile(f, 0.0), DomainError);
  }

  TEST_CASE("H2 kernel integral against high-precision references") {
    // 30-digit adaptive quadrature after s = rho + w^2.
    struct Ref {
      double rho, t, re, im;
    };
    for (const auto& r : {Ref{1.0, 1.0, 1.3165301069805777, 1.8762438332754402},
                          Ref{5.0, 10.0, 0.86375468966344044, 1.5798036771111753},
                          Ref{0.5, -1.0, 1.7485054349110491, -1.6893322221087201}}) {
      const auto v = h2_kernel_integral(r.rho, r.t, {1e-10, 0, 7});
      CHECK(std::abs(v - complex(r.re, r.im)) < 1e-9 * std::abs(complex(r.re, r.im)));
    }
  }

  TEST_CASE("H2 kernel integral properties") {
    for (double rho : {0.01, 0.3, 2.0, 15.0}) {
      for (double t : {0.1, 1.0, 10.0}) {
        const auto a = h2_kernel_integral_at_level(rho, t, 2);
        const auto b = h2_kernel_integral_at_level(rho, t, 3);
        CHECK(std::abs(a - b) < 1e-6 * std::abs(b));
        CHECK(std::abs(b) <= h2_kernel_majorant(rho) * (1.0 + 1e-9));
      }
    }
    // Conjugation symmetry in t.
    CHECK(std::abs(h2_kernel_integral(1.0, -2.0) - std::conj(h2_kernel_integral(1.0, 2.0))) < 1e-9);
    CHECK_THROWS_AS(h2_kernel_integral(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(h2_kernel_integral(1.0, 0.0), DomainError);
    CHECK(h2_kernel_bound(1.0) == doctest::Approx(std::sqrt(1.0 / std::sinh(1.0) * 2.0)));
  }
}
