#include <cmath>
#include <limits>

#include <doctest.h>

#include "hypnls/errors.hpp"
#include "hypnls/geometry.hpp"

using namespace hypnls;

TEST_SUITE("geometry") {
  TEST_CASE("weights") {
    CHECK(volume_weight(Geometry::Hyperbolic3, 1.0) == doctest::Approx(std::sinh(1.0) * std::sinh(1.0)));
    CHECK(volume_weight(Geometry::Euclidean3, 2.0) == doctest::Approx(4.0));
    CHECK(reduction_weight(Geometry::Hyperbolic3, 0.0) == 0.0);
    CHECK_THROWS_AS(volume_weight(Geometry::Hyperbolic3, -1.0), DomainError);
    CHECK_THROWS_AS(reduction_weight(Geometry::Euclidean3, std::numeric_limits<double>::quiet_NaN()), DomainError);
  }

  TEST_CASE("log weight stays finite far out") {
    const double lw = log_reduction_weight(Geometry::Hyperbolic3, 1000.0);
    CHECK(std::isfinite(lw));
    CHECK(lw == doctest::Approx(1000.0 - std::log(2.0)).epsilon(1e-15));
    CHECK(log_reduction_weight(Geometry::Hyperbolic3, 0.5) == doctest::Approx(std::log(std::sinh(0.5))));
  }

  TEST_CASE("sinhc and r coth near zero") {
    CHECK(sinhc(0.0) == 1.0);
    CHECK(r_coth(0.0) == 1.0);
    CHECK(sinhc(1e-5) == doctest::Approx(1.0 + 1e-10 / 6.0).epsilon(1e-15));
    CHECK(r_coth(2.0) == doctest::Approx(2.0 / std::tanh(2.0)));
    CHECK(r_coth(30.0) == 30.0);
  }

  TEST_CASE("strichartz weights") {
    CHECK(strichartz_weight(3, 2.0) == doctest::Approx(std::sinh(2.0) / 2.0));
    CHECK(strichartz_weight(2, 2.0) == doctest::Approx(std::sqrt(std::sinh(2.0) / (2.0 * 3.0))));
    CHECK(strichartz_weight(3, 0.0) == 1.0);
    CHECK_THROWS_AS(strichartz_weight(4, 1.0), UnsupportedError);
  }

  TEST_CASE("hyperbolic distance") {
    // Law of cosines on H^3.
    for (double x : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
      const double r = 1.3, s = 0.4;
      const double ref = std::acosh(std::cosh(r) * std::cosh(s) - std::sinh(r) * std::sinh(s) * x);
      CHECK(hyperbolic_distance(r, s, x) == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK(hyperbolic_distance(2.0, 2.0, 1.0) == 0.0);
    CHECK(hyperbolic_distance(0.0, 3.0, 0.2) == doctest::Approx(3.0));
    // Opposite directions: the distance is r + s even where cosh overflows.
    CHECK(hyperbolic_distance(400.0, 500.0, -1.0) == doctest::Approx(900.0).epsilon(1e-14));
    CHECK(hyperbolic_distance(400.0, 500.0, 1.0) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK_THROWS_AS(hyperbolic_distance(1.0, 1.0, 1.5), DomainError);
  }

  TEST_CASE("grid") {
    RadialGrid g(40.0, 4096);
    CHECK(g.size() == 4095);
    CHECK(g.node(0) == doctest::Approx(40.0 / 4096));
    CHECK(g.node(g.size() - 1) == doctest::Approx(40.0 - 40.0 / 4096));
    CHECK(g.frequency(0) == doctest::Approx(M_PI / 40.0));
    CHECK_THROWS_AS(RadialGrid(0.0, 10), DomainError);
    CHECK_THROWS_AS(RadialGrid(1.0, 1), DomainError);
  }

  TEST_CASE("admissible pairs") {
    const auto p = AdmissiblePair::from_q(3, 6.0);
    CHECK(p.p == doctest::Approx(2.0));
    CHECK(AdmissiblePair::is_admissible(3, std::numeric_limits<double>::infinity(), 2.0));
    CHECK_FALSE(AdmissiblePair::is_admissible(3, 2.0, 7.0));
    CHECK_FALSE(AdmissiblePair::is_admissible(2, 2.0, std::numeric_limits<double>::infinity()));
    CHECK(dispersive_exponent(4.0) == doctest::Approx(0.75));
    CHECK(dispersive_exponent(2.0) == 0.0);
  }
}
