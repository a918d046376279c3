#include <cmath>

#include <doctest.h>

#include "hypnls/data.hpp"
#include "hypnls/errors.hpp"
#include "hypnls/nls.hpp"
#include "hypnls/propagators.hpp"
#include "hypnls/spectral.hpp"

using namespace hypnls;

TEST_SUITE("nls") {
  TEST_CASE("solver config validation") {
    SolverConfig c;
    c.dt = 0.01;
    c.t_end = 1.0;
    c.snapshot_times = {0.5, 1.0};
    CHECK_NOTHROW(c.validate(Geometry::Hyperbolic3));
    c.snapshot_times = {0.505};
    CHECK_THROWS_AS(c.validate(Geometry::Hyperbolic3), DomainError);
    c.snapshot_times = {};
    c.kappa = 0.5;
    CHECK_THROWS_AS(c.validate(Geometry::Hyperbolic3), DomainError);
    c.kappa = 1.0;
    c.sigma = 2.0;
    CHECK_THROWS_AS(c.validate(Geometry::Hyperbolic3), DomainError);
    c.allow_supercritical = true;
    CHECK_NOTHROW(c.validate(Geometry::Hyperbolic3));
    CHECK(c.steps_to(0.3) == 30);
    CHECK(uniform_snapshots(0.0, 1.0, 0.25).size() == 5);
  }

  TEST_CASE("linear evolution reproduces the free flow") {
    const auto disc = Discretization::make(RadialGrid(40.0, 1024), Geometry::Hyperbolic3);
    const auto u0 = make_field(disc, GaussianBump{3.0, 1.0, 1.0, 0.0});
    SolverConfig c;
    c.kappa = 0.0;
    c.dt = 0.01;
    c.t_end = 0.5;
    c.snapshot_times = {0.5};
    const auto traj = evolve(u0, c);
    REQUIRE(traj.completed());
    CHECK(std::sqrt(mass(traj.at(0.5) - free_evolve(u0, 0.5)) / mass(u0)) < 1e-12);
    CHECK(traj.size() == 1);
    CHECK_THROWS_AS(traj.at(0.25), LookupError);
  }

  TEST_CASE("nonlinear step is a pointwise phase rotation") {
    const auto disc = Discretization::make(RadialGrid(10.0, 128), Geometry::Euclidean3);
    const auto u = make_field(disc, GaussianBump{2.0, 1.0, 1.5, 0.0});
    const auto w = nonlinear_step(u, 0.1, 1.0, 1.0);
    for (int j = 0; j < u.size(); j += 13) {
      const complex ref = u.value(j) * std::polar(1.0, -0.1 * std::norm(u.value(j)));
      CHECK(std::abs(w.value(j) - ref) < 1e-14);
    }
  }

  TEST_CASE("mass and energy conservation, second order in dt") {
    const auto disc = Discretization::make(RadialGrid(40.0, 2048), Geometry::Hyperbolic3);
    const auto u0 = make_field(disc, GaussianBump{3.0, 1.0, 1.0, 0.0});
    double drift[2];
    for (int i = 0; i < 2; ++i) {
      SolverConfig c;
      c.dt = i == 0 ? 0.004 : 0.002;
      c.t_end = 1.0;
      c.snapshot_times = uniform_snapshots(0.0, 1.0, 0.1);
      const auto traj = evolve(u0, c);
      REQUIRE(traj.completed());
      drift[i] = 0.0;
      for (const auto& r : traj.records()) {
        CHECK(std::abs(r.mass - traj.records()[0].mass) < 1e-12 * r.mass);
        drift[i] = std::max(drift[i], std::abs(r.energy - traj.records()[0].energy));
      }
    }
    CHECK(drift[0] / drift[1] == doctest::Approx(4.0).epsilon(0.15));
  }

  TEST_CASE("extended precision stepping") {
    const auto disc = Discretization::make(RadialGrid(40.0, 1024), Geometry::Hyperbolic3);
    const auto u0 = make_field(disc, GaussianBump{3.0, 1.0, 1.0, 0.0});
    SolverConfig c;
    c.dt = 1e-3;
    c.t_end = 1.0;
    c.snapshot_times = {1.0};
    const auto plain = evolve(u0, c);
    c.extended_precision = true;
    const auto ext = evolve(u0, c);
    REQUIRE(plain.completed());
    REQUIRE(ext.completed());
    const auto& a = plain.fields().back();
    const auto& b = ext.fields().back();
    CHECK(std::sqrt(mass(a - b) / mass(b)) < 1e-10);
    CHECK(std::abs(mass(b) - mass(u0)) / mass(u0) < 1e-14);
  }

  TEST_CASE("energy parts") {
    const auto disc = Discretization::make(RadialGrid(40.0, 2048), Geometry::Euclidean3);
    const auto u = make_field(disc, GaussianBump{3.0, 1.0, 1.0, 0.0});
    const auto e = energy(u, 1.0, 1.0);
    // On R^3 the kinetic part is ||grad u||^2 while the H^1 norm adds the mass.
    CHECK(e.kinetic + mass(u) == doctest::Approx(std::pow(sobolev_norm(u, 1.0), 2)).epsilon(1e-12));
    CHECK(e.potential > 0.0);
    CHECK(energy(u, 1.0, -1.0).potential == doctest::Approx(-e.potential));
  }

  TEST_CASE("boundary reflection aborts the run") {
    const auto disc = Discretization::make(RadialGrid(10.0, 512), Geometry::Hyperbolic3);
    const auto u0 = make_field(disc, GaussianBump{3.0, 0.5, 1.0, 4.0});
    SolverConfig c;
    c.dt = 0.01;
    c.t_end = 5.0;
    c.snapshot_times = uniform_snapshots(0.0, 5.0, 0.5);
    const auto traj = evolve(u0, c);
    CHECK(traj.status() == TerminationStatus::BoundaryReflection);
    CHECK(traj.last_valid_time() < 5.0);
    CHECK_FALSE(traj.message().empty());
  }

  TEST_CASE("tail window") {
    CHECK(tail_window(RadialGrid(40.0, 100)) == 5.0);
    CHECK(tail_window(RadialGrid(8.0, 100)) == 2.0);
  }
}
