#include <cmath>

#include <doctest.h>

#include "../oracles.hpp"
#include "hypnls/data.hpp"
#include "hypnls/diagnostics.hpp"
#include "hypnls/errors.hpp"
#include "hypnls/propagators.hpp"
#include "hypnls/spectral.hpp"

using namespace hypnls;

namespace {

Trajectory run(const RadialField& u0, double sigma, double kappa, double dt, double t_end, double every) {
  SolverConfig c;
  c.sigma = sigma;
  c.kappa = kappa;
  c.dt = dt;
  c.t_end = t_end;
  c.snapshot_times = uniform_snapshots(0.0, t_end, every);
  return evolve(u0, c);
}

}  // namespace

TEST_SUITE("diagnostics") {
  TEST_CASE("power law fit") {
    std::vector<double> t{1, 2, 4, 8}, y;
    for (double x : t) y.push_back(3.0 * std::pow(x, -1.5));
    const auto fit = fit_power_law(t, y);
    CHECK(fit.exponent == doctest::Approx(-1.5));
    CHECK(fit.prefactor == doctest::Approx(3.0));
    CHECK(fit.points == 4);
    CHECK(std::abs(fit.max_residual) < 1e-12);
    CHECK_THROWS_AS(fit_power_law(std::vector<double>{1.0}, std::vector<double>{1.0}), DegenerateInputError);
  }

  TEST_CASE("linear flow has no scattering defect") {
    const auto disc = Discretization::make(RadialGrid(40.0, 1024), Geometry::Hyperbolic3);
    const auto traj = run(make_field(disc, GaussianBump{3.0, 1.0, 1.0, 0.0}), 1.0, 0.0, 0.01, 2.0, 0.5);
    CHECK(scattering_defect(traj, 0.5, 2.0) < 1e-13 * std::sqrt(mass(traj.at(0.0))));
  }

  TEST_CASE("scattering defects form a metric") {
    const auto disc = Discretization::make(RadialGrid(200.0, 4096), Geometry::Hyperbolic3);
    const auto traj = run(make_field(disc, GaussianBump{0.0, 1.0, 2.0, 0.0}), 1.0, 1.0, 0.01, 4.0, 1.0);
    const auto rep = scattering_report(traj, {1.0, 2.0, 4.0});
    CHECK(rep.defects[0][2] <= rep.defects[0][1] + rep.defects[1][2] + 1e-15);
    CHECK(rep.defects[1][0] == rep.defects[0][1]);
    CHECK(rep.defects[0][1] > 0.0);
    REQUIRE(rep.u_plus.has_value());
  }

  TEST_CASE("nonlinear pairing") {
    const auto disc = Discretization::make(RadialGrid(40.0, 1024), Geometry::Euclidean3);
    const auto u0 = make_field(disc, GaussianBump{2.0, 1.0, 1.0, 0.0});
    const auto traj = run(u0, 1.0, 1.0, 0.01, 0.1, 0.1);
    // At t = 0 the pairing with psi = u0 is ||u0||_{L^4}^4.
    CHECK(std::abs(nonlinear_pairing(traj, u0, 0.0) - std::pow(lq_norm(u0, 4.0, false), 4)) < 1e-12 * std::pow(lq_norm(u0, 4.0, false), 4));
  }

  TEST_CASE("L^q norms") {
    const auto disc = Discretization::make(RadialGrid(30.0, 4096), Geometry::Hyperbolic3);
    const auto f = make_field(disc, GaussianBump{3.0, 1.0, 1.0, 0.0});
    const auto u = [](double r) { return std::exp(-(r - 3.0) * (r - 3.0)); };
    const double ref4 = 4.0 * M_PI * oracle::simpson([&](double r) { return std::pow(u(r), 4) * std::pow(std::sinh(r), 2); }, 0.0, 12.0, 20000);
    CHECK(std::pow(lq_norm(f, 4.0, false), 4) == doctest::Approx(ref4).epsilon(1e-10));
    // Weighted: |w_3^{1/2} u|^4 dV = |u|^4 sinh^2 r (sinh r / r)^2 dr.
    const double refw = 4.0 * M_PI * oracle::simpson([&](double r) { return std::pow(u(r), 4) * std::pow(std::sinh(r), 4) / std::max(r * r, 1e-300); }, 1e-12, 12.0, 20000);
    CHECK(std::pow(lq_norm(f, 4.0, true), 4) == doctest::Approx(refw).epsilon(1e-9));
    CHECK(lq_norm(f, 2.0, true) == doctest::Approx(std::sqrt(mass(f))).epsilon(1e-13));
  }

  TEST_CASE("space-time norm needs enough snapshots") {
    const auto disc = Discretization::make(RadialGrid(40.0, 512), Geometry::Hyperbolic3);
    const auto u0 = make_field(disc, GaussianBump{3.0, 1.0, 1.0, 0.0});
    CHECK_THROWS_AS(spacetime_norm(run(u0, 1.0, 0.0, 0.01, 1.0, 0.1), 2.0, 6.0, true), ResolutionError);
    const auto traj = run(u0, 1.0, 0.0, 0.01, 1.0, 0.05);
    // p = q = 2: int ||u||^2 dt = T ||u0||^2 on the linear flow.
    CHECK(std::pow(spacetime_norm(traj, 2.0, 2.0, false), 2) == doctest::Approx(mass(u0)).epsilon(1e-12));
  }

  TEST_CASE("interaction momentum against brute-force quadrature") {
    const auto disc = Discretization::make(RadialGrid(10.0, 512), Geometry::Hyperbolic3);
    const auto f = make_field(disc, GaussianBump{3.0, 1.0, 1.0, 0.5});
    const double ref = oracle::interaction_momentum({f.reduced().begin(), f.reduced().end()}, f.grid().spacing());
    const double exact = interaction_momentum(f, MomentumMethod::Exact);
    const double quad = interaction_momentum(f, MomentumMethod::Quadrature);
    CHECK(std::abs(exact - ref) < 1e-4 * std::abs(ref));
    CHECK(std::abs(quad - ref) < 1e-4 * std::abs(ref));
    // A real field carries no current.
    CHECK(std::abs(interaction_momentum(make_field(disc, GaussianBump{3.0, 1.0, 1.0, 0.0}))) < 1e-12 * std::abs(ref));
    const auto e = Discretization::make(RadialGrid(10.0, 64), Geometry::Euclidean3);
    CHECK_THROWS_AS(interaction_momentum(make_field(e, GaussianBump{})), UnsupportedError);
  }

  TEST_CASE("Morawetz bootstrap on the linear and defocusing flows") {
    // Without the nonlinearity the momentum is nondecreasing; with it the integrated inequality holds.
    const auto disc = Discretization::make(RadialGrid(60.0, 2048), Geometry::Hyperbolic3);
    const auto u0 = make_field(disc, GaussianBump{3.0, 1.0, 1.0, -0.5});
    const auto lin = run(u0, 1.0, 0.0, 0.01, 2.0, 0.1);
    double prev = -1e300;
    for (const auto& f : lin.fields()) {
      const double m = interaction_momentum(f);
      CHECK(m >= prev);
      prev = m;
    }
    const auto nl = run(u0, 1.0, 1.0, 0.01, 2.0, 0.1);
    REQUIRE(nl.completed());
    const auto rec = morawetz_check(nl, 2.0);
    CHECK(rec.margin >= 0.0);
    CHECK(rec.sharp_rhs == doctest::Approx(8.0 * M_PI * rec.rhs));
    CHECK(rec.momentum_ratio > 0.0);
    CHECK(std::isfinite(rec.momentum_ratio));
  }

  TEST_CASE("Galilean operator against finite differences") {
    const auto disc = Discretization::make(RadialGrid(20.0, 4096), Geometry::Hyperbolic3);
    const auto f = make_field(disc, GaussianBump{3.0, 1.0, 1.0, 0.7});
    const double t = 1.3;
    const auto Jf = galilean_apply(f, t);
    const std::vector<complex> v(f.reduced().begin(), f.reduced().end());
    const auto dv = oracle::derivative(v, disc->grid().spacing());
    double err = 0.0, scale = 0.0;
    for (int j = 0; j < f.size(); ++j) {
      const complex ref = disc->grid().node(j) * v[j] + complex(0.0, 2.0 * t) * dv[j];
      err = std::max(err, std::abs(Jf.reduced()[j] - ref));
      scale = std::max(scale, std::abs(ref));
    }
    // The bump is not even in r, so both derivatives lose accuracy next to the origin.
    CHECK(err < 1e-7 * scale);
    const auto J0 = galilean_apply(f, 0.0);
    CHECK(std::abs(J0.value(100) - disc->grid().node(100) * f.value(100)) < 1e-14);
  }

  TEST_CASE("Heisenberg identity on the linear flow") {
    const auto disc = Discretization::make(RadialGrid(200.0, 4096), Geometry::Hyperbolic3);
    const auto u0 = make_field(disc, GaussianBump{3.0, 1.0, 1.0, 0.0});
    const double ref = galilean_norm(galilean_apply(u0, 0.0));
    for (double t : {0.5, 2.0, 8.0}) {
      const auto u = free_evolve(u0, t);
      CHECK(galilean_norm(galilean_apply(u, t)) == doctest::Approx(ref).epsilon(1e-7));
      CHECK(weighted_gn_ratio(u, galilean_apply(u, t), t, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(weighted_gn_ratio(u0, u0, 0.0, 4.0), DomainError);
    CHECK_THROWS_AS(weighted_gn_ratio(u0, u0, 1.0, 6.0), DomainError);
  }

  TEST_CASE("pseudo-conformal functional") {
    const auto disc = Discretization::make(RadialGrid(40.0, 1024), Geometry::Hyperbolic3);
    const auto zero = RadialField::zeros(disc);
    const auto z = pseudo_conformal(zero, zero, 1.0, 1.0);
    CHECK(z.Q == 0.0);
    CHECK(z.RHS == 0.0);
    const auto f = make_field(disc, GaussianBump{2.0, 1.0, 1.0, 0.0});
    CHECK(pseudo_conformal(f, galilean_apply(f, 0.5), 0.5, 1.0).RHS < 0.0);
    CHECK_THROWS_AS(pseudo_conformal(f, f, 1.0, 0.0), DomainError);
  }
}
