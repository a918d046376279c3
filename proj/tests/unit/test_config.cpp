#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "hypnls/config.hpp"
#include "hypnls/errors.hpp"
#include "hypnls/experiments.hpp"

using namespace hypnls;
namespace fs = std::filesystem;

TEST_SUITE("config") {
  TEST_CASE("parsing") {
    const auto c = Config::from_text("# comment\ngrid.R = 40   # trailing\n\nsolver.sigma=1/3\n");
    CHECK(c.entries().at("grid.R") == "40");
    CHECK(parse_number("solver.sigma", c.entries().at("solver.sigma")) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(Config::from_text("a = 1\na = 2\n"), ConfigError);
    CHECK_THROWS_AS(Config::from_text("just words\n"), ConfigError);
    CHECK_THROWS_AS(parse_number("k", "1/0"), ConfigError);
    CHECK(parse_number_list("k", "1, 2.5,4").size() == 3);
  }

  TEST_CASE("resolution against a schema") {
    std::vector<KeyEntry> schema{{"a", KeyType::Number, "1"}, {"b", KeyType::Integer, "2"}, {"c", KeyType::Flag, "false"}};
    Config user;
    user.apply_override("a=2.5");
    ResolvedConfig r(schema, user);
    CHECK(r.number("a") == 2.5);
    CHECK(r.integer("b") == 2);
    CHECK_FALSE(r.flag("c"));
    CHECK(r.serialize() == "a = 2.5\nb = 2\nc = false\n");
    user.set("d", "1");
    CHECK_THROWS_AS(ResolvedConfig(schema, user), ConfigError);
    Config bad;
    bad.set("b", "2.5");
    CHECK_THROWS_AS(ResolvedConfig(schema, bad), ConfigError);
  }

  TEST_CASE("experiments validate before running") {
    Config user;
    user.set("grid.N", "2");
    CHECK_THROWS_AS(PreparedExperiment("evolve", user), ConfigError);
    Config sigma;
    sigma.set("solver.sigma", "2.5");
    CHECK_THROWS_AS(PreparedExperiment("evolve", sigma), ConfigError);
    Config snap;
    snap.set("solver.snapshot_every", "0.3");
    CHECK_THROWS_AS(PreparedExperiment("evolve", snap), ConfigError);
    Config wrong;
    wrong.set("experiment", "scatter");
    CHECK_THROWS_AS(PreparedExperiment("evolve", wrong), ConfigError);
    CHECK_THROWS_AS(PreparedExperiment("nope", Config{}), ConfigError);
    CHECK_NOTHROW(PreparedExperiment("longrange", Config{}));
  }

  TEST_CASE("output directory handling and exit codes") {
    const auto dir = fs::temp_directory_path() / "hypnls_unit_out";
    fs::remove_all(dir);
    Config user;
    user.set("grid.N", "256");
    user.set("selftest.fields", "2");
    std::string msg;
    CHECK(run_experiment_to_directory("selftest", user, dir.string(), false, &msg) == kExitOk);
    CHECK(fs::exists(dir / "series.csv"));
    CHECK(fs::exists(dir / "summary.json"));
    CHECK(fs::exists(dir / "resolved.cfg"));
    CHECK(run_experiment_to_directory("selftest", user, dir.string(), false, &msg) == kExitConfigError);
    CHECK(run_experiment_to_directory("selftest", user, dir.string(), true, &msg) == kExitOk);
    // The resolved config reproduces the run.
    const auto again = Config::from_file((dir / "resolved.cfg").string());
    CHECK(run_experiment_to_directory("selftest", again, dir.string(), true, &msg) == kExitOk);
    user.set("selftest.tolerance", "1e-30");
    CHECK(run_experiment_to_directory("selftest", user, dir.string(), true, &msg) == kExitCheckFailed);
    fs::remove_all(dir);
  }

  TEST_CASE("runtime abort maps to exit code 3") {
    const auto dir = fs::temp_directory_path() / "hypnls_unit_abort";
    fs::remove_all(dir);
    Config user;
    for (auto [k, v] : {std::pair{"grid.R", "10"}, {"grid.N", "512"}, {"solver.t_end", "5"}, {"solver.dt", "0.01"},
                        {"solver.snapshot_every", "0.5"}, {"data.phase_slope", "4"}, {"data.width", "0.5"}}) {
      user.set(k, v);
    }
    std::string msg;
    CHECK(run_experiment_to_directory("evolve", user, dir.string(), true, &msg) == kExitRuntimeAbort);
    CHECK(msg.find("boundary_reflection") != std::string::npos);
    fs::remove_all(dir);
  }

  TEST_CASE("csv formatting") {
    SeriesTable t;
    t.columns = {"a", "b"};
    t.add_row({1.0, std::nullopt});
    t.add_row({0.1, 2.0});
    CHECK(t.to_csv() == "a,b\n1,\n0.10000000000000001,2\n");
    CHECK_THROWS(t.add_row({1.0}));
  }
}
