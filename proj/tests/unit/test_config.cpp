#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "coarsekit/config.hpp"

using namespace coarsekit;
namespace fs = std::filesystem;

namespace {

std::string meta_from_cli(const fs::path& dir, const std::string& env, const std::string& args) {
  const auto out = dir / "traj.csv";
  const std::string cmd = env + " " + std::string(COARSEKIT_CLI_PATH) +
                          " simulate --t-end 0.01 --n-grid 64 -o " + out.string() + " " + args +
                          " >/dev/null 2>&1";
  if (std::system(cmd.c_str()) != 0) return {};
  std::ifstream in(dir / "traj.csv.meta");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double value_of(const std::string& meta, const std::string& key) {
  const auto pos = meta.find(key + " = ");
  if (pos == std::string::npos) return -1.0;
  return std::stod(meta.substr(pos + key.size() + 3));
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("defaults") {
  const RunConfig c;
  CHECK(c.params.kappa == 1e-3);
  CHECK(c.solver.n_grid == 1024);
  CHECK(c.solver.dt == 1e-3);
  CHECK(c.trials == 5);
  CHECK(c.t_end == 100.0);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("parse keys, comments and blank lines") {
  std::istringstream in(
      "# comment\n"
      "kappa = 1e-4\n"
      "\n"
      "n_grid=2048   # trailing\n"
      "  trials = 7\n"
      "seed_base = 12\n"
      "t_end = 3.5\n"
      "stabilization = 2.5\n"
      "record_stride = 10\n"
      "jobs = 4\n"
      "half_length = 2\n"
      "alpha = 1.5\n"
      "beta = 0.5\n"
      "dt = 1e-4\n");
  const RunConfig c = parse_config(in);
  CHECK(c.params.kappa == 1e-4);
  CHECK(c.solver.n_grid == 2048);
  CHECK(c.trials == 7);
  CHECK(c.seed_base == 12);
  CHECK(c.t_end == 3.5);
  CHECK(c.solver.stabilization == 2.5);
  CHECK(c.solver.record_stride == 10);
  CHECK(c.jobs == 4);
  CHECK(c.params.half_length == 2.0);
  CHECK(c.params.alpha == 1.5);
  CHECK(c.params.beta == 0.5);
  CHECK(c.solver.dt == 1e-4);
}

TEST_CASE("bad input") {
  RunConfig c;
  CHECK_THROWS_AS(c.set("colour", "red"), std::invalid_argument);
  CHECK_THROWS_AS(c.set("kappa", "abc"), std::invalid_argument);
  CHECK_THROWS_AS(c.set("kappa", "1e-3x"), std::invalid_argument);
  CHECK_THROWS_AS(c.set("trials", "-2"), std::invalid_argument);
  std::istringstream missing_eq("kappa 1e-3\n");
  CHECK_THROWS_AS(parse_config(missing_eq), std::invalid_argument);
  CHECK_THROWS(load_config("/nonexistent/coarsekit.cfg"));
}

TEST_CASE("validation") {
  RunConfig c;
  c.trials = 0;
  CHECK_THROWS(c.validate());
  c = RunConfig{};
  c.params.kappa = -1.0;
  CHECK_THROWS(c.validate());
  c = RunConfig{};
  c.solver.dt = 0.0;
  CHECK_THROWS(c.validate());
}

TEST_CASE("metadata sidecar") {
  RunConfig c;
  c.solver.n_grid = 512;
  std::ostringstream out;
  write_run_metadata(out, c, 17);
  const std::string s = out.str();
  for (const char* key : {"version = ", "seed = 17\n", "n_grid = 512\n", "dt = 0.001\n",
                          "stabilization = 2\n", "kappa = 0.001\n", "rng = "}) {
    CHECK(s.find(key) != std::string::npos);
  }
}

TEST_CASE("environment file, then command-line flags") {
  const fs::path dir = fs::temp_directory_path() / "coarsekit_config_test";
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.cfg";
  std::ofstream(cfg) << "kappa = 2e-3\ndt = 5e-4\n";

  const std::string from_env = meta_from_cli(dir, "COARSEKIT_CONFIG=" + cfg.string(), "");
  CHECK(value_of(from_env, "kappa") == 2e-3);
  CHECK(value_of(from_env, "dt") == 5e-4);

  const std::string overridden =
      meta_from_cli(dir, "COARSEKIT_CONFIG=" + cfg.string(), "--dt 2e-4");
  CHECK(value_of(overridden, "kappa") == 2e-3);
  CHECK(value_of(overridden, "dt") == 2e-4);

  const std::string explicit_file = meta_from_cli(dir, "COARSEKIT_CONFIG=/nonexistent",
                                                  "--config " + cfg.string());
  CHECK(value_of(explicit_file, "kappa") == 2e-3);

  fs::remove_all(dir);
}

}
