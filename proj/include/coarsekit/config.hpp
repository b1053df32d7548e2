#pragma once

// Plain-text `key = value` run configuration.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "coarsekit/core_model.hpp"
#include "coarsekit/solver.hpp"

namespace coarsekit {

struct RunConfig {
  ModelParams params;
  SolverConfig solver{.n_grid = 1024};
  std::size_t trials = 5;
  std::uint64_t seed_base = 0;
  double t_end = 100.0;
  std::size_t jobs = 1;

  /// Apply one key; unknown keys and malformed values throw std::invalid_argument.
  void set(std::string_view key, std::string_view value);
  void validate() const;
};

/// Lines are `key = value`; `#` starts a comment; blank lines are skipped.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Metadata sidecar: one `key = value` line per run parameter.
void write_run_metadata(std::ostream& out, const RunConfig& config, std::uint64_t seed);

}  // namespace coarsekit
