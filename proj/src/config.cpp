#include "coarsekit/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "coarsekit/csv.hpp"
#include "coarsekit/errors.hpp"

#ifndef COARSEKIT_VERSION
#define COARSEKIT_VERSION "unknown"
#endif

namespace coarsekit {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("config: bad value '" + std::string(text) + "' for key '" +
                                std::string(key) + "'");
  }
  return value;
}

}  // namespace

void RunConfig::set(std::string_view key, std::string_view value) {
  key = trim(key);
  if (key == "alpha") {
    params.alpha = parse_number<double>(key, value);
  } else if (key == "beta") {
    params.beta = parse_number<double>(key, value);
  } else if (key == "kappa") {
    params.kappa = parse_number<double>(key, value);
  } else if (key == "half_length") {
    params.half_length = parse_number<double>(key, value);
  } else if (key == "n_grid") {
    solver.n_grid = parse_number<std::size_t>(key, value);
  } else if (key == "dt") {
    solver.dt = parse_number<double>(key, value);
  } else if (key == "stabilization") {
    solver.stabilization = parse_number<double>(key, value);
  } else if (key == "trials") {
    trials = parse_number<std::size_t>(key, value);
  } else if (key == "seed_base") {
    seed_base = parse_number<std::uint64_t>(key, value);
  } else if (key == "t_end") {
    t_end = parse_number<double>(key, value);
  } else if (key == "record_stride") {
    solver.record_stride = parse_number<std::size_t>(key, value);
  } else if (key == "jobs") {
    jobs = parse_number<std::size_t>(key, value);
  } else {
    throw std::invalid_argument("config: unknown key '" + std::string(key) + "'");
  }
}

void RunConfig::validate() const {
  solver.validate(params);
  if (trials == 0) throw DomainError("trials must be positive");
  if (jobs == 0) throw DomainError("jobs must be positive");
  if (!(t_end > 0.0)) throw DomainError("t_end must be positive");
}

RunConfig parse_config(std::istream& in, RunConfig base) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(number) + ": expected key = value");
    }
    base.set(view.substr(0, eq), view.substr(eq + 1));
  }
  return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  return parse_config(in, std::move(base));
}

void write_run_metadata(std::ostream& out, const RunConfig& config, std::uint64_t seed) {
  const auto& p = config.params;
  const auto& s = config.solver;
  out << "version = " << COARSEKIT_VERSION << '\n'
      << "seed = " << seed << '\n'
      << "rng = mt19937_64, Box-Muller\n"
      << "n_grid = " << s.n_grid << '\n'
      << "dt = " << csv::num(s.dt) << '\n'
      << "stabilization = " << csv::num(s.stabilization_for(p)) << '\n'
      << "record_stride = " << s.record_stride << '\n'
      << "t_end = " << csv::num(config.t_end) << '\n'
      << "alpha = " << csv::num(p.alpha) << '\n'
      << "beta = " << csv::num(p.beta) << '\n'
      << "kappa = " << csv::num(p.kappa) << '\n'
      << "half_length = " << csv::num(p.half_length) << '\n';
}

}  // namespace coarsekit
