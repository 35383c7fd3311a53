#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hardy::cli {

enum class Engine { Auto, ClosedForm, Wos };

struct CliConfig {
  std::string command;
  std::string domain_path;
  Engine engine = Engine::Auto;
  std::optional<double> r_min;  // default: half the distance from the base point to the boundary
  std::optional<double> r_max;  // default: 1e5 times the complement reach
  unsigned points_per_decade = 8;
  std::optional<std::size_t> walks;
  std::optional<std::uint64_t> seed;
  std::optional<double> epsilon_shell;
  std::optional<std::size_t> wos_nodes;
  std::string output_path;
  double slope_tol = 0.05;
  double infinity_cap = 50.0;
  std::vector<double> alphas{-0.5, 0.0, 1.0, 2.0};
  std::string space;
  std::string function;
  std::string include_from;
  std::string include_to;
  double a = 0.0;
  double b = 0.0;
  std::size_t samples = 10000;
  std::vector<int> only;

  /// Throws Error(InvalidSpec) on inconsistent combinations.
  void validate() const;
};

/// Parses the command line and runs it. Returns 0 on success, 1 when a computation is
/// inconclusive or verification fails, 2 on usage or spec errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs an already parsed configuration.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace hardy::cli
