#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dirac_atlas/dirac.hpp"
#include "dirac_atlas/ktheory.hpp"
#include "json.hpp"

namespace dirac_atlas::cli {

enum ExitCode : int { kSuccess = 0, kInternalError = 1, kValidationError = 2, kNumericalAmbiguity = 3 };

/// Settings shared by all subcommands. Command-line flags override the
/// values read from `--config`.
struct Config {
  std::optional<std::string> catalog;   // default: $DIRAC_ATLAS_CATALOG, then builtin
  std::string format = "json";          // json | table
  dirac::DegreeRoots degree_roots = dirac::DegreeRoots::Positive;
  std::optional<std::uint64_t> seed;
  ktheory::Tolerances tolerances;       // tau = 1e-9, gap = 1e-6
  double power_tolerance = 1e-6;
};

/// Keys: catalog, format, degree_roots, seed, tolerance {tau, gap, power}.
/// Unknown keys are rejected with ValidationError.
Config config_from_json(const nlohmann::json& j);
Config load_config(const std::string& path);

std::vector<std::string> schema_names();
/// Throws ValidationError for unknown names.
std::string_view schema(const std::string& name);

/// Plain-text rendering used by `--format table`.
std::string render_table(const nlohmann::json& j);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dirac_atlas::cli
