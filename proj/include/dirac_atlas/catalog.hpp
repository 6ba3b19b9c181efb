#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dirac_atlas/spinmod.hpp"
#include "json.hpp"

namespace dirac_atlas::catalog {

using spinmod::RealPair;

/// Environment variable overriding the shipped catalog.
inline constexpr const char* kCatalogEnv = "DIRAC_ATLAS_CATALOG";
inline constexpr int kCatalogVersion = 1;

class PairCatalog {
 public:
  PairCatalog() = default;
  PairCatalog(int version, std::vector<RealPair> pairs, std::string source);

  int version() const { return version_; }
  const std::string& source() const { return source_; }
  const std::vector<RealPair>& pairs() const { return pairs_; }
  /// Throws ValidationError listing the known names.
  const RealPair& find(const std::string& name) const;

 private:
  int version_ = kCatalogVersion;
  std::vector<RealPair> pairs_;
  std::string source_;
};

/// Entries: {name, g, compact: [[coeffs...]] | "all", lattice, description}
/// or, for rank K < rank G, {name, g, equal_rank: false, k, p_weights}.
PairCatalog parse_catalog(const nlohmann::json& j, std::string source = "inline");
PairCatalog load_catalog_file(const std::string& path);
/// The catalog compiled into the library.
const PairCatalog& builtin_catalog();
std::string_view builtin_catalog_text();
/// Explicit path, else $DIRAC_ATLAS_CATALOG, else the builtin catalog.
PairCatalog resolve_catalog(const std::optional<std::string>& path);

}  // namespace dirac_atlas::catalog
