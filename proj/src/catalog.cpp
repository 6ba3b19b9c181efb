#include "dirac_atlas/catalog.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "dirac_atlas/embedded_data.hpp"
#include "dirac_atlas/error.hpp"

namespace dirac_atlas::catalog {

PairCatalog::PairCatalog(int version, std::vector<RealPair> pairs, std::string source)
    : version_(version), pairs_(std::move(pairs)), source_(std::move(source)) {}

const RealPair& PairCatalog::find(const std::string& name) const {
  for (const auto& p : pairs_)
    if (p.name == name) return p;
  std::string known;
  for (const auto& p : pairs_) known += (known.empty() ? "" : ", ") + p.name;
  throw ValidationError("unknown pair '" + name + "' (catalog has: " + known + ")");
}

namespace {

const std::set<std::string> kEntryKeys = {"name", "g", "compact", "lattice", "description", "equal_rank", "k",
                                          "p_weights"};

RealPair parse_entry(const nlohmann::json& e) {
  if (!e.is_object()) throw ValidationError("catalog entries must be objects");
  for (const auto& [key, value] : e.items())
    if (!kEntryKeys.count(key)) throw ValidationError("unknown catalog key '" + key + "'");
  const auto name = e.at("name").get<std::string>();
  const auto g = rootsys::CartanType::parse(e.at("g").get<std::string>());
  const auto lattice = spinmod::parse_lattice(e.value("lattice", std::string("weight")));

  RealPair pair;
  if (!e.value("equal_rank", true)) {
    const auto k = rootsys::CartanType::parse(e.at("k").get<std::string>());
    std::vector<Weight> weights;
    for (const auto& w : e.at("p_weights")) weights.push_back(rootsys::weight_from_json(w));
    pair = spinmod::build_unequal_rank_pair(g, k, std::move(weights), name, lattice);
  } else {
    const auto& compact = e.at("compact");
    if (compact.is_string()) {
      if (compact.get<std::string>() != "all") throw ValidationError("'compact' must be a list or \"all\"");
      pair = spinmod::with_lattice(spinmod::fully_compact_pair(g, name), lattice);
    } else {
      pair = spinmod::build_pair(g, compact.get<std::vector<std::vector<long>>>(), name, lattice);
    }
  }
  pair.description = e.value("description", std::string());
  return pair;
}

}  // namespace

PairCatalog parse_catalog(const nlohmann::json& j, std::string source) {
  try {
    if (!j.is_object()) throw ValidationError("catalog must be a JSON object");
    for (const auto& [key, value] : j.items())
      if (key != "version" && key != "pairs") throw ValidationError("unknown catalog key '" + key + "'");
    const int version = j.at("version").get<int>();
    if (version != kCatalogVersion)
      throw ValidationError("unsupported catalog version " + std::to_string(version));
    std::vector<RealPair> pairs;
    std::set<std::string> names;
    for (const auto& e : j.at("pairs")) {
      pairs.push_back(parse_entry(e));
      if (!names.insert(pairs.back().name).second)
        throw ValidationError("duplicate catalog name '" + pairs.back().name + "'");
    }
    return PairCatalog(version, std::move(pairs), std::move(source));
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError("malformed catalog (" + source + "): " + ex.what());
  }
}

PairCatalog load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open catalog '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError("catalog '" + path + "' is not valid JSON: " + ex.what());
  }
  return parse_catalog(j, path);
}

std::string_view builtin_catalog_text() { return embedded::kPairsJson; }

const PairCatalog& builtin_catalog() {
  static const PairCatalog catalog = parse_catalog(nlohmann::json::parse(embedded::kPairsJson), "builtin");
  return catalog;
}

PairCatalog resolve_catalog(const std::optional<std::string>& path) {
  if (path) return load_catalog_file(*path);
  if (const char* env = std::getenv(kCatalogEnv); env && *env) return load_catalog_file(env);
  return builtin_catalog();
}

}  // namespace dirac_atlas::catalog
