#pragma once

#include <string>
#include <optional>
#include <variant>
#include <vector>

#include "json.hpp"

#include "dirac_atlas/spinmod.hpp"

namespace dirac_atlas::dirac {

using repring::IrrLabel;
using rootsys::RootSystem;
using spinmod::Lattice;
using spinmod::RealPair;

/// Root set the formal-degree product runs over. `Positive` (default) is
/// all positive roots of g; `Simple` is the simple roots only.
enum class DegreeRoots { Positive, Simple };

DegreeRoots parse_degree_roots(const std::string& name);
std::string degree_roots_name(DegreeRoots r);

struct DiscreteSeriesParameter {
  std::string pair;
  Weight lambda;             // regular for g
  IrrLabel min_k_type;       // mu = lambda - rho_K
  Rational formal_degree;    // |signed_trace| > 0
  Rational signed_trace;     // prod (lambda, alpha) / (rho, alpha)
  std::size_t chamber_id = 0;
  bool on_lattice = true;    // mu lies in the pair's lattice
};

enum class ExclusionReason { Singular, UnequalRank, OddParity };
std::string reason_name(ExclusionReason r);

struct Exclusion {
  ExclusionReason reason;
  Weight lambda;  // empty unless the reason is Singular
};

using InductionResult = std::variant<DiscreteSeriesParameter, Exclusion>;

/// Deterministic numbering of the Weyl chambers of a root system: chamber
/// w(C) gets the breadth-first index of w(rho) in the orbit of rho.
class ChamberIndex {
 public:
  explicit ChamberIndex(const RootSystem& rs);
  /// Throws ValidationError for singular lambda.
  std::size_t chamber_of(const Weight& lambda) const;
  std::size_t size() const { return orbit_.size(); }

 private:
  const RootSystem* rs_;
  std::vector<Weight> orbit_;
  std::map<Weight, std::size_t> index_;
};

std::size_t chamber_of(const Weight& lambda, const RootSystem& rs);

/// Signed product prod_{alpha in roots} (lambda, alpha) / (rho, alpha) over
/// g's positive (or simple) roots. Throws ValidationError for singular lambda.
Rational formal_degree(const Weight& lambda, const RealPair& pair, DegreeRoots roots = DegreeRoots::Positive);

/// V -> lambda = mu + rho_K, with the rank, parity and singularity
/// exclusions. Throws ValidationError when mu is not K-dominant integral.
InductionResult dirac_induct(const IrrLabel& v, const RealPair& pair, DegreeRoots roots = DegreeRoots::Positive);

/// All K-dominant mu in the pair's lattice (or `lattice` when given) with
/// (mu + rho_K, mu + rho_K) <= bound whose induction succeeds, sorted by
/// (|lambda|^2, graded-lex lambda).
std::vector<DiscreteSeriesParameter> enumerate_discrete_series(const RealPair& pair, const Rational& bound,
                                                               DegreeRoots roots = DegreeRoots::Positive,
                                                               std::optional<Lattice> lattice = std::nullopt);

/// dim (V* (x) S* (x) H)^K for a fully compact pair, where S is trivial.
repring::Multiplicity pairing_compact_oracle(const IrrLabel& h, const IrrLabel& v, const RealPair& pair);

bool is_fully_compact(const RealPair& pair);

nlohmann::json to_json(const DiscreteSeriesParameter& p);
nlohmann::json to_json(const InductionResult& r);

}  // namespace dirac_atlas::dirac
