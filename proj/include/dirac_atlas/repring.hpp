#pragma once

#include <map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dirac_atlas/rootsys.hpp"

namespace dirac_atlas::repring {

using rootsys::RootSystem;
using rootsys::RootSystemPtr;

using Multiplicity = long long;

/// Element of R(T): finite map weight -> integer multiplicity over the
/// torus of `ambient`. Zero multiplicities are never stored.
class VirtualCharacter {
 public:
  explicit VirtualCharacter(RootSystemPtr ambient);

  const RootSystem& ambient() const { return *ambient_; }
  const RootSystemPtr& ambient_ptr() const { return ambient_; }
  const std::map<Weight, Multiplicity>& terms() const { return terms_; }

  Multiplicity multiplicity(const Weight& w) const;
  void add(const Weight& w, Multiplicity m);
  bool is_zero() const { return terms_.empty(); }

  VirtualCharacter& operator+=(const VirtualCharacter& other);
  VirtualCharacter& operator-=(const VirtualCharacter& other);
  VirtualCharacter& operator*=(Multiplicity c);
  friend VirtualCharacter operator+(VirtualCharacter a, const VirtualCharacter& b) { return a += b; }
  friend VirtualCharacter operator-(VirtualCharacter a, const VirtualCharacter& b) { return a -= b; }
  friend VirtualCharacter operator*(VirtualCharacter a, Multiplicity c) { return a *= c; }
  VirtualCharacter operator-() const;
  friend bool operator==(const VirtualCharacter& a, const VirtualCharacter& b);

 private:
  void check_ambient(const VirtualCharacter& other) const;

  RootSystemPtr ambient_;
  std::map<Weight, Multiplicity> terms_;
};

/// Same form and same simple roots.
bool same_ambient(const RootSystem& a, const RootSystem& b);

struct IrrLabel {
  Weight highest_weight;
  friend bool operator==(const IrrLabel&, const IrrLabel&) = default;
};

VirtualCharacter trivial_character(RootSystemPtr ambient);

/// Multiplicities of the dominant weights of V(mu), by Freudenthal's
/// recursion. Requires mu dominant and integral for `rs`.
std::map<Weight, Multiplicity> dominant_weight_multiplicities(const Weight& mu, const RootSystem& rs);

/// Full character of the irreducible with highest weight mu.
VirtualCharacter irr_character(const IrrLabel& mu, RootSystemPtr ambient);

/// prod_{alpha > 0} (mu + rho, alpha) / (rho, alpha), exactly.
Rational weyl_dimension(const Weight& mu, const RootSystem& rs);

Multiplicity dimension(const VirtualCharacter& chi);

VirtualCharacter product(const VirtualCharacter& a, const VirtualCharacter& b);

VirtualCharacter dual(const VirtualCharacter& chi);

/// Multiplicities constant along every simple reflection.
bool is_weyl_invariant(const VirtualCharacter& chi);

/// Formal combination of irreducibles, sorted by graded-lex highest weight.
/// Throws ValidationError on non-Weyl-invariant input.
std::vector<std::pair<IrrLabel, Multiplicity>> decompose(const VirtualCharacter& chi);

/// sum_i m_i * irr_character(mu_i)
VirtualCharacter resum(const std::vector<std::pair<IrrLabel, Multiplicity>>& parts, RootSystemPtr ambient);

/// Coefficient of the trivial representation in decompose(chi).
Multiplicity invariant_multiplicity(const VirtualCharacter& chi);

/// {ambient, terms: [{weight, mult}]}
nlohmann::json to_json(const VirtualCharacter& chi);
VirtualCharacter character_from_json(const nlohmann::json& j, RootSystemPtr ambient);

}  // namespace dirac_atlas::repring
