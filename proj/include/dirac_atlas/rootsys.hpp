#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dirac_atlas/rational.hpp"

namespace dirac_atlas::rootsys {

enum class Family { A, B, C, D, E, F, G };

struct SimpleFactor {
  Family family;
  int rank;
  bool operator==(const SimpleFactor&) const = default;
};

/// Cartan type of a semisimple Lie algebra as a product of simple factors.
/// An empty factor list is the zero algebra and is rejected by
/// build_root_system.
struct CartanType {
  std::vector<SimpleFactor> factors;

  int rank() const;
  bool empty() const { return factors.empty(); }
  /// "A2", "A1xA1", "G2"
  std::string str() const;
  /// Accepts "A2", "A1xA1", "A1 x B2", case-insensitive family letters.
  static CartanType parse(std::string_view text);
  bool operator==(const CartanType&) const = default;
};

/// Throws ValidationError on rank bounds (A>=1, B>=2, C>=2, D>=4, E 6..8, F 4, G 2).
void validate(const CartanType& type);

/// a_ij = 2(alpha_i, alpha_j)/(alpha_j, alpha_j), Bourbaki numbering,
/// block diagonal over factors.
std::vector<std::vector<int>> cartan_matrix(const CartanType& type);

/// Root system living in an ambient weight space with an explicit bilinear
/// form. The ambient space can be larger than the span of the roots; this is
/// how compact subsystems (the roots of K inside an equal-rank G) and
/// torus-only systems are represented.
///
/// Immutable after construction.
class RootSystem {
 public:
  /// Validates that every positive root is a nonnegative integer combination
  /// of the simple roots, sorts roots graded-lexicographically in simple-root
  /// coordinates, and computes rho.
  RootSystem(CartanType cartan, RationalMatrix form, std::vector<Weight> simple_roots,
             std::vector<Weight> positive_roots);

  const CartanType& cartan() const { return cartan_; }
  const RationalMatrix& form() const { return form_; }
  std::span<const Weight> simple_roots() const { return simple_; }
  std::span<const Weight> positive_roots() const { return positive_; }
  /// Coefficients of positive_roots()[i] in the simple roots.
  const std::vector<long>& root_coefficients(std::size_t i) const { return coefficients_[i]; }
  const Weight& rho() const { return rho_; }

  std::size_t ambient_dim() const { return form_.size(); }
  std::size_t rank() const { return simple_.size(); }

  /// Index of a positive root, or npos.
  std::size_t find_positive(const Weight& w) const;
  bool is_root(const Weight& w) const;

  /// Same roots with the bilinear form multiplied by `factor` (> 0).
  RootSystem with_scaled_form(const Rational& factor) const;

  /// Coefficients of a vector in the simple roots, if it lies in their span.
  std::vector<Rational> simple_coordinates(const Weight& w) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  CartanType cartan_;
  RationalMatrix form_;
  std::vector<Weight> simple_;
  std::vector<Weight> positive_;
  std::vector<std::vector<long>> coefficients_;
  std::map<Weight, std::size_t> index_;
  Weight rho_;
  RationalMatrix simple_gram_inverse_;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

/// Closure of the simple roots under alpha-strings, from the Cartan matrix.
RootSystem build_root_system(const CartanType& type);

/// The root system spanned by the given positive roots of `ambient`, in the
/// same ambient coordinates. The subset must be closed; its simple roots are
/// the indecomposable members.
RootSystem subsystem(const RootSystem& ambient, const std::vector<std::size_t>& positive_indices);

Rational inner(const Weight& a, const Weight& b, const RootSystem& rs);

/// 2(w, alpha)/(alpha, alpha)
Rational coroot_pairing(const Weight& w, const Weight& alpha, const RootSystem& rs);

/// (lambda, alpha) != 0 for every positive root.
bool is_regular(const Weight& lambda, const RootSystem& rs);

/// (mu, alpha) >= 0 for every simple root.
bool is_dominant(const Weight& mu, const RootSystem& rs);

/// Coroot pairings with all simple roots are integers.
bool is_integral(const Weight& mu, const RootSystem& rs);

/// s_alpha(x) = x - 2(x, alpha)/(alpha, alpha) alpha
Weight reflect(const Weight& x, const Weight& alpha, const RootSystem& rs);

/// Dominant representative of the Weyl orbit of w. When `word` is given it
/// receives the simple-reflection indices applied, in order.
Weight dominant_conjugate(const Weight& w, const RootSystem& rs, std::vector<std::size_t>* word = nullptr);

std::set<Weight> weyl_orbit(const Weight& w, const RootSystem& rs);

/// Orbit in breadth-first order (simple reflections tried in index order).
std::vector<Weight> weyl_orbit_bfs(const Weight& w, const RootSystem& rs);

/// Largest group order materialized by brute force.
inline constexpr std::uint64_t kMaxBruteForceWeylOrder = 100000;

/// Brute-force closure (orbit of rho, which W permutes simply transitively)
/// when the order is at most kMaxBruteForceWeylOrder; otherwise the
/// classical product formula over simple factors.
std::uint64_t weyl_group_order(const RootSystem& rs);

/// Classical formula; only defined for systems built from a Cartan type.
std::uint64_t weyl_group_order_formula(const CartanType& type);

/// {cartan, simple_roots, positive_roots, form, rho} with rationals as "p/q".
nlohmann::json to_json(const RootSystem& rs);
nlohmann::json to_json(const Weight& w);
Weight weight_from_json(const nlohmann::json& j);

}  // namespace dirac_atlas::rootsys
