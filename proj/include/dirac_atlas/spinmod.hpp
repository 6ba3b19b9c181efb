#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dirac_atlas/repring.hpp"

namespace dirac_atlas::spinmod {

using repring::VirtualCharacter;
using rootsys::CartanType;
using rootsys::RootSystem;
using rootsys::RootSystemPtr;

/// Lattice of K-weights a pair is considered over, in the Dynkin coordinates
/// of g: the root lattice, the integral weight lattice, or half of it.
enum class Lattice { Root, Weight, HalfWeight };

Lattice parse_lattice(const std::string& name);
std::string lattice_name(Lattice l);

/// Membership of a weight (Dynkin coordinates of `g`) in the lattice.
bool in_lattice(const Weight& w, Lattice lattice, const RootSystem& g);

/// (g, k) given by a Z/2-grading of the roots of g.
///
/// Equal-rank pairs share the torus: `k` is the compact subsystem in the
/// ambient coordinates of `g`, and p has weights +-noncompact_positive.
/// Unequal-rank pairs keep `k` on its own (smaller) torus and list the
/// weights of p restricted to it, zero weights included.
struct RealPair {
  std::string name;
  RootSystemPtr g;
  RootSystemPtr k;
  bool equal_rank = true;
  std::vector<std::size_t> compact_positive;  // indices into g's positive roots
  std::vector<Weight> noncompact_positive;    // Delta_n^+ (equal rank only)
  std::vector<Weight> p_weights;              // weights of p on K's torus
  int dim_p = 0;
  int parity = 0;                             // dim(G/K) mod 2
  Lattice lattice = Lattice::Weight;
  std::string description;
};

/// Equal-rank pair from the compact positive roots, given by their
/// simple-root coefficients in g. Validates additivity of the grading and
/// closedness of the compact set.
RealPair build_pair(const CartanType& g, const std::vector<std::vector<long>>& compact_coefficients,
                    std::string name = {}, Lattice lattice = Lattice::Weight);

/// All roots compact (G = K).
RealPair fully_compact_pair(const CartanType& g, std::string name = {});

/// Pair whose K has smaller rank than G. `p_weights` are in the Dynkin
/// coordinates of `k`.
RealPair build_unequal_rank_pair(const CartanType& g, const CartanType& k, std::vector<Weight> p_weights,
                                 std::string name = {}, Lattice lattice = Lattice::Weight);

/// Same pair with a different lattice.
RealPair with_lattice(const RealPair& pair, Lattice lattice);

/// Same pair with every bilinear form multiplied by `factor`.
RealPair with_scaled_form(const RealPair& pair, const Rational& factor);

/// True when eps(a + b) = eps(a) + eps(b) mod 2 whenever a, b, a + b are roots.
bool grading_is_additive(const RootSystem& g, const std::vector<std::size_t>& compact_positive);

struct SpinCharacter {
  VirtualCharacter s_plus;
  VirtualCharacter s_minus;
};

/// Weights (1/2) sum eps_b b over sign vectors; even number of -1 goes to S+.
/// Throws ValidationError for unequal-rank pairs.
SpinCharacter spin_characters(const RealPair& pair);

/// prod (e^{b/2} - e^{-b/2}) expanded as a product of binomials; for
/// unequal-rank pairs the zero weights of p contribute vanishing factors.
VirtualCharacter spin_difference_character(const RealPair& pair);

struct SpinStructure {
  bool lifts_on_G;
  bool lifts_on_double_cover;
  Weight rho_n;
};

/// lifts_on_G iff rho_n = (1/2) sum Delta_n^+ lies in the pair's lattice.
SpinStructure check_spin_structure(const RealPair& pair);

nlohmann::json to_json(const RealPair& pair);

}  // namespace dirac_atlas::spinmod
