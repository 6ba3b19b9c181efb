#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dirac_atlas/rational.hpp"
#include "json.hpp"

namespace dirac_atlas::ktheory {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Idempotency / equality tolerance.
constexpr double kTolerance = 1e-9;
/// Singular values or eigenvalue distances in (kTolerance, kRankGap) times
/// the scale are ambiguous.
constexpr double kRankGap = 1e-6;

struct Tolerances {
  double tau = kTolerance;
  double gap = kRankGap;
};

/// Direct sum of full matrix algebras Mat(n_1) + ... + Mat(n_k).
struct FDAlgebra {
  std::vector<int> blocks;

  FDAlgebra() = default;
  explicit FDAlgebra(std::vector<int> b);
  std::size_t size() const { return blocks.size(); }
  long long dimension() const;
  bool operator==(const FDAlgebra&) const = default;
};

/// Element of M_k(A): block i is a square matrix of size k_i * n_i.
struct AlgebraElement {
  std::vector<Matrix> blocks;
};

/// Identity of A (amplification 1).
AlgebraElement identity(const FDAlgebra& a);
AlgebraElement zero(const FDAlgebra& a);
/// diag(p, q) blockwise.
AlgebraElement direct_sum(const AlgebraElement& p, const AlgebraElement& q);
/// g p g^-1 blockwise.
AlgebraElement conjugate(const AlgebraElement& p, const AlgebraElement& g);

struct K0Class {
  std::vector<long long> ranks;
  bool operator==(const K0Class&) const = default;
  K0Class& operator+=(const K0Class& o);
  K0Class& operator-=(const K0Class& o);
  bool is_effective() const;  // all ranks >= 0
};
K0Class operator+(K0Class a, const K0Class& b);
K0Class operator-(K0Class a, const K0Class& b);

/// Numerical rank with the gap rule: singular values <= tau * scale are zero,
/// >= gap * scale nonzero, anything in between throws NumericalAmbiguity.
std::size_t numerical_rank(const Matrix& m, const Tolerances& tol = {});

/// Gaussian rationals for the exact path.
struct GaussianRational {
  Rational re, im;
  bool is_zero() const { return re == 0 && im == 0; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) { return a.re == b.re && a.im == b.im; }
};
using ExactMatrix = std::vector<std::vector<GaussianRational>>;

std::size_t exact_rank(ExactMatrix m);
/// Exact conversion when every entry is a Gaussian rational with a small
/// dyadic denominator (as produced by integer or half-integer input).
std::optional<ExactMatrix> to_exact(const Matrix& m);

/// Per-block ranks of an idempotent. Uses the exact path when the entries
/// permit, otherwise eigenvalue distances to {0, 1} with the gap rule.
/// Throws ValidationError for non-idempotents and NumericalAmbiguity when
/// an eigenvalue sits in the gap.
K0Class k0_class(const AlgebraElement& p, const FDAlgebra& a, const Tolerances& tol = {});

/// Rank classifies idempotents up to homotopy in each block.
bool homotopic(const AlgebraElement& p, const AlgebraElement& q, const FDAlgebra& a, const Tolerances& tol = {});

/// Z/2-graded module E0 + E1 with odd operator u: E0 -> E1. Block i of
/// E_j is the simple Mat(n_i)-module with multiplicity e_j[i], so u_i is an
/// e1[i] x e0[i] matrix. v is carried along but not needed for the index.
struct FredholmModule {
  std::vector<int> e0, e1;
  std::vector<Matrix> u;
  std::vector<Matrix> v;
};

void validate(const FredholmModule& m, const FDAlgebra& a);

struct StabilizedIndex {
  K0Class index;
  int n = 0;                        // A^n added to E0
  std::vector<long long> kernel;    // ranks of ker(u, w)
};

/// [ker (u, w)] - [A^n] with minimal n and w completing the column space.
StabilizedIndex fredholm_index_stabilized(const FredholmModule& m, const FDAlgebra& a, const Tolerances& tol = {});
K0Class fredholm_index(const FredholmModule& m, const FDAlgebra& a, const Tolerances& tol = {});
/// Per-block dim ker u - dim coker u.
K0Class fredholm_index_naive(const FredholmModule& m, const FDAlgebra& a, const Tolerances& tol = {});

/// Random module over a random algebra with at most `max_blocks` blocks of
/// size <= `max_size`; nonzero singular values of u lie in [0.1, 10].
std::pair<FDAlgebra, FredholmModule> random_fredholm_module(std::uint64_t seed, int max_blocks = 3, int max_size = 4);

/// theta[j][i] = multiplicity of block i of A inside block j of B; must be
/// unital: sum_i theta[j][i] * n_i = m_j.
using BlockMorphism = std::vector<std::vector<long long>>;
void validate_morphism(const BlockMorphism& theta, const FDAlgebra& a, const FDAlgebra& b);
K0Class pushforward(const BlockMorphism& theta, const K0Class& x, const FDAlgebra& a, const FDAlgebra& b);
BlockMorphism compose(const BlockMorphism& outer, const BlockMorphism& inner);

/// Finite group as a multiplication table on 0..n-1.
struct FiniteGroup {
  std::string name;
  std::vector<std::vector<int>> table;
  int identity = 0;
  std::vector<int> inverse;

  std::size_t order() const { return table.size(); }
  int mul(int g, int h) const { return table[g][h]; }
};

constexpr std::size_t kMaxGroupOrder = 1000;

/// Validates closure, identity, inverses and associativity.
FiniteGroup make_group(std::vector<std::vector<int>> table, std::string name = {});
FiniteGroup cyclic_group(int n);
FiniteGroup symmetric_group(int n);
FiniteGroup dihedral_group(int n);  // order 2n
FiniteGroup quaternion_group();
FiniteGroup trivial_group();
/// "z5" / "cyclic5", "s3", "s4", "d4", "q8", "trivial".
FiniteGroup group_from_name(const std::string& name);
std::vector<std::string> group_catalog();
FiniteGroup group_from_json(const nlohmann::json& j);

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g);

/// Function on G; the algebra product is convolution for the Haar measure
/// of total mass 1, whose unit is |G| delta_1.
using GroupElement = Vector;

GroupElement delta(const FiniteGroup& g, int x);
GroupElement convolve(const FiniteGroup& g, const GroupElement& f, const GroupElement& h);

/// C G with its Wedderburn decomposition. irreps[b][x] is the unitary
/// pi_b(x); blocks are ordered by dimension, then by character values.
struct FiniteGroupAlgebra {
  FiniteGroup group;
  FDAlgebra algebra;
  std::vector<std::vector<Matrix>> irreps;
  std::vector<std::vector<Complex>> characters;
};

FiniteGroupAlgebra wedderburn(const FiniteGroup& g, std::uint64_t seed = 0, const Tolerances& tol = {});

/// phi(f)_b = (1/|G|) sum_x f(x) pi_b(x).
AlgebraElement to_blocks(const FiniteGroupAlgebra& cg, const GroupElement& f);
/// f(x) = sum_b d_b tr(pi_b(x)^* phi_b).
GroupElement from_blocks(const FiniteGroupAlgebra& cg, const AlgebraElement& a);

/// p = d conj(c_v), c_v(x) = <v, pi(x) v>. Throws ValidationError unless
/// ||v|| = 1.
GroupElement ds_idempotent(const FiniteGroupAlgebra& cg, std::size_t block, const Vector& v, const Tolerances& tol = {});

/// Tr(f) = f(1).
Complex trace(const FiniteGroup& g, const GroupElement& f);

struct TracePairing {
  long long value;
  bool formal_difference;  // some rank is negative
};
/// Linear extension of Tr to K0: sum_b rank_b * d_b.
TracePairing trace_pairing(const K0Class& x, const FiniteGroupAlgebra& cg);

/// <H_b, x>, the b-th component of x.
long long spectral_pairing(std::size_t block, const K0Class& x);

nlohmann::json to_json(const K0Class& x);
nlohmann::json to_json(const FDAlgebra& a);
nlohmann::json to_json(const FiniteGroupAlgebra& cg);
AlgebraElement element_from_json(const nlohmann::json& j, const FDAlgebra& a);
FredholmModule fredholm_from_json(const nlohmann::json& j);

}  // namespace dirac_atlas::ktheory
