#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dirac_atlas/ktheory.hpp"
#include "json.hpp"

namespace dirac_atlas::rapid_decay {

using Complex = std::complex<double>;

/// Free group: reduced word with letters +-1..+-k. Z^d: coordinates.
/// Finite table: a single element index.
using Element = std::vector<int>;

enum class GroupKind { Free, Lattice, Finite };

constexpr std::size_t kMaxBallSize = 1'000'000;

class MarkedGroup {
 public:
  static MarkedGroup free_group(int k);
  static MarkedGroup lattice(int d);
  /// Word length for `generators` (default: every non-identity element).
  static MarkedGroup finite(ktheory::FiniteGroup g, std::vector<int> generators = {});
  /// "z", "z^d", "f<k>", "finite:<catalog name>".
  static MarkedGroup from_name(const std::string& name);

  GroupKind kind() const { return kind_; }
  int rank() const { return rank_; }
  const std::string& name() const { return name_; }

  Element identity() const;
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  int length(const Element& a) const;
  /// Throws ValidationError for malformed elements.
  void check(const Element& a) const;

  /// Number of elements of length <= r, saturating above kMaxBallSize.
  std::size_t ball_size(int r) const;
  /// Elements of length <= r, ordered by length then lexicographically.
  /// Throws ValidationError beyond kMaxBallSize.
  std::vector<Element> ball(int r) const;
  std::vector<Element> sphere(int r) const;

  /// Letters a, b, ... for generators and A, B, ... for inverses ("" or "1"
  /// is the identity) for free groups; "(x,y)" for Z^d; the index otherwise.
  std::string format(const Element& a) const;
  Element parse_word(const std::string& word) const;

 private:
  GroupKind kind_ = GroupKind::Lattice;
  int rank_ = 1;
  std::string name_;
  std::optional<ktheory::FiniteGroup> table_;
  std::vector<int> finite_length_;
};

/// Finitely supported function; the absent keys are zero.
using GroupFunction = std::map<Element, Complex>;

GroupFunction delta(const Element& g, Complex c = 1.0);
/// Counting-measure convolution: (f*h)(x) = sum_y f(y) h(y^-1 x).
GroupFunction convolve(const MarkedGroup& g, const GroupFunction& f, const GroupFunction& h);
void prune(GroupFunction& f);

double l1_norm(const GroupFunction& f);
/// || (1 + l(g))^s f(g) ||_2
double hs_norm(const MarkedGroup& g, const GroupFunction& f, double s);
/// Largest l(g) over the support.
int support_radius(const MarkedGroup& g, const GroupFunction& f);

struct PowerIterationOptions {
  double tolerance = 1e-6;           // relative growth over a doubling window
  std::size_t max_iterations = 2'000'000;
  std::uint64_t seed = 0;            // starting vector
};

struct ReducedNormEstimate {
  int radius = 0;
  std::size_t ball_size = 0;
  double lower = 0.0;                // ||P_R lambda(f) P_R||, a lower bound
  double upper = 0.0;                // l1 norm
  std::size_t iterations = 0;
};

/// Power iteration on the compression of lambda(f) to ball(radius). Throws
/// ValidationError when radius < support radius, NumericalAmbiguity when the
/// iteration does not settle within max_iterations.
ReducedNormEstimate reduced_norm_truncated(const MarkedGroup& g, const GroupFunction& f, int radius,
                                           const PowerIterationOptions& opts = {});

/// Same over ascending radii, each warm-started from the previous vector, so
/// the lower bounds are nondecreasing.
std::vector<ReducedNormEstimate> reduced_norm_profile(const MarkedGroup& g, const GroupFunction& f,
                                                      const std::vector<int>& radii,
                                                      const PowerIterationOptions& opts = {});

struct FourierBracket {
  double lower;
  double upper;
  std::vector<double> argmax;  // angles attaining `lower`
};

/// sup over the torus of |sum f(n) e^{i n.theta}| for Z^d (d <= 2): dense
/// grid, local refinement, and a Lipschitz upper bound.
FourierBracket fourier_sup_norm(const MarkedGroup& g, const GroupFunction& f, std::size_t grid = 1 << 14);

GroupFunction schur_multiply(const std::function<Complex(const Element&)>& c, const GroupFunction& f);
std::function<Complex(const Element&)> ball_indicator(const MarkedGroup& g, int r);
std::function<Complex(const Element&)> sobolev_weight(const MarkedGroup& g, double s);

struct NormSpec {
  enum class Kind { L1, Hs, ReducedTruncated } kind = Kind::L1;
  double s = 0.0;
  int radius = 0;
  PowerIterationOptions power;

  static NormSpec parse(const std::string& text);  // "l1", "hs:2", "red:500"
  std::string str() const;
};

double evaluate(const NormSpec& norm, const MarkedGroup& g, const GroupFunction& f);

enum class PhaseMode { Unimodular, Sign };

struct UnconditionalityReport {
  std::string norm;
  std::size_t trials = 0;
  double base = 0.0;
  double max_deviation = 0.0;
  GroupFunction witness;
  double witness_value = 0.0;
};

/// Multiplies coefficients by random phases and records the largest change
/// of the norm together with the phase pattern achieving it.
UnconditionalityReport unconditionality_probe(const NormSpec& norm, const MarkedGroup& g, const GroupFunction& f,
                                              std::size_t trials, std::uint64_t seed,
                                              PhaseMode mode = PhaseMode::Unimodular);

struct RdScale {
  int support_radius;
  std::size_t samples;
  double max_ratio;
  double mean_ratio;
};

struct RdReport {
  std::string group;
  double s = 0.0;
  std::vector<RdScale> scales;
  double max_ratio = 0.0;
  /// Empirical only: the ratio at the largest scale stays within 25% of the
  /// maximum over the smaller scales.
  bool appears_bounded = false;
};

struct RdProbeOptions {
  std::vector<int> support_radii;  // empty: 1..5 for free groups, 4..64 for Z^d
  std::size_t samples = 10;
  bool sphere_supported = false;   // draw supports from the sphere instead of the ball
  std::size_t max_support = 100;
  int radius_margin = 0;           // compression radius = 2 * support radius + margin,
  std::size_t max_ball = 30'000;   // shrunk towards the support radius to fit max_ball
  PowerIterationOptions power{1e-4, 200'000, 0};
};

/// max over samples of reduced_norm_truncated(f) / hs_norm(f, s) per support
/// scale, for free groups and Z^d. Never a proof of property (RD).
RdReport rd_inequality_probe(const MarkedGroup& g, double s, std::uint64_t seed, const RdProbeOptions& opts = {});

struct SchurProbeReport {
  std::string group;
  int multiplier_radius = 0;
  int support_radius = 0;
  int compression_radius = 0;
  std::size_t samples = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
};

/// max over random f of red(c f) / red(f) for c the indicator of
/// ball(multiplier_radius), both compressed to the same ball. An empirical
/// lower estimate of the multiplier norm, nothing more.
SchurProbeReport schur_ratio_probe(const MarkedGroup& g, int multiplier_radius, int support_radius,
                                   std::size_t samples, std::uint64_t seed, const RdProbeOptions& opts = {});

GroupFunction random_function(const MarkedGroup& g, int support_radius, std::size_t max_support, std::uint64_t seed,
                              bool sphere = false);

nlohmann::json to_json(const MarkedGroup& g, const GroupFunction& f);
GroupFunction function_from_json(const MarkedGroup& g, const nlohmann::json& j);
nlohmann::json to_json(const ReducedNormEstimate& e);
nlohmann::json to_json(const MarkedGroup& g, const UnconditionalityReport& r);
nlohmann::json to_json(const RdReport& r);
nlohmann::json to_json(const SchurProbeReport& r);

}  // namespace dirac_atlas::rapid_decay
