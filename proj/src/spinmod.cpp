#include "dirac_atlas/spinmod.hpp"

#include <algorithm>
#include <set>

#include "dirac_atlas/error.hpp"

namespace dirac_atlas::spinmod {

namespace {

constexpr std::size_t kMaxSpinFactors = 24;

VirtualCharacter binomial(const RootSystemPtr& ambient, const Weight& beta) {
  VirtualCharacter f(ambient);
  Weight half = beta * Rational(1, 2);
  f.add(half, 1);
  f.add(-half, -1);
  return f;
}

void require_equal_rank(const RealPair& pair, const char* what) {
  if (!pair.equal_rank)
    throw ValidationError(std::string(what) + " needs an equal-rank pair; '" + pair.name + "' has rank K < rank G");
}

}  // namespace

Lattice parse_lattice(const std::string& name) {
  if (name == "root") return Lattice::Root;
  if (name == "weight") return Lattice::Weight;
  if (name == "half_weight" || name == "half") return Lattice::HalfWeight;
  throw ValidationError("unknown lattice '" + name + "' (expected root|weight|half_weight)");
}

std::string lattice_name(Lattice l) {
  switch (l) {
    case Lattice::Root: return "root";
    case Lattice::Weight: return "weight";
    case Lattice::HalfWeight: return "half_weight";
  }
  return "?";
}

bool in_lattice(const Weight& w, Lattice lattice, const RootSystem& g) {
  switch (lattice) {
    case Lattice::Weight: return w.is_integral();
    case Lattice::HalfWeight: return (w * Rational(2)).is_integral();
    case Lattice::Root: {
      if (!w.is_integral()) return false;
      auto c = g.simple_coordinates(w);
      return std::all_of(c.begin(), c.end(), [](const Rational& x) { return is_integer(x); });
    }
  }
  return false;
}

bool grading_is_additive(const RootSystem& g, const std::vector<std::size_t>& compact_positive) {
  std::set<std::size_t> compact(compact_positive.begin(), compact_positive.end());
  auto parity = [&](const Weight& w) {
    auto i = g.find_positive(w);
    if (i == RootSystem::npos) i = g.find_positive(-w);
    return compact.count(i) ? 0 : 1;
  };
  std::vector<Weight> roots;
  for (const auto& a : g.positive_roots()) {
    roots.push_back(a);
    roots.push_back(-a);
  }
  for (const auto& a : roots)
    for (const auto& b : roots) {
      Weight s = a + b;
      if (g.is_root(s) && parity(s) != (parity(a) + parity(b)) % 2) return false;
    }
  return true;
}

RealPair build_pair(const CartanType& g_type, const std::vector<std::vector<long>>& compact_coefficients,
                    std::string name, Lattice lattice) {
  auto g = std::make_shared<const RootSystem>(rootsys::build_root_system(g_type));
  const auto simple = g->simple_roots();
  std::vector<std::size_t> compact;
  for (const auto& c : compact_coefficients) {
    if (c.size() != simple.size()) throw ValidationError("compact root coefficients have the wrong length");
    Weight w(g->ambient_dim());
    for (std::size_t i = 0; i < c.size(); ++i) w += simple[i] * Rational(c[i]);
    auto idx = g->find_positive(w);
    if (idx == RootSystem::npos) idx = g->find_positive(-w);
    if (idx == RootSystem::npos) throw ValidationError("compact marking names a non-root " + w.str());
    compact.push_back(idx);
  }
  std::sort(compact.begin(), compact.end());
  compact.erase(std::unique(compact.begin(), compact.end()), compact.end());

  if (!grading_is_additive(*g, compact)) throw ValidationError("root grading of '" + name + "' is not additive");

  RealPair pair;
  pair.name = std::move(name);
  pair.g = g;
  pair.k = std::make_shared<const RootSystem>(rootsys::subsystem(*g, compact));
  pair.equal_rank = true;
  pair.compact_positive = compact;
  std::set<std::size_t> cset(compact.begin(), compact.end());
  for (std::size_t i = 0; i < g->positive_roots().size(); ++i) {
    if (cset.count(i)) continue;
    pair.noncompact_positive.push_back(g->positive_roots()[i]);
    pair.p_weights.push_back(g->positive_roots()[i]);
    pair.p_weights.push_back(-g->positive_roots()[i]);
  }
  pair.dim_p = static_cast<int>(pair.p_weights.size());
  pair.parity = pair.dim_p % 2;
  pair.lattice = lattice;
  return pair;
}

RealPair fully_compact_pair(const CartanType& g, std::string name) {
  auto rs = rootsys::build_root_system(g);
  std::vector<std::vector<long>> all;
  for (std::size_t i = 0; i < rs.positive_roots().size(); ++i) all.push_back(rs.root_coefficients(i));
  if (name.empty()) name = "compact_" + g.str();
  return build_pair(g, all, std::move(name), Lattice::Weight);
}

RealPair build_unequal_rank_pair(const CartanType& g_type, const CartanType& k_type, std::vector<Weight> p_weights,
                                 std::string name, Lattice lattice) {
  RealPair pair;
  pair.g = std::make_shared<const RootSystem>(rootsys::build_root_system(g_type));
  pair.k = std::make_shared<const RootSystem>(rootsys::build_root_system(k_type));
  if (pair.k->rank() >= pair.g->rank())
    throw ValidationError("unequal-rank pair '" + name + "' must have rank K < rank G");
  std::multiset<Weight> ms(p_weights.begin(), p_weights.end());
  for (const auto& w : p_weights) {
    if (w.dim() != pair.k->ambient_dim()) throw ValidationError("p-weight has the wrong dimension for K");
    if (ms.count(w) != ms.count(-w)) throw ValidationError("p-weights of '" + name + "' are not symmetric under negation");
  }
  const auto expected_dim = static_cast<std::size_t>(pair.g->ambient_dim() + 2 * pair.g->positive_roots().size()) -
                            (pair.k->ambient_dim() + 2 * pair.k->positive_roots().size());
  if (p_weights.size() != expected_dim)
    throw ValidationError("dim p of '" + name + "' must equal dim g - dim k = " + std::to_string(expected_dim));
  pair.name = std::move(name);
  pair.equal_rank = false;
  pair.p_weights = std::move(p_weights);
  pair.dim_p = static_cast<int>(pair.p_weights.size());
  pair.parity = pair.dim_p % 2;
  pair.lattice = lattice;
  return pair;
}

RealPair with_lattice(const RealPair& pair, Lattice lattice) {
  RealPair out = pair;
  out.lattice = lattice;
  return out;
}

RealPair with_scaled_form(const RealPair& pair, const Rational& factor) {
  RealPair out = pair;
  out.g = std::make_shared<const RootSystem>(pair.g->with_scaled_form(factor));
  out.k = std::make_shared<const RootSystem>(pair.k->with_scaled_form(factor));
  return out;
}

SpinCharacter spin_characters(const RealPair& pair) {
  require_equal_rank(pair, "spin_characters");
  const auto& beta = pair.noncompact_positive;
  if (beta.size() > kMaxSpinFactors) throw ValidationError("too many noncompact roots for sign-vector enumeration");
  SpinCharacter s{VirtualCharacter(pair.k), VirtualCharacter(pair.k)};
  const std::size_t n = beta.size();
  for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << n); ++signs) {
    Weight w(pair.k->ambient_dim());
    int minus = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (signs >> i & 1) {
        w -= beta[i];
        ++minus;
      } else {
        w += beta[i];
      }
    }
    w *= Rational(1, 2);
    (minus % 2 == 0 ? s.s_plus : s.s_minus).add(w, 1);
  }
  return s;
}

VirtualCharacter spin_difference_character(const RealPair& pair) {
  std::vector<Weight> factors;
  if (pair.equal_rank) {
    factors = pair.noncompact_positive;
  } else {
    std::size_t zeros = 0;
    for (const auto& w : pair.p_weights) {
      if (w.is_zero()) ++zeros;
      else if (graded_lex_less(-w, w)) factors.push_back(w);
    }
    for (std::size_t i = 0; i < (zeros + 1) / 2; ++i) factors.emplace_back(pair.k->ambient_dim());
  }
  VirtualCharacter out = repring::trivial_character(pair.k);
  for (const auto& b : factors) out = repring::product(out, binomial(pair.k, b));
  return out;
}

SpinStructure check_spin_structure(const RealPair& pair) {
  require_equal_rank(pair, "check_spin_structure");
  Weight rho_n(pair.g->ambient_dim());
  for (const auto& b : pair.noncompact_positive) rho_n += b;
  rho_n *= Rational(1, 2);
  return SpinStructure{in_lattice(rho_n, pair.lattice, *pair.g), true, rho_n};
}

nlohmann::json to_json(const RealPair& pair) {
  nlohmann::json j;
  j["name"] = pair.name;
  j["g"] = pair.g->cartan().str();
  j["equal_rank"] = pair.equal_rank;
  j["dim_p"] = pair.dim_p;
  j["parity"] = pair.parity;
  j["lattice"] = lattice_name(pair.lattice);
  j["k_simple_roots"] = nlohmann::json::array();
  for (const auto& w : pair.k->simple_roots()) j["k_simple_roots"].push_back(rootsys::to_json(w));
  j["rho_k"] = rootsys::to_json(pair.k->rho());
  j["noncompact_positive"] = nlohmann::json::array();
  for (const auto& w : pair.noncompact_positive) j["noncompact_positive"].push_back(rootsys::to_json(w));
  if (!pair.description.empty()) j["description"] = pair.description;
  return j;
}

}  // namespace dirac_atlas::spinmod
