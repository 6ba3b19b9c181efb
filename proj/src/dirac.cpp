#include "dirac_atlas/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dirac_atlas/error.hpp"

namespace dirac_atlas::dirac {

using rootsys::inner;

DegreeRoots parse_degree_roots(const std::string& name) {
  if (name == "positive") return DegreeRoots::Positive;
  if (name == "simple") return DegreeRoots::Simple;
  throw ValidationError("unknown degree-roots '" + name + "' (expected positive|simple)");
}

std::string degree_roots_name(DegreeRoots r) { return r == DegreeRoots::Positive ? "positive" : "simple"; }

std::string reason_name(ExclusionReason r) {
  switch (r) {
    case ExclusionReason::Singular: return "singular";
    case ExclusionReason::UnequalRank: return "unequal_rank";
    case ExclusionReason::OddParity: return "odd_parity";
  }
  return "?";
}

ChamberIndex::ChamberIndex(const RootSystem& rs) : rs_(&rs), orbit_(rootsys::weyl_orbit_bfs(rs.rho(), rs)) {
  for (std::size_t i = 0; i < orbit_.size(); ++i) index_.emplace(orbit_[i], i);
}

std::size_t ChamberIndex::chamber_of(const Weight& lambda) const {
  if (!rootsys::is_regular(lambda, *rs_)) throw ValidationError("chamber_of: " + lambda.str() + " is singular");
  std::vector<std::size_t> word;
  rootsys::dominant_conjugate(lambda, *rs_, &word);
  // lambda = s_{i1} ... s_{im} lambda_dom, so its chamber is that of w(rho).
  Weight x = rs_->rho();
  for (auto it = word.rbegin(); it != word.rend(); ++it) x = rootsys::reflect(x, rs_->simple_roots()[*it], *rs_);
  return index_.at(x);
}

std::size_t chamber_of(const Weight& lambda, const RootSystem& rs) { return ChamberIndex(rs).chamber_of(lambda); }

Rational formal_degree(const Weight& lambda, const RealPair& pair, DegreeRoots roots) {
  const RootSystem& g = *pair.g;
  if (!rootsys::is_regular(lambda, g)) throw ValidationError("formal_degree: " + lambda.str() + " is singular");
  auto span = roots == DegreeRoots::Positive ? g.positive_roots() : g.simple_roots();
  Rational product = 1;
  for (const auto& alpha : span) product *= inner(lambda, alpha, g) / inner(g.rho(), alpha, g);
  return product;
}

namespace {

void check_highest_weight(const Weight& mu, const RealPair& pair) {
  const RootSystem& k = *pair.k;
  if (mu.dim() != k.ambient_dim())
    throw ValidationError("highest weight " + mu.str() + " has dimension " + std::to_string(mu.dim()) + ", expected " +
                          std::to_string(k.ambient_dim()));
  if (!mu.is_dyadic()) throw ValidationError("highest weight " + mu.str() + " has a non-dyadic coordinate");
  if (!rootsys::is_dominant(mu, k)) throw ValidationError("highest weight " + mu.str() + " is not dominant for K");
  if (!rootsys::is_integral(mu, k)) throw ValidationError("highest weight " + mu.str() + " is not integral for K");
}

InductionResult induct_checked(const Weight& mu, const RealPair& pair, DegreeRoots roots, const ChamberIndex* chambers) {
  if (!pair.equal_rank) return Exclusion{ExclusionReason::UnequalRank, {}};
  if (pair.parity == 1) return Exclusion{ExclusionReason::OddParity, {}};
  Weight lambda = mu + pair.k->rho();
  if (!rootsys::is_regular(lambda, *pair.g)) return Exclusion{ExclusionReason::Singular, lambda};

  DiscreteSeriesParameter p;
  p.pair = pair.name;
  p.signed_trace = formal_degree(lambda, pair, roots);
  p.formal_degree = abs(p.signed_trace);
  p.chamber_id = chambers ? chambers->chamber_of(lambda) : chamber_of(lambda, *pair.g);
  p.on_lattice = spinmod::in_lattice(mu, pair.lattice, *pair.g);
  p.min_k_type = IrrLabel{mu};
  p.lambda = std::move(lambda);
  return p;
}

}  // namespace

InductionResult dirac_induct(const IrrLabel& v, const RealPair& pair, DegreeRoots roots) {
  check_highest_weight(v.highest_weight, pair);
  return induct_checked(v.highest_weight, pair, roots, nullptr);
}

std::vector<DiscreteSeriesParameter> enumerate_discrete_series(const RealPair& pair, const Rational& bound,
                                                               DegreeRoots roots, std::optional<Lattice> lattice) {
  if (bound < 0) throw ValidationError("enumeration bound must be >= 0");
  std::vector<DiscreteSeriesParameter> out;
  if (!pair.equal_rank || pair.parity == 1) return out;

  const RootSystem& g = *pair.g;
  const RootSystem& k = *pair.k;
  const Lattice lat = lattice.value_or(pair.lattice);
  const std::size_t n = g.ambient_dim();
  const Weight& rho_k = k.rho();

  // |y_i| <= sqrt(bound * (F^-1)_ii) for y = mu + rho_K.
  const RationalMatrix finv = invert(g.form());
  const Rational step = lat == Lattice::HalfWeight ? Rational(1, 2) : Rational(1);
  std::vector<Rational> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    double radius = std::sqrt(bound.get_d() * finv[i][i].get_d()) + 1e-9;
    double center = -rho_k[i].get_d();
    lo[i] = Rational(static_cast<long>(std::floor((center - radius) / step.get_d()) - 1)) * step;
    hi[i] = Rational(static_cast<long>(std::ceil((center + radius) / step.get_d()) + 1)) * step;
  }

  ChamberIndex chambers(g);
  Weight mu(n);
  for (std::size_t i = 0; i < n; ++i) mu[i] = lo[i];
  while (true) {
    Weight y = mu + rho_k;
    if (inner(y, y, g) <= bound && spinmod::in_lattice(mu, lat, g) && rootsys::is_dominant(mu, k) &&
        rootsys::is_integral(mu, k)) {
      auto r = induct_checked(mu, pair, roots, &chambers);
      if (auto* p = std::get_if<DiscreteSeriesParameter>(&r)) out.push_back(std::move(*p));
    }
    std::size_t i = 0;
    while (i < n && mu[i] == hi[i]) {
      mu[i] = lo[i];
      ++i;
    }
    if (i == n) break;
    mu[i] += step;
  }

  std::vector<std::pair<Rational, std::size_t>> keys;
  for (std::size_t i = 0; i < out.size(); ++i) keys.emplace_back(inner(out[i].lambda, out[i].lambda, g), i);
  std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return graded_lex_less(out[a.second].lambda, out[b.second].lambda);
  });
  std::vector<DiscreteSeriesParameter> sorted;
  std::set<Weight> seen;
  for (const auto& [norm, i] : keys) {
    if (!seen.insert(out[i].lambda).second)
      throw std::logic_error("enumerate_discrete_series: duplicate lambda " + out[i].lambda.str());
    sorted.push_back(std::move(out[i]));
  }
  return sorted;
}

bool is_fully_compact(const RealPair& pair) { return pair.equal_rank && pair.noncompact_positive.empty(); }

repring::Multiplicity pairing_compact_oracle(const IrrLabel& h, const IrrLabel& v, const RealPair& pair) {
  if (!is_fully_compact(pair))
    throw ValidationError("pairing_compact_oracle needs a fully compact pair; '" + pair.name + "' has noncompact roots");
  auto hv = repring::irr_character(h, pair.k);
  auto vv = repring::irr_character(v, pair.k);
  auto spin = spinmod::spin_difference_character(pair);
  auto chi = repring::product(repring::product(repring::dual(vv), repring::dual(spin)), hv);
  return repring::invariant_multiplicity(chi);
}

nlohmann::json to_json(const DiscreteSeriesParameter& p) {
  return {{"pair", p.pair},
          {"lambda", rootsys::to_json(p.lambda)},
          {"mu", rootsys::to_json(p.min_k_type.highest_weight)},
          {"formal_degree", to_string(p.formal_degree)},
          {"signed_trace", to_string(p.signed_trace)},
          {"chamber_id", p.chamber_id}};
}

nlohmann::json to_json(const InductionResult& r) {
  if (const auto* p = std::get_if<DiscreteSeriesParameter>(&r)) {
    auto j = to_json(*p);
    j["discrete_series"] = true;
    j["on_lattice"] = p->on_lattice;
    return j;
  }
  const auto& e = std::get<Exclusion>(r);
  nlohmann::json j{{"discrete_series", false}, {"reason", reason_name(e.reason)}};
  if (e.lambda.dim() > 0) j["lambda"] = rootsys::to_json(e.lambda);
  return j;
}

}  // namespace dirac_atlas::dirac
