// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "dirac_atlas/catalog.hpp"
#include "dirac_atlas/dirac.hpp"
#include "dirac_atlas/error.hpp"
#include "dirac_atlas/ktheory.hpp"
#include "dirac_atlas/rapid_decay.hpp"

using namespace dirac_atlas;

namespace {

constexpr double kIdempotencyTol = 1e-9;
constexpr double kTraceTol = 1e-9;
constexpr double kNormSlack = 1e-3;
constexpr double kWitnessGap = 0.2;
constexpr double kUnconditionalTol = 1e-12;
constexpr double kMonotoneSlack = 1e-6;

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects the first few failure messages.
class Check {
 public:
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok_ = false;
    if (++failures_ <= 3) msg_ << (failures_ > 1 ? "; " : "") << what;
  }
  Outcome done(const std::string& summary) const {
    if (ok_) return {true, summary};
    std::ostringstream o;
    o << msg_.str();
    if (failures_ > 3) o << " (+" << failures_ - 3 << " more)";
    return {false, o.str()};
  }

 private:
  bool ok_ = true;
  int failures_ = 0;
  std::ostringstream msg_;
};

const spinmod::RealPair& pair(const std::string& name) { return catalog::builtin_catalog().find(name); }

std::optional<dirac::DiscreteSeriesParameter> as_ds(const dirac::InductionResult& r) {
  if (const auto* p = std::get_if<dirac::DiscreteSeriesParameter>(&r)) return *p;
  return std::nullopt;
}

Outcome criterion1() {
  Check c;
  std::size_t checked = 0;
  const Rational bound = 40;
  // F has positive entries, so (lambda, lambda) >= lambda_i^2 F_ii >= lambda_i^2 / 3
  constexpr long kBox = 12;
  for (std::string name : {"compact_A1", "compact_A2", "compact_B2", "compact_G2"}) {
    const auto& p = pair(name);
    const auto& k = *p.k;
    const std::size_t n = k.rank();
    std::size_t count = 0;
    std::vector<long> mu(n, 0);
    for (;;) {
      Weight w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = mu[i];
      const Weight lam = w + k.rho();
      const bool inside = rootsys::inner(lam, lam, k) <= bound;
      if (inside) {
        ++count;
        const auto ds = as_ds(dirac::dirac_induct(repring::IrrLabel{w}, p));
        const auto dim = repring::dimension(repring::irr_character(repring::IrrLabel{w}, p.k));
        c.expect(ds && ds->formal_degree == Rational(static_cast<long>(dim)),
                 name + " mu=" + w.str() + " degree != dim " + std::to_string(dim));
      }
      std::size_t i = 0;
      while (i < n && ++mu[i] > kBox) mu[i++] = 0;
      if (i == n) break;
    }
    checked += count;
    c.expect(dirac::enumerate_discrete_series(p, bound).size() == count, name + ": enumeration count differs");
  }
  return c.done(std::to_string(checked) + " K-types, formal degree == Freudenthal dimension exactly");
}

Outcome criterion2() {
  Check c;
  const auto& p = pair("sl2r");
  for (long b : {1L, 2L, 8L, 50L, 200L}) {
    const auto list = dirac::enumerate_discrete_series(p, b);
    std::set<long> got;
    for (const auto& x : list) {
      c.expect(x.lambda.dim() == 1 && is_integer(x.lambda[0]), "lambda off the double-cover lattice");
      const long nn = x.lambda[0].get_num().get_si();
      got.insert(nn);
      c.expect(x.formal_degree == std::labs(nn), "formal degree != |n| at n=" + std::to_string(nn));
    }
    std::set<long> expected;
    for (long nn = -100; nn <= 100; ++nn)
      if (nn != 0 && Rational(nn * nn, 2) <= b) expected.insert(nn);
    c.expect(got == expected, "bound " + std::to_string(b) + ": wrong set of n");
  }
  const auto zero = dirac::dirac_induct(repring::IrrLabel{Weight{0}}, p);
  const auto* ex = std::get_if<dirac::Exclusion>(&zero);
  c.expect(ex && ex->reason == dirac::ExclusionReason::Singular, "lambda = 0 not excluded as singular");
  return c.done("lambda = n alpha/2 (n != 0) with degree |n| for 5 bounds; lambda = 0 singular");
}

Outcome criterion3() {
  Check c;
  const auto& p = pair("su21");
  const auto wg = rootsys::weyl_group_order(*p.g), wk = rootsys::weyl_group_order(*p.k);
  const auto expected = wg / wk;
  const auto list = dirac::enumerate_discrete_series(p, 60);
  std::set<std::size_t> ids;
  for (const auto& x : list) ids.insert(x.chamber_id);
  c.expect(expected == 3, "|W_G|/|W_K| != 3");
  c.expect(ids.size() == expected, "realized " + std::to_string(ids.size()) + " chambers");
  dirac::ChamberIndex idx(*p.g);
  for (const auto& x : list) c.expect(idx.chamber_of(x.lambda) == x.chamber_id, "chamber id mismatch");
  return c.done(std::to_string(list.size()) + " parameters in exactly " + std::to_string(ids.size()) + " chambers");
}

Outcome criterion4() {
  Check c;
  std::size_t pairs = 0;
  for (const auto& p : catalog::builtin_catalog().pairs()) {
    if (p.equal_rank && p.parity == 0) continue;
    ++pairs;
    for (long b : {0L, 1L, 10L, 100L, 1000L})
      c.expect(dirac::enumerate_discrete_series(p, b).empty(), p.name + " nonempty at bound " + std::to_string(b));
  }
  c.expect(pairs >= 1, "no excluded pairs in the catalog");
  bool sl2c_seen = false;
  for (const auto& p : catalog::builtin_catalog().pairs()) sl2c_seen |= p.name == "sl2c";
  c.expect(sl2c_seen, "sl2c missing");
  return c.done(std::to_string(pairs) + " unequal-rank/odd-parity pairs, empty for bounds up to 1000");
}

Outcome criterion5() {
  Check c;
  std::size_t pairs = 0;
  for (const auto& p : catalog::builtin_catalog().pairs()) {
    if (!p.equal_rank) continue;
    ++pairs;
    const auto s = spinmod::spin_characters(p);
    const long long total = repring::dimension(s.s_plus) + repring::dimension(s.s_minus);
    c.expect(total == (1LL << p.noncompact_positive.size()), p.name + ": dim S != 2^|Dn+|");
    c.expect(s.s_plus - s.s_minus == spinmod::spin_difference_character(p), p.name + ": expansion mismatch");
  }
  return c.done(std::to_string(pairs) + " equal-rank pairs, dim S = 2^|Dn+| and S+ - S- = product term-by-term");
}

Outcome criterion6() {
  Check c;
  const ktheory::Tolerances tol{1e-9, 1e-6};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    try {
      const auto [a, m] = ktheory::random_fredholm_module(seed, 3, 4);
      c.expect(a.size() <= 3, "too many blocks");
      for (int n : a.blocks) c.expect(n <= 4, "block too large");
      c.expect(ktheory::fredholm_index(m, a, tol) == ktheory::fredholm_index_naive(m, a, tol),
               "seed " + std::to_string(seed) + ": index mismatch");
    } catch (const NumericalAmbiguity& e) {
      c.expect(false, "seed " + std::to_string(seed) + ": ambiguous rank");
    }
  }
  return c.done("200/200 modules agree, no ambiguous rank at gap 1e-6");
}

Outcome criterion7() {
  Check c;
  double worst_idem = 0, worst_trace = 0;
  std::size_t blocks = 0;
  for (std::string name : {"z5", "s3", "d4", "q8"}) {
    const auto g = ktheory::group_from_name(name);
    const auto cg = ktheory::wedderburn(g, 1);
    for (std::size_t b = 0; b < cg.algebra.size(); ++b) {
      ++blocks;
      const int d = cg.algebra.blocks[b];
      ktheory::Vector v = ktheory::Vector::Zero(d);
      v(0) = 1;
      const auto p = ktheory::ds_idempotent(cg, b, v);
      const double idem = (ktheory::convolve(g, p, p) - p).cwiseAbs().maxCoeff();
      const double tr = std::abs(ktheory::trace(g, p) - static_cast<double>(d));
      worst_idem = std::max(worst_idem, idem);
      worst_trace = std::max(worst_trace, tr);
      c.expect(idem <= kIdempotencyTol, name + ": p*p != p");
      c.expect(tr <= kTraceTol, name + ": Tr(p) != dim");
      const auto cls = ktheory::k0_class(ktheory::to_blocks(cg, p), cg.algebra);
      for (std::size_t h = 0; h < cg.algebra.size(); ++h)
        c.expect(ktheory::spectral_pairing(h, cls) == (h == b ? 1 : 0), name + ": pairing not delta");
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu blocks, max |p*p-p| = %.1e, max |Tr p - d| = %.1e, pairing = delta",
                blocks, worst_idem, worst_trace);
  return c.done(buf);
}

Outcome criterion8() {
  Check c;
  using namespace rapid_decay;
  const auto z = MarkedGroup::lattice(1);
  GroupFunction f, flip;
  f[{0}] = 1;
  f[{1}] = 1;
  f[{2}] = 1;
  flip = f;
  flip[{2}] = -1;
  const auto base = reduced_norm_truncated(z, f, 500);
  const auto oracle = fourier_sup_norm(z, f);
  c.expect(base.lower >= 3 - kNormSlack, "red(f) at R=500 below 3 - 1e-3");
  c.expect(std::abs(oracle.lower - 3) < 1e-12, "Fourier oracle of f != 3");
  const auto w = reduced_norm_truncated(z, flip, 500);
  const auto wo = fourier_sup_norm(z, flip);
  c.expect(3 - wo.upper >= kWitnessGap, "grid oracle of witness within 0.2 of 3");
  c.expect(3 - w.lower >= kWitnessGap, "truncated witness within 0.2 of 3");
  c.expect(std::abs(w.lower - wo.lower) <= kNormSlack, "truncated witness off the grid oracle");

  double worst = 0;
  for (const char* n : {"l1", "hs:1", "hs:2"}) {
    const auto r = unconditionality_probe(NormSpec::parse(n), z, f, 100, 2024);
    const auto r2 = unconditionality_probe(NormSpec::parse(n), MarkedGroup::free_group(2),
                                           random_function(MarkedGroup::free_group(2), 3, 30, 5), 100, 2025);
    worst = std::max({worst, r.max_deviation, r2.max_deviation});
  }
  c.expect(worst <= kUnconditionalTol, "l1/hs phase-flip deviation above 1e-12");
  char buf[200];
  std::snprintf(buf, sizeof buf, "red(f) = %.6f at R=500; witness %.6f (oracle [%.6f, %.6f]); l1/hs deviation %.1e",
                base.lower, w.lower, wo.lower, wo.upper, worst);
  return c.done(buf);
}

Outcome criterion9() {
  Check c;
  // rescaling by 7
  std::size_t compared = 0;
  for (const auto& p : catalog::builtin_catalog().pairs()) {
    const auto q = spinmod::with_scaled_form(p, 7);
    const auto a = dirac::enumerate_discrete_series(p, 20);
    const auto b = dirac::enumerate_discrete_series(q, 140);
    c.expect(a.size() == b.size(), p.name + ": enumeration size changed");
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      ++compared;
      c.expect(a[i].lambda == b[i].lambda && a[i].formal_degree == b[i].formal_degree &&
                   a[i].signed_trace == b[i].signed_trace && a[i].chamber_id == b[i].chamber_id,
               p.name + ": parameter changed");
    }
    if (p.equal_rank) {
      const auto sa = spinmod::check_spin_structure(p), sb = spinmod::check_spin_structure(q);
      c.expect(sa.lifts_on_G == sb.lifts_on_G && sa.rho_n == sb.rho_n, p.name + ": spin structure changed");
      c.expect(spinmod::spin_difference_character(p).terms() == spinmod::spin_difference_character(q).terms(),
               p.name + ": spin difference changed");
    } else {
      const auto ra = dirac::dirac_induct(repring::IrrLabel{Weight::zero(p.k->ambient_dim())}, p);
      const auto rb = dirac::dirac_induct(repring::IrrLabel{Weight::zero(q.k->ambient_dim())}, q);
      c.expect(dirac::to_json(ra) == dirac::to_json(rb), p.name + ": exclusion changed");
    }
  }

  // decompose then re-sum
  std::mt19937_64 rng(1234);
  const std::vector<std::string> types = {"A1", "A2", "B2", "G2", "A1xA1"};
  for (int t = 0; t < 100; ++t) {
    const auto rs = std::make_shared<const rootsys::RootSystem>(
        rootsys::build_root_system(rootsys::CartanType::parse(types[t % types.size()])));
    std::uniform_int_distribution<long> coord(0, 3), mult(-4, 4);
    std::uniform_int_distribution<int> nparts(1, 5);
    std::vector<std::pair<repring::IrrLabel, repring::Multiplicity>> parts;
    for (int k = nparts(rng); k > 0; --k) {
      Weight mu(rs->rank());
      for (std::size_t i = 0; i < rs->rank(); ++i) mu[i] = coord(rng);
      parts.push_back({repring::IrrLabel{mu}, mult(rng)});
    }
    auto chi = repring::resum(parts, rs);
    if (t % 2) chi = repring::product(chi, repring::irr_character(repring::IrrLabel{Weight(rs->rank())}, rs) - chi);
    c.expect(repring::resum(repring::decompose(chi), rs) == chi, "decompose/resum mismatch at sample " + std::to_string(t));
  }

  // monotone truncation
  using namespace rapid_decay;
  const auto f2 = MarkedGroup::free_group(2);
  const auto z2 = MarkedGroup::lattice(2);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const bool free = s % 2 == 0;
    const auto& g = free ? f2 : z2;
    const int r0 = free ? 2 : 3;
    const auto f = random_function(g, r0, 12, 100 + s);
    const double l1 = l1_norm(f);
    double prev = 0;
    for (int r = r0; r <= r0 + (free ? 4 : 12); r += free ? 1 : 3) {
      const double v = reduced_norm_truncated(g, f, r).lower;
      c.expect(v >= prev - kMonotoneSlack, "non-monotone at function " + std::to_string(s));
      c.expect(v <= l1 + kMonotoneSlack, "above l1 at function " + std::to_string(s));
      prev = v;
    }
  }
  return c.done("scale-7 invariance on " + std::to_string(compared) +
                " parameters; 100 decompose/resum round trips; 50 monotone profiles");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "compact formal-degree oracle", 10, criterion1},
      {2, "SL(2,R) classification", 1, criterion2},
      {3, "su21 chamber count", 5, criterion3},
      {4, "exclusion corollaries", 1, criterion4},
      {5, "spin identities", 1, criterion5},
      {6, "Fredholm index oracle", 10, criterion6},
      {7, "discrete-series idempotents", 5, criterion7},
      {8, "norm laboratory", 30, criterion8},
      {9, "property/metamorphic suite", 60, criterion9},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit) {
      o.ok = false;
      o.detail += " [over time limit]";
    }
    failures += !o.ok;
    std::printf("%s  %d  %-30s %7.3fs / %3.0fs  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, c.limit,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
