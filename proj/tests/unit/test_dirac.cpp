#include "doctest.h"

#include <set>

#include "dirac_atlas/catalog.hpp"
#include "dirac_atlas/dirac.hpp"
#include "dirac_atlas/error.hpp"

using namespace dirac_atlas;
using namespace dirac_atlas::dirac;

namespace {

const RealPair& pair(const std::string& name) { return catalog::builtin_catalog().find(name); }

InductionResult induct(const std::string& name, const Weight& mu, DegreeRoots roots = DegreeRoots::Positive) {
  return dirac_induct(IrrLabel{mu}, pair(name), roots);
}

DiscreteSeriesParameter ds(const InductionResult& r) {
  REQUIRE(std::holds_alternative<DiscreteSeriesParameter>(r));
  return std::get<DiscreteSeriesParameter>(r);
}

ExclusionReason reason(const InductionResult& r) {
  REQUIRE(std::holds_alternative<Exclusion>(r));
  return std::get<Exclusion>(r).reason;
}

}  // namespace

TEST_CASE("sl2r: mu = 0 is singular") {
  CHECK(reason(induct("sl2r", Weight{0})) == ExclusionReason::Singular);
}

TEST_CASE("sl2r: mu = n alpha/2 has formal degree n") {
  for (long n = 1; n <= 12; ++n) {
    const auto& p = ds(induct("sl2r", Weight{n}));
    CHECK(p.formal_degree == n);
    CHECK(p.lambda == Weight{n});
    CHECK(p.chamber_id == 0);
  }
  const auto r = dirac_induct(IrrLabel{Weight::parse("3/2")}, pair("sl2r"));
  CHECK(ds(r).formal_degree == Rational(3, 2));
  CHECK_FALSE(ds(r).on_lattice);
}

TEST_CASE("sl2r: lambda = -rho has signed trace -1") {
  const auto& p = ds(induct("sl2r", Weight{-1}));
  CHECK(p.signed_trace == -1);
  CHECK(p.formal_degree == 1);
  CHECK(p.chamber_id == 1);
}

TEST_CASE("compact A1: formal degree is dim V") {
  for (long m = 0; m <= 10; ++m) CHECK(ds(induct("compact_A1", Weight{m})).formal_degree == m + 1);
}

TEST_CASE("formal degree at rho is 1") {
  for (const auto& p : catalog::builtin_catalog().pairs()) {
    if (!p.equal_rank) continue;
    CAPTURE(p.name);
    CHECK(formal_degree(p.g->rho(), p) == 1);
    CHECK(formal_degree(p.g->rho(), p, DegreeRoots::Simple) == 1);
  }
}

TEST_CASE("singular lambda is rejected by formal_degree") {
  CHECK_THROWS_AS(formal_degree(Weight{0, 0}, pair("su21")), ValidationError);
}

TEST_CASE("chambers") {
  const auto& a2 = *pair("compact_A2").g;
  CHECK(chamber_of(a2.rho(), a2) == 0);
  CHECK(chamber_of(-a2.rho(), a2) == 5);
  ChamberIndex idx(a2);
  CHECK(idx.size() == 6);
  std::set<std::size_t> seen;
  for (const auto& w : rootsys::weyl_orbit(a2.rho(), a2)) seen.insert(idx.chamber_of(w));
  CHECK(seen.size() == 6);
  CHECK_THROWS_AS(idx.chamber_of(Weight{0, 0}), ValidationError);
  CHECK(chamber_of(Weight{2}, *pair("sl2r").g) == 0);
}

TEST_CASE("unequal rank and parity exclusions") {
  CHECK(reason(induct("sl2c", Weight{0})) == ExclusionReason::UnequalRank);
  CHECK(reason(induct("sl3r", Weight{2})) == ExclusionReason::UnequalRank);
  CHECK(reason(induct("sl3c", Weight{1, 0})) == ExclusionReason::UnequalRank);
  for (std::string name : {"sl2c", "sl3r", "sl3c"}) {
    CAPTURE(name);
    for (long b : {1L, 10L, 100L, 1000L}) CHECK(enumerate_discrete_series(pair(name), b).empty());
  }
}

TEST_CASE("invalid K-types are rejected") {
  CHECK_THROWS_AS(induct("su21", Weight{-1, 0}), ValidationError);
  CHECK_THROWS_AS(induct("su21", Weight{1}), ValidationError);
  CHECK_THROWS_AS(dirac_induct(IrrLabel{Weight::parse("1/3")}, pair("sl2r")), ValidationError);
}

TEST_CASE("sl2r enumeration on the weight lattice") {
  const auto list = enumerate_discrete_series(pair("sl2r"), Rational(9, 2));
  // (n alpha/2, n alpha/2) = n^2/2 <= 9/2
  std::set<long> ns;
  for (const auto& p : list) {
    CHECK(p.lambda.dim() == 1);
    CHECK(is_integer(p.lambda[0]));
    ns.insert(p.lambda[0].get_num().get_si());
    CHECK(p.formal_degree == abs(p.lambda[0]));
  }
  CHECK(ns == std::set<long>{-3, -2, -1, 1, 2, 3});
  const auto root = enumerate_discrete_series(pair("sl2r"), Rational(9, 2), DegreeRoots::Positive, Lattice::Root);
  CHECK(root.size() == 2);
}

TEST_CASE("su21 realizes exactly 3 chambers") {
  const auto list = enumerate_discrete_series(pair("su21"), 60);
  std::set<std::size_t> ids;
  for (const auto& p : list) ids.insert(p.chamber_id);
  CHECK(ids.size() == 3);
  CHECK(enumerate_discrete_series(pair("su21"), Rational(1, 10)).empty());
}

TEST_CASE("enumeration round trip, regularity and ordering") {
  for (std::string name : {"su21", "sp4r", "g2split", "compact_B2"}) {
    CAPTURE(name);
    const auto& p = pair(name);
    const auto list = enumerate_discrete_series(p, 30);
    CHECK_FALSE(list.empty());
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& x = list[i];
      CHECK(rootsys::is_regular(x.lambda, *p.g));
      CHECK(x.min_k_type.highest_weight + p.k->rho() == x.lambda);
      CHECK(x.formal_degree > 0);
      const auto back = dirac_induct(x.min_k_type, p);
      CHECK(ds(back).lambda == x.lambda);
      CHECK(ds(back).formal_degree == x.formal_degree);
      if (i > 0) {
        const auto n0 = rootsys::inner(list[i - 1].lambda, list[i - 1].lambda, *p.g);
        const auto n1 = rootsys::inner(x.lambda, x.lambda, *p.g);
        CHECK((n0 < n1 || (n0 == n1 && graded_lex_less(list[i - 1].lambda, x.lambda))));
      }
    }
  }
}

TEST_CASE("exclusion soundness: singular iff not regular") {
  const auto& p = pair("su21");
  for (long a = 0; a <= 4; ++a)
    for (long b = -4; b <= 4; ++b) {
      const Weight mu{a + b, -b};
      if (!rootsys::is_dominant(mu, *p.k) || !rootsys::is_integral(mu, *p.k)) continue;
      const auto r = dirac_induct(IrrLabel{mu}, p);
      const bool regular = rootsys::is_regular(mu + p.k->rho(), *p.g);
      CHECK(std::holds_alternative<DiscreteSeriesParameter>(r) == regular);
    }
}

TEST_CASE("compact oracle on small weights") {
  for (std::string name : {"compact_A2", "compact_B2", "compact_G2", "compact_C3"}) {
    CAPTURE(name);
    const auto& p = pair(name);
    for (const auto& x : enumerate_discrete_series(p, 20)) {
      const auto chi = repring::irr_character(x.min_k_type, p.k);
      CHECK(x.formal_degree == Rational(static_cast<long>(repring::dimension(chi))));
    }
  }
}

TEST_CASE("simple-root reading differs from the Weyl dimension") {
  const auto& p = pair("compact_A2");
  const auto r = induct("compact_A2", Weight{1, 0}, DegreeRoots::Simple);
  CHECK(ds(r).formal_degree == 2);  // (2)(1) from the simple roots vs 3
  CHECK(ds(induct("compact_A2", Weight{1, 0})).formal_degree == 3);
  (void)p;
}

TEST_CASE("rescaling the form by 7 changes nothing") {
  for (const auto& p : catalog::builtin_catalog().pairs()) {
    CAPTURE(p.name);
    const auto q = spinmod::with_scaled_form(p, 7);
    const auto a = enumerate_discrete_series(p, 20);
    const auto b = enumerate_discrete_series(q, 140);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].lambda == b[i].lambda);
      CHECK(a[i].formal_degree == b[i].formal_degree);
      CHECK(a[i].signed_trace == b[i].signed_trace);
      CHECK(a[i].chamber_id == b[i].chamber_id);
    }
  }
}

TEST_CASE("compact pairing oracle") {
  const auto& p = pair("compact_A1");
  CHECK(pairing_compact_oracle(IrrLabel{Weight{1}}, IrrLabel{Weight{1}}, p) == 1);
  CHECK(pairing_compact_oracle(IrrLabel{Weight{2}}, IrrLabel{Weight{0}}, p) == 0);
  CHECK(pairing_compact_oracle(IrrLabel{Weight{0}}, IrrLabel{Weight{0}}, p) == 1);
  CHECK(is_fully_compact(p));
  CHECK_FALSE(is_fully_compact(pair("su21")));
  const auto& b2 = pair("compact_B2");
  for (long x = 0; x <= 2; ++x)
    for (long y = 0; y <= 2; ++y) {
      long long sum = 0;
      for (long u = 0; u <= 3; ++u)
        for (long v = 0; v <= 3; ++v) {
          const auto n = pairing_compact_oracle(IrrLabel{Weight{x, y}}, IrrLabel{Weight{u, v}}, b2);
          sum += n * n;
        }
      CHECK(sum == 1);
    }
}
