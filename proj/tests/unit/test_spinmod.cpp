#include "doctest.h"

#include "dirac_atlas/catalog.hpp"
#include "dirac_atlas/error.hpp"
#include "dirac_atlas/spinmod.hpp"

using namespace dirac_atlas;
using namespace dirac_atlas::spinmod;

namespace {

const RealPair& pair(const std::string& name) { return catalog::builtin_catalog().find(name); }

long long dim(const VirtualCharacter& chi) { return repring::dimension(chi); }

}  // namespace

TEST_CASE("sl2r") {
  const auto& p = pair("sl2r");
  CHECK(p.equal_rank);
  CHECK(p.noncompact_positive.size() == 1);
  CHECK(p.compact_positive.empty());
  const auto s = spin_characters(p);
  CHECK(s.s_plus.terms().size() == 1);
  CHECK(s.s_plus.multiplicity(Weight{1}) == 1);   // alpha/2
  CHECK(s.s_minus.multiplicity(Weight{-1}) == 1);
  const auto d = spin_difference_character(p);
  CHECK(d.multiplicity(Weight{1}) == 1);
  CHECK(d.multiplicity(Weight{-1}) == -1);
  CHECK(d.terms().size() == 2);
}

TEST_CASE("sl2r liftability depends on the lattice") {
  const auto root = check_spin_structure(with_lattice(pair("sl2r"), Lattice::Root));
  CHECK_FALSE(root.lifts_on_G);
  CHECK(root.lifts_on_double_cover);
  CHECK(check_spin_structure(pair("sl2r")).lifts_on_G);
}

TEST_CASE("su21") {
  const auto& p = pair("su21");
  CHECK(p.noncompact_positive.size() == 2);
  CHECK(p.compact_positive.size() == 1);
  CHECK(p.k->cartan().str() == "A1");
  const auto s = spin_characters(p);
  CHECK(dim(s.s_plus) + dim(s.s_minus) == 4);
  const Weight half_sum = (p.noncompact_positive[0] + p.noncompact_positive[1]) * Rational(1, 2);
  CHECK(s.s_plus.multiplicity(half_sum) == 1);
  CHECK(s.s_plus.multiplicity(-half_sum) == 1);
  CHECK(spin_difference_character(p) == s.s_plus - s.s_minus);
  CHECK(spin_difference_character(p).terms().size() == 4);
  const auto st = check_spin_structure(p);
  CHECK(st.rho_n == half_sum);
  CHECK_FALSE(st.lifts_on_G);
  CHECK(st.lifts_on_double_cover);
}

TEST_CASE("compact pairs") {
  const auto& p = pair("compact_A2");
  CHECK(p.noncompact_positive.empty());
  CHECK(p.dim_p == 0);
  const auto s = spin_characters(p);
  CHECK(s.s_plus == repring::trivial_character(p.k));
  CHECK(s.s_minus.is_zero());
  CHECK(spin_difference_character(p) == repring::trivial_character(p.k));
  CHECK(check_spin_structure(p).lifts_on_G);
}

TEST_CASE("catalog-wide spin identities") {
  for (const auto& p : catalog::builtin_catalog().pairs()) {
    CAPTURE(p.name);
    if (!p.equal_rank) {
      CHECK_THROWS_AS(spin_characters(p), ValidationError);
      CHECK(spin_difference_character(p).is_zero());
      continue;
    }
    CHECK(grading_is_additive(*p.g, p.compact_positive));
    CHECK(p.parity == 0);
    CHECK(p.k->ambient_dim() == p.g->ambient_dim());
    const auto s = spin_characters(p);
    const long long n = static_cast<long long>(p.noncompact_positive.size());
    CHECK(dim(s.s_plus) + dim(s.s_minus) == (1LL << n));
    if (n > 0) CHECK(dim(s.s_plus) == dim(s.s_minus));
    CHECK(s.s_plus - s.s_minus == spin_difference_character(p));
    CHECK(repring::is_weyl_invariant(s.s_plus));
  }
}

TEST_CASE("compact subsystems are typed") {
  CHECK(pair("sp4r").k->cartan().str() == "A1");
  CHECK(pair("g2split").k->cartan().str() == "A1xA1");
  CHECK(pair("compact_B3").k->cartan().str() == "B3");
  CHECK(pair("compact_C3").k->cartan().str() == "C3");
  CHECK(pair("compact_F4").k->cartan().str() == "F4");
  CHECK(pair("compact_D4").k->cartan().str() == "D4");
  CHECK(pair("sl2r").k->cartan().str() == "");
}

TEST_CASE("unequal-rank sl2c has vanishing spin difference") {
  const auto& p = pair("sl2c");
  CHECK_FALSE(p.equal_rank);
  CHECK(p.dim_p == 3);
  CHECK(p.parity == 1);
  CHECK(spin_difference_character(p).is_zero());
}

TEST_CASE("gradings that are not additive are rejected") {
  // a1 compact, a2 compact, a1+a2 noncompact
  CHECK_THROWS_AS(build_pair(rootsys::CartanType::parse("A2"), {{1, 0}, {0, 1}}), ValidationError);
  // a1 and a2 noncompact forces a1+a2 compact; marking only a1 compact is fine
  CHECK_NOTHROW(build_pair(rootsys::CartanType::parse("A2"), {{1, 0}}));
  CHECK_THROWS_AS(build_pair(rootsys::CartanType::parse("A2"), {{1, 0}, {1, 1}}), ValidationError);
}

TEST_CASE("catalog parsing") {
  using nlohmann::json;
  const json good = {{"version", 1},
                     {"pairs", {{{"name", "x"}, {"g", "A1"}, {"compact", json::array()}, {"lattice", "root"}}}}};
  const auto cat = catalog::parse_catalog(good);
  CHECK(cat.find("x").lattice == Lattice::Root);
  CHECK_THROWS_AS(cat.find("y"), ValidationError);

  json bad = good;
  bad["pairs"][0]["colour"] = "red";
  CHECK_THROWS_AS(catalog::parse_catalog(bad), ValidationError);
  bad = good;
  bad["pairs"].push_back(good["pairs"][0]);
  CHECK_THROWS_AS(catalog::parse_catalog(bad), ValidationError);
  bad = good;
  bad["version"] = 99;
  CHECK_THROWS_AS(catalog::parse_catalog(bad), ValidationError);
}
