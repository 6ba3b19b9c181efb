#include "doctest.h"

#include <cmath>
#include <fstream>
#include <random>

#include "dirac_atlas/error.hpp"
#include "dirac_atlas/rapid_decay.hpp"

using namespace dirac_atlas;
using namespace dirac_atlas::rapid_decay;

namespace {

GroupFunction on_z(std::initializer_list<std::pair<int, double>> terms) {
  GroupFunction f;
  for (auto [n, c] : terms) f[{n}] += c;
  return f;
}

}  // namespace

TEST_CASE("free group words reduce") {
  const auto f2 = MarkedGroup::free_group(2);
  const auto a = f2.parse_word("a"), A = f2.parse_word("A");
  CHECK(f2.multiply(a, A) == f2.identity());
  CHECK(f2.format(f2.multiply(f2.parse_word("abB"), f2.parse_word("bA"))) == "ab" + std::string("A"));
  CHECK(f2.inverse(f2.parse_word("ab")) == f2.parse_word("BA"));
  CHECK(f2.format(f2.identity()) == "1");
  CHECK_THROWS_AS(f2.parse_word("c"), ValidationError);
  CHECK_THROWS_AS(f2.check({1, -1}), ValidationError);
}

TEST_CASE("delta_a * delta_a^-1 = delta_e") {
  const auto f3 = MarkedGroup::free_group(3);
  for (int k = 1; k <= 3; ++k) {
    const auto x = Element{k};
    CHECK(convolve(f3, delta(x), delta(f3.inverse(x))) == delta(f3.identity()));
  }
}

TEST_CASE("length function axioms") {
  for (const auto& g : {MarkedGroup::free_group(2), MarkedGroup::lattice(2),
                        MarkedGroup::finite(ktheory::symmetric_group(3), {1, 2})}) {
    CAPTURE(g.name());
    const auto ball = g.ball(3);
    CHECK(g.length(g.identity()) == 0);
    for (const auto& x : ball) {
      CHECK(g.length(x) == g.length(g.inverse(x)));
      for (const auto& y : ball) CHECK(g.length(g.multiply(x, y)) <= g.length(x) + g.length(y));
    }
  }
}

TEST_CASE("ball sizes") {
  const auto f2 = MarkedGroup::free_group(2);
  for (int r = 0; r <= 6; ++r) {
    const std::size_t expected = 2 * static_cast<std::size_t>(std::pow(3, r)) - 1;
    CHECK(f2.ball_size(r) == expected);
    CHECK(f2.ball(r).size() == expected);
  }
  CHECK(MarkedGroup::lattice(1).ball_size(500) == 1001);
  CHECK(MarkedGroup::lattice(2).ball(2).size() == 13);
  CHECK(f2.sphere(2).size() == 12);
  CHECK(f2.ball_size(20) == kMaxBallSize + 1);
  CHECK_THROWS_AS(f2.ball(20), ValidationError);
}

TEST_CASE("l1 and hs norms") {
  const auto z = MarkedGroup::lattice(1);
  CHECK(l1_norm(delta({5})) == 1);
  CHECK(l1_norm(on_z({{1, 1}, {2, 1}})) == 2);
  GroupFunction f;
  f[{0}] = 1.0;
  f[{1}] = Complex(0, -2);
  CHECK(l1_norm(f) == doctest::Approx(3));
  CHECK(hs_norm(z, delta({0}), 3.5) == doctest::Approx(1));
  CHECK(hs_norm(z, delta({1}), 2) == doctest::Approx(4));
  CHECK(hs_norm(z, on_z({{1, 1}, {-1, 1}}), 1) == doctest::Approx(std::sqrt(8.0)));
}

TEST_CASE("l1 is submultiplicative") {
  const auto f2 = MarkedGroup::free_group(2);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto f = random_function(f2, 3, 20, 2 * s), h = random_function(f2, 3, 20, 2 * s + 1);
    CHECK(l1_norm(convolve(f2, f, h)) <= l1_norm(f) * l1_norm(h) + 1e-9);
  }
}

TEST_CASE("reduced norm of a point mass is 1") {
  const auto f2 = MarkedGroup::free_group(2);
  for (int r = 2; r <= 5; ++r) {
    const auto e = reduced_norm_truncated(f2, delta(f2.parse_word("ab")), r);
    CHECK(e.lower == doctest::Approx(1).epsilon(1e-9));
    CHECK(e.upper == 1);
  }
  CHECK_THROWS_AS(reduced_norm_truncated(f2, delta(f2.parse_word("abab")), 2), ValidationError);
}

TEST_CASE("Z: 1 + z + z^2 approaches 3") {
  const auto z = MarkedGroup::lattice(1);
  const auto f = on_z({{0, 1}, {1, 1}, {2, 1}});
  const auto e = reduced_norm_truncated(z, f, 500);
  CHECK(e.lower >= 3 - 1e-3);
  CHECK(e.lower <= 3 + 1e-9);
  const auto o = fourier_sup_norm(z, f);
  CHECK(o.lower == doctest::Approx(3).epsilon(1e-12));
  CHECK(o.upper >= 3);
}

TEST_CASE("Z: flipped witness matches the grid oracle") {
  const auto z = MarkedGroup::lattice(1);
  const auto f = on_z({{0, 1}, {1, 1}, {2, -1}});
  const auto o = fourier_sup_norm(z, f);
  CHECK(o.upper - o.lower < 1e-6);
  CHECK(o.lower == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
  const auto e = reduced_norm_truncated(z, f, 500);
  CHECK(std::abs(e.lower - o.lower) < 1e-3);
  CHECK(3 - e.lower >= 0.2);
}

TEST_CASE("Z^2 Fourier oracle brackets the truncation") {
  const auto z2 = MarkedGroup::lattice(2);
  GroupFunction f;
  f[{0, 0}] = 1.0;
  f[{1, 0}] = Complex(0, 1);
  f[{0, 1}] = -1.0;
  f[{1, 1}] = 0.5;
  const auto o = fourier_sup_norm(z2, f, 256);
  const auto e = reduced_norm_truncated(z2, f, 20);
  CHECK(e.lower <= o.upper + 1e-9);
  CHECK(o.lower <= l1_norm(f) + 1e-12);
}

TEST_CASE("truncated reduced norms are monotone in R and below l1") {
  const auto f2 = MarkedGroup::free_group(2);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto f = random_function(f2, 2, 8, s);
    double prev = 0;
    for (int r = 2; r <= 6; ++r) {
      const double v = reduced_norm_truncated(f2, f, r).lower;
      CHECK(v >= prev - 1e-6);
      CHECK(v <= l1_norm(f) + 1e-6);
      prev = v;
    }
    const auto prof = reduced_norm_profile(f2, f, {2, 3, 4, 5, 6});
    for (std::size_t i = 1; i < prof.size(); ++i) CHECK(prof[i].lower >= prof[i - 1].lower);
  }
}

TEST_CASE("F2: a + A + b + B grows towards 2 sqrt 3") {
  const auto f2 = MarkedGroup::free_group(2);
  GroupFunction f;
  for (const char* w : {"a", "A", "b", "B"}) f[f2.parse_word(w)] = 1.0;
  const auto prof = reduced_norm_profile(f2, f, {2, 4, 6, 8});
  CHECK(prof.back().lower < 2 * std::sqrt(3.0));
  CHECK(prof.back().lower > 3.2);
  CHECK(prof.back().upper == 4);
}

TEST_CASE("Schur multiplication") {
  const auto f2 = MarkedGroup::free_group(2);
  const auto f = random_function(f2, 3, 30, 4);
  CHECK(schur_multiply([](const Element&) { return Complex(1); }, f) == f);
  auto cut = schur_multiply(ball_indicator(f2, 1), f);
  prune(cut);
  for (const auto& [x, c] : f) {
    if (f2.length(x) <= 1) CHECK(cut.at(x) == c);
    else CHECK(cut.count(x) == 0);
  }
  const double s = 1.5;
  const auto w = schur_multiply(sobolev_weight(f2, s), f);
  double l2 = 0;
  for (const auto& [x, c] : f) l2 += std::norm(c);
  CHECK(hs_norm(f2, w, s) == doctest::Approx(std::sqrt(l2)));
}

TEST_CASE("l1 and hs are unconditional") {
  const auto f2 = MarkedGroup::free_group(2);
  const auto f = random_function(f2, 3, 25, 8);
  for (const char* n : {"l1", "hs:2", "hs:0.5"}) {
    CAPTURE(n);
    const auto r = unconditionality_probe(NormSpec::parse(n), f2, f, 100, 1);
    CHECK(r.max_deviation <= 1e-12);
  }
}

TEST_CASE("the reduced norm is not unconditional on Z") {
  const auto z = MarkedGroup::lattice(1);
  const auto f = on_z({{0, 1}, {1, 1}, {2, 1}});
  auto norm = NormSpec::parse("red:60");
  const auto r = unconditionality_probe(norm, z, f, 20, 42, PhaseMode::Sign);
  CHECK(r.max_deviation > 0.2);
  CHECK(r.witness.size() == 3);
  CHECK(std::abs(r.witness_value - r.base) == doctest::Approx(r.max_deviation));
}

TEST_CASE("regression witness on Z") {
  std::ifstream in(DIRAC_ATLAS_SOURCE_DIR "/tests/fixtures/z_unconditionality_witness.json");
  REQUIRE(in);
  const auto fx = nlohmann::json::parse(in);
  const auto z = MarkedGroup::lattice(1);
  const int r = fx["radius"];
  const auto base = reduced_norm_truncated(z, function_from_json(z, fx["base"]), r);
  const auto flip = reduced_norm_truncated(z, function_from_json(z, fx["witness"]), r);
  CHECK(base.lower == doctest::Approx(fx["base_red_lower"].get<double>()).epsilon(1e-12));
  CHECK(flip.lower == doctest::Approx(fx["witness_red_lower"].get<double>()).epsilon(1e-12));
  CHECK(base.lower - flip.lower > 0.2);
  CHECK(std::abs(flip.lower - fx["fourier_witness"].get<double>()) < 1e-3);
}

TEST_CASE("norm specs") {
  CHECK(NormSpec::parse("l1").kind == NormSpec::Kind::L1);
  CHECK(NormSpec::parse("hs:2").s == 2);
  CHECK(NormSpec::parse("red:500").radius == 500);
  CHECK(NormSpec::parse("red:500").str() == "red:500");
  CHECK_THROWS_AS(NormSpec::parse("linf"), ValidationError);
  CHECK_THROWS_AS(NormSpec::parse("hs:-1"), ValidationError);
}

TEST_CASE("(RD) probe stays bounded on Z and F2") {
  const auto z = MarkedGroup::lattice(1);
  RdProbeOptions opts;
  opts.support_radii = {4, 8, 16, 32};
  const auto r = rd_inequality_probe(z, 1, 3, opts);
  CHECK(r.appears_bounded);
  CHECK(r.max_ratio <= 1 + 1e-9);

  const auto f2 = MarkedGroup::free_group(2);
  RdProbeOptions sph;
  sph.support_radii = {1, 2, 3};
  sph.sphere_supported = true;
  sph.samples = 4;
  const auto q = rd_inequality_probe(f2, 2, 3, sph);
  CHECK(q.appears_bounded);
  CHECK_THROWS_AS(rd_inequality_probe(MarkedGroup::finite(ktheory::symmetric_group(3)), 1, 0), ValidationError);
}

TEST_CASE("Schur ratio probe") {
  const auto f2 = MarkedGroup::free_group(2);
  const auto r = schur_ratio_probe(f2, 1, 2, 5, 9);
  CHECK(r.max_ratio > 0);
  CHECK(r.compression_radius == 4);
  const auto all = schur_ratio_probe(f2, 5, 2, 5, 9);
  CHECK(all.max_ratio == doctest::Approx(1));
}

TEST_CASE("group function json round trip") {
  const auto f2 = MarkedGroup::free_group(2);
  const auto f = random_function(f2, 2, 6, 1);
  CHECK(function_from_json(f2, to_json(f2, f)) == f);
  const auto z2 = MarkedGroup::lattice(2);
  const auto h = random_function(z2, 3, 6, 1);
  CHECK(function_from_json(z2, to_json(z2, h)) == h);
  CHECK_THROWS_AS(function_from_json(z2, nlohmann::json::parse(R"([{"vector":[1],"re":1,"im":0}])")),
                  ValidationError);
}

TEST_CASE("marked groups from names") {
  CHECK(MarkedGroup::from_name("z").kind() == GroupKind::Lattice);
  CHECK(MarkedGroup::from_name("z^3").rank() == 3);
  CHECK(MarkedGroup::from_name("f2").kind() == GroupKind::Free);
  CHECK(MarkedGroup::from_name("finite:s3").kind() == GroupKind::Finite);
  CHECK_THROWS_AS(MarkedGroup::from_name("banana"), ValidationError);
}
