#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dirac_atlas/catalog.hpp"
#include "dirac_atlas/cli.hpp"
#include "dirac_atlas/error.hpp"

using namespace dirac_atlas;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json j() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dirac-atlas");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / ("dirac_atlas_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("cli examples") {
  auto r = run({"ds", "enumerate", "--pair", "sl2c", "--bound", "100"});
  CHECK(r.code == 0);
  CHECK(r.j() == json::array());

  r = run({"ds", "induct", "--pair", "sl2r", "--hw", "3/2"});
  CHECK(r.code == 0);
  CHECK(r.j()["formal_degree"] == "3/2");

  r = run({"rootsys", "info", "G2"});
  CHECK(r.code == 0);
  CHECK(r.j()["num_positive_roots"] == 6);
  CHECK(r.j()["root_system"]["positive_roots"].size() == 6);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kValidationError);
  CHECK(run({"bogus"}).code == cli::kValidationError);
  CHECK(run({"--help"}).code == cli::kSuccess);
  CHECK(run({"rootsys", "info", "Q7"}).code == cli::kValidationError);
  CHECK(run({"ds", "induct", "--pair", "nope", "--hw", "1"}).code == cli::kValidationError);
  CHECK(run({"ds", "induct", "--pair", "su21", "--hw", "-1,0"}).code == cli::kValidationError);
  CHECK(run({"k0", "random-index", "--count", "3"}).code == cli::kValidationError);  // no seed
  CHECK(run({"group", "info", "--group", "s3"}).code == cli::kValidationError);

  const auto near = temp_file("near.json", R"({"algebra":[2],"e0":[2],"e1":[2],"u":[[[1,0],[0,1e-8]]]})");
  CHECK(run({"k0", "index", "--input", near}).code == cli::kNumericalAmbiguity);
  const auto nonidem = temp_file("nonidem.json", R"({"algebra":[1],"element":{"blocks":[[[0.5]]]}})");
  CHECK(run({"k0", "class", "--input", nonidem}).code == cli::kValidationError);
  const auto garbage = temp_file("garbage.json", "{");
  CHECK(run({"k0", "class", "--input", garbage}).code == cli::kValidationError);
}

TEST_CASE("identical invocations are byte-identical") {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"group", "info", "--group", "s4", "--seed", "5"},
        {"rd", "probe-unconditional", "--group", "z", "--seed", "42", "--norm", "red:40"},
        {"k0", "random-index", "--seed", "9", "--count", "20"},
        {"ds", "enumerate", "--pair", "g2split", "--bound", "40"}}) {
    const auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("wedderburn output does not depend on the seed") {
  CHECK(run({"group", "info", "--group", "d4", "--seed", "1"}).out ==
        run({"group", "info", "--group", "d4", "--seed", "2"}).out);
}

TEST_CASE("config files") {
  const auto good = temp_file("good.json", R"({"format":"table","degree_roots":"simple","tolerance":{"tau":1e-10}})");
  const auto c = cli::load_config(good);
  CHECK(c.format == "table");
  CHECK(c.degree_roots == dirac::DegreeRoots::Simple);
  CHECK(c.tolerances.tau == 1e-10);
  CHECK(c.tolerances.gap == 1e-6);

  CHECK_THROWS_AS(cli::config_from_json(json{{"colour", "red"}}), ValidationError);
  CHECK_THROWS_AS(cli::config_from_json(json{{"tolerance", {{"eps", 1}}}}), ValidationError);
  CHECK_THROWS_AS(cli::config_from_json(json{{"format", "xml"}}), ValidationError);
  CHECK_THROWS_AS(cli::config_from_json(json{{"tolerance", {{"tau", 1e-3}}}}), ValidationError);

  const auto bad = temp_file("bad.json", R"({"colour":"red"})");
  CHECK(run({"--config", bad, "rootsys", "info", "A1"}).code == cli::kValidationError);

  auto r = run({"--config", good, "ds", "induct", "--pair", "compact_A2", "--hw", "1,0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("formal_degree") != std::string::npos);
  r = run({"--config", good, "--format", "json", "ds", "induct", "--pair", "compact_A2", "--hw", "1,0"});
  CHECK(r.j()["formal_degree"] == "2");
  CHECK(r.j()["degree_roots"] == "simple");
}

TEST_CASE("catalog override") {
  const auto path = temp_file("catalog.json", R"({"version":1,"pairs":[{"name":"only","g":"A1","compact":[]}]})");
  auto r = run({"--catalog", path, "spin", "pairs"});
  CHECK(r.code == 0);
  CHECK(r.j()["pairs"].size() == 1);
  CHECK(run({"--catalog", path, "spin", "pairs", "--pair", "sl2r"}).code == cli::kValidationError);

  ::setenv(catalog::kCatalogEnv, path.c_str(), 1);
  r = run({"spin", "difference", "--pair", "only"});
  CHECK(r.code == 0);
  CHECK(run({"spin", "difference", "--pair", "sl2r"}).code == cli::kValidationError);
  ::unsetenv(catalog::kCatalogEnv);
  CHECK(run({"spin", "difference", "--pair", "sl2r"}).code == 0);
}

TEST_CASE("schemas") {
  CHECK(cli::schema_names().size() >= 20);
  CHECK(json::parse(cli::schema("ds_induct"))["title"] == "ds_induct");
  CHECK_THROWS_AS(cli::schema("nope"), ValidationError);
  CHECK(run({"--schema", "list"}).code == 0);
  CHECK(json::parse(run({"--schema", "k0_class"}).out)["type"] == "object");
}

TEST_CASE("table output") {
  const auto r = run({"--format", "table", "ds", "enumerate", "--pair", "sl2r", "--bound", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("chamber_id") != std::string::npos);
  CHECK(r.out.find("-----") != std::string::npos);
  CHECK(cli::render_table(json::array()) == "(empty)\n");
}

TEST_CASE("k0 pushforward from the command line") {
  auto r = run({"k0", "pushforward", "--source", "1", "--target", "2", "--theta", "2", "--class", "1"});
  CHECK(r.code == 0);
  CHECK(r.j()["ranks"] == json::array({2}));
  r = run({"k0", "pushforward", "--source", "1", "--target", "2", "--theta", "0", "--class", "1"});
  CHECK(r.code == cli::kValidationError);
}

TEST_CASE("group idempotent from the command line") {
  const auto r = run({"group", "idempotent", "--group", "s3", "--block", "2", "--seed", "1"});
  CHECK(r.code == 0);
  const auto j = r.j();
  CHECK(j["trace_pairing"] == 2);
  CHECK(j["k0_class"] == json::array({0, 0, 1}));
  CHECK(j["idempotency_error"].get<double>() < 1e-12);
  CHECK(run({"group", "idempotent", "--group", "s3", "--block", "7", "--seed", "1"}).code == cli::kValidationError);
}
