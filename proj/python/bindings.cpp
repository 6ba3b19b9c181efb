#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dirac_atlas/catalog.hpp"
#include "dirac_atlas/cli.hpp"
#include "dirac_atlas/dirac.hpp"
#include "dirac_atlas/error.hpp"
#include "dirac_atlas/ktheory.hpp"
#include "dirac_atlas/rapid_decay.hpp"

namespace py = pybind11;
using namespace dirac_atlas;

namespace {

// Structured results cross the boundary as JSON text; the Python side parses.
std::string dump(const nlohmann::json& j) { return j.dump(); }

repring::RootSystemPtr root_system(const std::string& type) {
  return std::make_shared<const rootsys::RootSystem>(rootsys::build_root_system(rootsys::CartanType::parse(type)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "dirac_atlas native core";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalAmbiguity>(m, "NumericalAmbiguity", PyExc_ArithmeticError);

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> argv{"dirac-atlas"};
        argv.insert(argv.end(), args.begin(), args.end());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(argv, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command line; returns (exit_code, stdout, stderr).");

  m.def("schema_names", &cli::schema_names);
  m.def("schema", [](const std::string& name) { return std::string(cli::schema(name)); }, py::arg("name"));

  m.def(
      "root_system_json", [](const std::string& type) { return dump(rootsys::to_json(*root_system(type))); },
      py::arg("type"));
  m.def(
      "weyl_group_order", [](const std::string& type) { return rootsys::weyl_group_order(*root_system(type)); },
      py::arg("type"));
  m.def(
      "weyl_dimension",
      [](const std::string& type, const std::string& hw) {
        return to_string(repring::weyl_dimension(Weight::parse(hw), *root_system(type)));
      },
      py::arg("type"), py::arg("highest_weight"));
  m.def(
      "character_dimension",
      [](const std::string& type, const std::string& hw) {
        return repring::dimension(repring::irr_character(repring::IrrLabel{Weight::parse(hw)}, root_system(type)));
      },
      py::arg("type"), py::arg("highest_weight"));

  m.def("pair_names", [] {
    std::vector<std::string> names;
    for (const auto& p : catalog::builtin_catalog().pairs()) names.push_back(p.name);
    return names;
  });
  m.def(
      "dirac_induct_json",
      [](const std::string& pair, const std::string& hw, const std::string& roots) {
        const auto& p = catalog::builtin_catalog().find(pair);
        return dump(dirac::to_json(
            dirac::dirac_induct(repring::IrrLabel{Weight::parse(hw)}, p, dirac::parse_degree_roots(roots))));
      },
      py::arg("pair"), py::arg("highest_weight"), py::arg("degree_roots") = "positive");
  m.def(
      "enumerate_json",
      [](const std::string& pair, const std::string& bound) {
        const auto& p = catalog::builtin_catalog().find(pair);
        nlohmann::json out = nlohmann::json::array();
        for (const auto& x : dirac::enumerate_discrete_series(p, parse_rational(bound))) out.push_back(dirac::to_json(x));
        return dump(out);
      },
      py::arg("pair"), py::arg("bound"));

  m.def(
      "wedderburn_blocks",
      [](const std::string& group, std::uint64_t seed) {
        return ktheory::wedderburn(ktheory::group_from_name(group), seed).algebra.blocks;
      },
      py::arg("group"), py::arg("seed"));
  m.def(
      "fredholm_index",
      [](std::uint64_t seed) {
        const auto [a, mod] = ktheory::random_fredholm_module(seed);
        return py::make_tuple(a.blocks, ktheory::fredholm_index(mod, a).ranks,
                              ktheory::fredholm_index_naive(mod, a).ranks);
      },
      py::arg("seed"), "Random module: (blocks, stabilized index, ker - coker).");

  m.def(
      "reduced_norm",
      [](const std::string& group, const std::string& function_json, int radius) {
        const auto g = rapid_decay::MarkedGroup::from_name(group);
        const auto f = rapid_decay::function_from_json(g, nlohmann::json::parse(function_json));
        rapid_decay::ReducedNormEstimate e;
        {
          py::gil_scoped_release release;
          e = rapid_decay::reduced_norm_truncated(g, f, radius);
        }
        return py::make_tuple(e.lower, e.upper);
      },
      py::arg("group"), py::arg("function_json"), py::arg("radius"), "(lower, upper = l1) bracket.");
}
