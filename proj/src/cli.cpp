#include "dirac_atlas/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "dirac_atlas/catalog.hpp"
#include "dirac_atlas/embedded_data.hpp"
#include "dirac_atlas/error.hpp"
#include "dirac_atlas/rapid_decay.hpp"

namespace dirac_atlas::cli {

using nlohmann::json;

Config config_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  static const std::set<std::string> keys = {"catalog", "format", "degree_roots", "seed", "tolerance"};
  static const std::set<std::string> tol_keys = {"tau", "gap", "power"};
  Config c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (!keys.count(key)) throw ValidationError("unknown config key '" + key + "'");
      if (key == "catalog") c.catalog = value.get<std::string>();
      if (key == "format") c.format = value.get<std::string>();
      if (key == "degree_roots") c.degree_roots = dirac::parse_degree_roots(value.get<std::string>());
      if (key == "seed") c.seed = value.get<std::uint64_t>();
      if (key == "tolerance") {
        if (!value.is_object()) throw ValidationError("config 'tolerance' must be an object");
        for (const auto& [tk, tv] : value.items()) {
          if (!tol_keys.count(tk)) throw ValidationError("unknown config key 'tolerance." + tk + "'");
          const double x = tv.get<double>();
          if (!(x > 0)) throw ValidationError("tolerance." + tk + " must be positive");
          if (tk == "tau") c.tolerances.tau = x;
          if (tk == "gap") c.tolerances.gap = x;
          if (tk == "power") c.power_tolerance = x;
        }
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed config: ") + e.what());
  }
  if (c.format != "json" && c.format != "table") throw ValidationError("format must be json or table");
  if (c.tolerances.tau >= c.tolerances.gap) throw ValidationError("tolerance.tau must be smaller than tolerance.gap");
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

std::vector<std::string> schema_names() {
  std::vector<std::string> out;
  for (const auto& s : embedded::kSchemas) out.emplace_back(s.name);
  return out;
}

std::string_view schema(const std::string& name) {
  for (const auto& s : embedded::kSchemas)
    if (s.name == name) return s.text;
  std::string known;
  for (const auto& s : embedded::kSchemas) known += (known.empty() ? "" : ", ") + std::string(s.name);
  throw ValidationError("unknown schema '" + name + "' (known: " + known + ")");
}

namespace {

bool is_flat(const json& v) {
  if (!v.is_array()) return !v.is_object();
  return std::all_of(v.begin(), v.end(), [](const json& x) { return !x.is_object() && is_flat(x); });
}

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array() && is_flat(v)) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + cell(v[i]);
    return s + ")";
  }
  if (v.is_number_float()) {
    std::ostringstream o;
    o << std::setprecision(12) << v.get<double>();
    return o.str();
  }
  return v.dump();
}

bool is_inline(const json& v) {
  if (!is_flat(v)) return false;
  return !(v.is_array() && !v.empty() && v.front().is_array() && cell(v).size() > 60);
}

bool is_record_list(const json& v) {
  return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const json& x) {
           if (!x.is_object()) return false;
           for (const auto& [k, y] : x.items())
             if (!is_flat(y)) return false;
           return true;
         });
}

void render(const json& j, std::ostream& o, const std::string& indent);

void render_records(const json& rows, std::ostream& o, const std::string& indent) {
  std::vector<std::string> cols;
  for (const auto& r : rows)
    for (const auto& [k, v] : r.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  std::vector<std::size_t> width;
  for (const auto& c : cols) width.push_back(c.size());
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    cells.emplace_back();
    for (std::size_t i = 0; i < cols.size(); ++i) {
      cells.back().push_back(r.contains(cols[i]) ? cell(r[cols[i]]) : "");
      width[i] = std::max(width[i], cells.back().back().size());
    }
  }
  auto line = [&](const std::vector<std::string>& v) {
    o << indent;
    for (std::size_t i = 0; i < v.size(); ++i) {
      o << std::left << std::setw(static_cast<int>(width[i])) << v[i];
      if (i + 1 < v.size()) o << "  ";
    }
    o << "\n";
  };
  line(cols);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& r : cells) line(r);
}

void render(const json& j, std::ostream& o, const std::string& indent) {
  if (is_record_list(j)) return render_records(j, o, indent);
  if (j.is_array()) {
    if (j.empty()) {
      o << indent << "(empty)\n";
      return;
    }
    if (is_inline(j)) {
      o << indent << cell(j) << "\n";
      return;
    }
    if (is_flat(j)) {
      for (const auto& row : j) o << indent << cell(row) << "\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
      o << indent << "[" << i << "]\n";
      render(j[i], o, indent + "  ");
    }
    return;
  }
  if (!j.is_object()) {
    o << indent << cell(j) << "\n";
    return;
  }
  std::size_t key_width = 0;
  for (const auto& [k, v] : j.items())
    if (is_inline(v)) key_width = std::max(key_width, k.size());
  for (const auto& [k, v] : j.items()) {
    if (is_inline(v)) {
      o << indent << std::left << std::setw(static_cast<int>(key_width)) << k << "  " << cell(v) << "\n";
    } else {
      o << indent << k << ":\n";
      render(v, o, indent + "  ");
    }
  }
}

std::vector<long long> parse_int_list(const std::string& text, const char* what) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ValidationError(std::string("bad integer '") + item + "' in " + what);
    }
  }
  if (out.empty()) throw ValidationError(std::string("empty list for ") + what);
  return out;
}

std::vector<int> parse_block_list(const std::string& text, const char* what) {
  std::vector<int> out;
  for (long long x : parse_int_list(text, what)) out.push_back(static_cast<int>(x));
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

json terms_json(const repring::VirtualCharacter& chi) {
  json t = json::array();
  for (const auto& [w, m] : chi.terms()) t.push_back({{"weight", rootsys::to_json(w)}, {"mult", m}});
  return t;
}

json cartan_json(const rootsys::CartanType& t) {
  json rows = json::array();
  for (const auto& row : rootsys::cartan_matrix(t)) rows.push_back(row);
  return rows;
}

std::uint64_t require_seed(const Config& c, const std::string& command) {
  if (!c.seed) throw ValidationError("'" + command + "' is randomized and needs --seed");
  return *c.seed;
}

json complex_json(const std::complex<double>& z) {
  auto tidy = [](double x) {
    const double r = std::round(x * 1e12) / 1e12;
    return r == 0.0 ? 0.0 : r;
  };
  return {tidy(z.real()), tidy(z.imag())};
}

rapid_decay::GroupFunction default_probe_function(const rapid_decay::MarkedGroup& g) {
  // e + s + s^2 for the first generator s.
  rapid_decay::Element s = g.identity();
  if (g.kind() == rapid_decay::GroupKind::Free) s = {1};
  else if (g.kind() == rapid_decay::GroupKind::Lattice) s[0] = 1;
  else throw ValidationError("probe-unconditional needs --input for finite groups");
  rapid_decay::GroupFunction f;
  f[g.identity()] += 1.0;
  f[s] += 1.0;
  f[g.multiply(s, s)] += 1.0;
  return f;
}

}  // namespace

std::string render_table(const json& j) {
  std::ostringstream o;
  render(j, o, "");
  return o.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-series classification, spin modules and K-theory/norm laboratories", "dirac-atlas"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  app.set_version_flag("--version", "dirac-atlas 0.1.0");

  std::string config_path, catalog_path, format, degree_roots_flag, schema_name;
  std::uint64_t seed = 0;
  double tau = 0, gap = 0, power_tol = 0;
  app.add_option("--config", config_path, "JSON config file (unknown keys rejected)")->check(CLI::ExistingFile);
  auto* catalog_opt = app.add_option("--catalog", catalog_path, "pair catalog JSON (overrides $DIRAC_ATLAS_CATALOG)");
  auto* format_opt = app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "table"}));
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomized subcommands");
  auto* tau_opt = app.add_option("--tau", tau, "idempotency / zero tolerance (default 1e-9)");
  auto* gap_opt = app.add_option("--gap", gap, "rank-gap threshold (default 1e-6)");
  auto* power_opt = app.add_option("--power-tol", power_tol, "power-iteration tolerance (default 1e-6)");
  app.add_option("--schema", schema_name, "print the JSON schema NAME ('list' for names) and exit");

  // rootsys
  auto* rootsys_cmd = app.add_subcommand("rootsys", "root systems");
  rootsys_cmd->require_subcommand(1);
  std::string type_text;
  auto* rs_info = rootsys_cmd->add_subcommand("info", "simple and positive roots, form, rho, |W|");
  rs_info->add_option("type", type_text, "Cartan type, e.g. G2 or A1xA1")->required();

  // rep
  auto* rep_cmd = app.add_subcommand("rep", "characters of compact groups");
  rep_cmd->require_subcommand(1);
  std::vector<std::string> hws;
  auto* rep_char = rep_cmd->add_subcommand("character", "weights of an irreducible representation");
  rep_char->add_option("--type", type_text, "Cartan type")->required();
  rep_char->add_option("--hw", hws, "highest weight in fundamental-weight coordinates")->required()->expected(1);
  auto* rep_tensor = rep_cmd->add_subcommand("tensor", "decompose a tensor product");
  rep_tensor->add_option("--type", type_text, "Cartan type")->required();
  rep_tensor->add_option("--hw", hws, "highest weights of the factors (repeat)")->required();

  // spin
  auto* spin_cmd = app.add_subcommand("spin", "spin modules of a pair");
  spin_cmd->require_subcommand(1);
  std::string pair_name, lattice_name;
  auto* spin_chars = spin_cmd->add_subcommand("characters", "S+ and S- by sign vectors");
  spin_chars->add_option("--pair", pair_name, "catalog pair")->required();
  auto* spin_diff = spin_cmd->add_subcommand("difference", "S+ - S- as a product expansion");
  spin_diff->add_option("--pair", pair_name, "catalog pair")->required();
  auto* spin_struct = spin_cmd->add_subcommand("structure", "liftability of K -> SO(p) to Spin(p)");
  spin_struct->add_option("--pair", pair_name, "catalog pair")->required();
  spin_struct->add_option("--lattice", lattice_name, "root | weight | half_weight (default: catalog)");
  auto* spin_pairs = spin_cmd->add_subcommand("pairs", "list the catalog");

  // ds
  auto* ds_cmd = app.add_subcommand("ds", "discrete series via Dirac induction");
  ds_cmd->require_subcommand(1);
  std::string hw_text, bound_text;
  auto* ds_induct = ds_cmd->add_subcommand("induct", "K-type -> Harish-Chandra parameter");
  ds_induct->add_option("--pair", pair_name, "catalog pair")->required();
  ds_induct->add_option("--hw", hw_text, "K highest weight, e.g. 3/2 or 1,0")->required();
  ds_induct->add_option("--degree-roots", degree_roots_flag, "positive | simple")
      ->check(CLI::IsMember({"positive", "simple"}));
  auto* ds_enum = ds_cmd->add_subcommand("enumerate", "all parameters with |mu + rho_K|^2 <= bound");
  ds_enum->add_option("--pair", pair_name, "catalog pair")->required();
  ds_enum->add_option("--bound", bound_text, "rational bound p/q")->required();
  ds_enum->add_option("--lattice", lattice_name, "root | weight | half_weight (default: catalog)");
  ds_enum->add_option("--degree-roots", degree_roots_flag, "positive | simple")
      ->check(CLI::IsMember({"positive", "simple"}));

  // k0
  auto* k0_cmd = app.add_subcommand("k0", "K0 of finite-dimensional semisimple algebras");
  k0_cmd->require_subcommand(1);
  std::string input_path;
  auto* k0_class = k0_cmd->add_subcommand("class", "per-block ranks of an idempotent");
  k0_class->add_option("--input", input_path, "{algebra: [n...], element: {blocks: [...]}}")->required();
  auto* k0_index = k0_cmd->add_subcommand("index", "index of a Fredholm module");
  k0_index->add_option("--input", input_path, "{algebra, e0, e1, u}")->required();
  std::size_t count = 200;
  auto* k0_random = k0_cmd->add_subcommand("random-index", "stabilized vs naive index on random modules");
  k0_random->add_option("--count", count, "number of modules")->check(CLI::Range(1, 100000));
  std::string source_text, target_text, theta_text, class_text;
  auto* k0_push = k0_cmd->add_subcommand("pushforward", "theta_* on K0");
  k0_push->add_option("--source", source_text, "source blocks, e.g. 1,1")->required();
  k0_push->add_option("--target", target_text, "target blocks, e.g. 2")->required();
  k0_push->add_option("--theta", theta_text, "multiplicity rows 'a,b;c,d'")->required();
  k0_push->add_option("--class", class_text, "ranks on the source")->required();

  // group
  auto* group_cmd = app.add_subcommand("group", "finite group algebras");
  group_cmd->require_subcommand(1);
  std::string group_name, table_path, vector_text;
  std::size_t block = 0;
  auto* group_info = group_cmd->add_subcommand("info", "Wedderburn blocks and characters");
  auto* gi_group = group_info->add_option("--group", group_name, "z<n>, s3, s4, d4, q8, trivial");
  group_info->add_option("--table", table_path, "multiplication table JSON")->excludes(gi_group);
  auto* group_idem = group_cmd->add_subcommand("idempotent", "p = d conj(c_x) for one block");
  auto* gd_group = group_idem->add_option("--group", group_name, "z<n>, s3, s4, d4, q8, trivial");
  group_idem->add_option("--table", table_path, "multiplication table JSON")->excludes(gd_group);
  group_idem->add_option("--block", block, "block index")->required();
  group_idem->add_option("--vector", vector_text, "unit vector x (default: first basis vector)");

  // rd
  auto* rd_cmd = app.add_subcommand("rd", "norms on group algebras");
  rd_cmd->require_subcommand(1);
  std::string marked_name, norm_text = "red:64", mode_text = "sign", radii_text;
  double s_value = 0.0;
  int radius = -1;
  std::size_t trials = 20, samples = 10, max_support = 100;
  bool sphere = false;
  auto* rd_norms = rd_cmd->add_subcommand("norms", "l1, H^s and truncated reduced norm");
  rd_norms->add_option("--group", marked_name, "z, z^d, f<k>, finite:<name>")->required();
  rd_norms->add_option("--input", input_path, "[{word|vector|element, re, im}]")->required();
  rd_norms->add_option("--s", s_value, "Sobolev exponent")->check(CLI::NonNegativeNumber);
  rd_norms->add_option("--radius", radius, "compression radius (default: support radius)");
  auto* rd_uncond = rd_cmd->add_subcommand("probe-unconditional", "random phase flips of the coefficients");
  rd_uncond->add_option("--group", marked_name, "z, z^d, f<k>, finite:<name>")->required();
  rd_uncond->add_option("--input", input_path, "function (default: e + s + s^2)");
  rd_uncond->add_option("--norm", norm_text, "l1 | hs:<s> | red:<radius>");
  rd_uncond->add_option("--trials", trials, "number of phase patterns")->check(CLI::PositiveNumber);
  rd_uncond->add_option("--mode", mode_text, "sign | unimodular")->check(CLI::IsMember({"sign", "unimodular"}));
  auto* rd_probe = rd_cmd->add_subcommand("probe-rd", "empirical reduced / H^s ratios");
  rd_probe->add_option("--group", marked_name, "z, z^d, f<k>")->required();
  rd_probe->add_option("--s", s_value, "Sobolev exponent")->check(CLI::NonNegativeNumber);
  rd_probe->add_option("--samples", samples, "samples per scale")->check(CLI::PositiveNumber);
  rd_probe->add_option("--max-support", max_support, "support size cap")->check(CLI::PositiveNumber);
  rd_probe->add_option("--radii", radii_text, "support radii, e.g. 4,8,16");
  rd_probe->add_flag("--sphere", sphere, "draw supports from spheres");
  int multiplier_radius = 1, schur_support = 3;
  auto* rd_schur = rd_cmd->add_subcommand("probe-schur", "red(c f) / red(f) for c a ball indicator");
  rd_schur->add_option("--group", marked_name, "z, z^d, f<k>")->required();
  rd_schur->add_option("--multiplier-radius", multiplier_radius, "radius of the indicator")->check(CLI::NonNegativeNumber);
  rd_schur->add_option("--support-radius", schur_support, "support radius of the samples")->check(CLI::NonNegativeNumber);
  rd_schur->add_option("--samples", samples, "number of samples")->check(CLI::PositiveNumber);
  rd_schur->add_option("--max-support", max_support, "support size cap")->check(CLI::PositiveNumber);
  rd_schur->add_flag("--sphere", sphere, "draw supports from spheres");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidationError;
  }

  try {
    if (!schema_name.empty()) {
      if (schema_name == "list") {
        for (const auto& n : schema_names()) out << n << "\n";
      } else {
        out << schema(schema_name);
      }
      return kSuccess;
    }
    if (app.get_subcommands().empty()) {
      err << app.help();
      return kValidationError;
    }

    Config cfg = config_path.empty() ? Config{} : load_config(config_path);
    if (catalog_opt->count()) cfg.catalog = catalog_path;
    if (format_opt->count()) cfg.format = format;
    if (seed_opt->count()) cfg.seed = seed;
    if (tau_opt->count()) cfg.tolerances.tau = tau;
    if (gap_opt->count()) cfg.tolerances.gap = gap;
    if (power_opt->count()) cfg.power_tolerance = power_tol;
    if (!degree_roots_flag.empty()) cfg.degree_roots = dirac::parse_degree_roots(degree_roots_flag);
    if (!(cfg.tolerances.tau > 0) || cfg.tolerances.tau >= cfg.tolerances.gap)
      throw ValidationError("need 0 < tau < gap");
    if (!(cfg.power_tolerance > 0)) throw ValidationError("power tolerance must be positive");

    auto pair_lookup = [&]() { return catalog::resolve_catalog(cfg.catalog).find(pair_name); };
    auto load_group = [&]() {
      return table_path.empty() ? ktheory::group_from_name(group_name.empty() ? "trivial" : group_name)
                                : ktheory::group_from_json(read_json_file(table_path));
    };
    rapid_decay::PowerIterationOptions power;
    power.tolerance = cfg.power_tolerance;

    json result;
    if (rs_info->parsed()) {
      const auto t = rootsys::CartanType::parse(type_text);
      const auto rs = rootsys::build_root_system(t);
      result = {{"type", t.str()},
                {"rank", rs.rank()},
                {"weyl_order", rootsys::weyl_group_order(rs)},
                {"num_positive_roots", rs.positive_roots().size()},
                {"cartan_matrix", cartan_json(t)},
                {"root_system", rootsys::to_json(rs)}};
    } else if (rep_char->parsed()) {
      const auto t = rootsys::CartanType::parse(type_text);
      auto rs = std::make_shared<const rootsys::RootSystem>(rootsys::build_root_system(t));
      const Weight mu = Weight::parse(hws.at(0));
      auto chi = repring::irr_character(repring::IrrLabel{mu}, rs);
      json dom = json::array();
      for (const auto& [w, m] : repring::dominant_weight_multiplicities(mu, *rs))
        dom.push_back({{"weight", rootsys::to_json(w)}, {"mult", m}});
      result = {{"type", t.str()},
                {"highest_weight", rootsys::to_json(mu)},
                {"dimension", repring::dimension(chi)},
                {"weyl_dimension", to_string(repring::weyl_dimension(mu, *rs))},
                {"dominant_multiplicities", std::move(dom)},
                {"terms", terms_json(chi)}};
    } else if (rep_tensor->parsed()) {
      const auto t = rootsys::CartanType::parse(type_text);
      auto rs = std::make_shared<const rootsys::RootSystem>(rootsys::build_root_system(t));
      auto chi = repring::trivial_character(rs);
      json factors = json::array();
      for (const auto& h : hws) {
        const Weight mu = Weight::parse(h);
        chi = repring::product(chi, repring::irr_character(repring::IrrLabel{mu}, rs));
        factors.push_back(rootsys::to_json(mu));
      }
      json parts = json::array();
      for (const auto& [label, m] : repring::decompose(chi))
        parts.push_back({{"highest_weight", rootsys::to_json(label.highest_weight)},
                         {"mult", m},
                         {"dimension", repring::dimension(repring::irr_character(label, rs))}});
      result = {{"type", t.str()},
                {"factors", std::move(factors)},
                {"dimension", repring::dimension(chi)},
                {"decomposition", std::move(parts)}};
    } else if (spin_chars->parsed()) {
      const auto pair = pair_lookup();
      const auto s = spinmod::spin_characters(pair);
      const auto diff = spinmod::spin_difference_character(pair);
      result = {{"pair", pair.name},
                {"num_noncompact_positive", pair.noncompact_positive.size()},
                {"dim_s_plus", repring::dimension(s.s_plus)},
                {"dim_s_minus", repring::dimension(s.s_minus)},
                {"s_plus", terms_json(s.s_plus)},
                {"s_minus", terms_json(s.s_minus)},
                {"difference", terms_json(diff)},
                {"expansion_agrees", s.s_plus - s.s_minus == diff}};
    } else if (spin_diff->parsed()) {
      const auto pair = pair_lookup();
      const auto diff = spinmod::spin_difference_character(pair);
      result = {{"pair", pair.name},
                {"equal_rank", pair.equal_rank},
                {"is_zero", diff.is_zero()},
                {"difference", terms_json(diff)}};
    } else if (spin_struct->parsed()) {
      auto pair = pair_lookup();
      if (!lattice_name.empty()) pair = spinmod::with_lattice(pair, spinmod::parse_lattice(lattice_name));
      const auto st = spinmod::check_spin_structure(pair);
      result = {{"pair", pair.name},
                {"lattice", spinmod::lattice_name(pair.lattice)},
                {"rho_n", rootsys::to_json(st.rho_n)},
                {"lifts_on_G", st.lifts_on_G},
                {"lifts_on_double_cover", st.lifts_on_double_cover}};
    } else if (spin_pairs->parsed()) {
      const auto cat = catalog::resolve_catalog(cfg.catalog);
      json pairs = json::array();
      for (const auto& p : cat.pairs()) pairs.push_back(spinmod::to_json(p));
      result = {{"source", cat.source()}, {"version", cat.version()}, {"pairs", std::move(pairs)}};
    } else if (ds_induct->parsed()) {
      const auto pair = pair_lookup();
      const Weight mu = Weight::parse(hw_text);
      const auto r = dirac::dirac_induct(repring::IrrLabel{mu}, pair, cfg.degree_roots);
      result = dirac::to_json(r);
      result["pair"] = pair.name;
      result["mu"] = rootsys::to_json(mu);
      if (std::holds_alternative<dirac::DiscreteSeriesParameter>(r))
        result["degree_roots"] = dirac::degree_roots_name(cfg.degree_roots);
    } else if (ds_enum->parsed()) {
      const auto pair = pair_lookup();
      std::optional<spinmod::Lattice> lattice;
      if (!lattice_name.empty()) lattice = spinmod::parse_lattice(lattice_name);
      result = json::array();
      for (const auto& p :
           dirac::enumerate_discrete_series(pair, parse_rational(bound_text), cfg.degree_roots, lattice))
        result.push_back(dirac::to_json(p));
    } else if (k0_class->parsed()) {
      const json in = read_json_file(input_path);
      const ktheory::FDAlgebra a(in.at("algebra").get<std::vector<int>>());
      const auto x = ktheory::k0_class(ktheory::element_from_json(in.at("element"), a), a, cfg.tolerances);
      result = {{"algebra", a.blocks}, {"ranks", x.ranks}};
    } else if (k0_index->parsed()) {
      const json in = read_json_file(input_path);
      const ktheory::FDAlgebra a(in.at("algebra").get<std::vector<int>>());
      const auto m = ktheory::fredholm_from_json(in);
      const auto st = ktheory::fredholm_index_stabilized(m, a, cfg.tolerances);
      const auto naive = ktheory::fredholm_index_naive(m, a, cfg.tolerances);
      result = {{"algebra", a.blocks},
                {"index", st.index.ranks},
                {"naive", naive.ranks},
                {"n", st.n},
                {"kernel", st.kernel},
                {"agree", st.index == naive}};
    } else if (k0_random->parsed()) {
      const auto s0 = require_seed(cfg, "k0 random-index");
      std::size_t agree = 0;
      json mismatches = json::array();
      for (std::size_t i = 0; i < count; ++i) {
        auto [a, m] = ktheory::random_fredholm_module(s0 + i);
        if (ktheory::fredholm_index(m, a, cfg.tolerances) == ktheory::fredholm_index_naive(m, a, cfg.tolerances))
          ++agree;
        else
          mismatches.push_back(i);
      }
      result = {{"seed", s0}, {"count", count}, {"agree", agree}, {"mismatches", std::move(mismatches)}};
    } else if (k0_push->parsed()) {
      const ktheory::FDAlgebra a(parse_block_list(source_text, "--source"));
      const ktheory::FDAlgebra b(parse_block_list(target_text, "--target"));
      ktheory::BlockMorphism theta;
      std::stringstream rows(theta_text);
      std::string row;
      while (std::getline(rows, row, ';')) theta.push_back(parse_int_list(row, "--theta"));
      const ktheory::K0Class x{parse_int_list(class_text, "--class")};
      const auto y = ktheory::pushforward(theta, x, a, b);
      result = {{"source", a.blocks}, {"target", b.blocks}, {"theta", theta}, {"input", x.ranks}, {"ranks", y.ranks}};
    } else if (group_info->parsed()) {
      const auto cg = ktheory::wedderburn(load_group(), require_seed(cfg, "group info"), cfg.tolerances);
      result = ktheory::to_json(cg);
    } else if (group_idem->parsed()) {
      const auto g = load_group();
      const auto cg = ktheory::wedderburn(g, require_seed(cfg, "group idempotent"), cfg.tolerances);
      if (block >= cg.irreps.size()) throw ValidationError("block index out of range");
      const int d = cg.algebra.blocks[block];
      ktheory::Vector v = ktheory::Vector::Zero(d);
      if (vector_text.empty()) {
        v(0) = 1.0;
      } else {
        std::stringstream ss(vector_text);
        std::string item;
        std::vector<double> xs;
        while (std::getline(ss, item, ',')) xs.push_back(std::stod(item));
        if (static_cast<int>(xs.size()) != d) throw ValidationError("--vector needs " + std::to_string(d) + " entries");
        for (int i = 0; i < d; ++i) v(i) = xs[i];
      }
      const auto p = ktheory::ds_idempotent(cg, block, v, cfg.tolerances);
      const auto cls = ktheory::k0_class(ktheory::to_blocks(cg, p), cg.algebra, cfg.tolerances);
      json pairing = json::array();
      for (std::size_t b = 0; b < cg.algebra.size(); ++b) pairing.push_back(ktheory::spectral_pairing(b, cls));
      json values = json::array();
      for (Eigen::Index x = 0; x < p.size(); ++x) values.push_back(complex_json(p(x)));
      result = {{"group", g.name},
                {"block", block},
                {"dim", d},
                {"idempotency_error", (ktheory::convolve(g, p, p) - p).cwiseAbs().maxCoeff()},
                {"trace", complex_json(ktheory::trace(g, p))},
                {"k0_class", cls.ranks},
                {"spectral_pairing", std::move(pairing)},
                {"trace_pairing", ktheory::trace_pairing(cls, cg).value},
                {"values", std::move(values)}};
    } else if (rd_norms->parsed()) {
      const auto g = rapid_decay::MarkedGroup::from_name(marked_name);
      const auto f = rapid_decay::function_from_json(g, read_json_file(input_path));
      if (cfg.seed) power.seed = *cfg.seed;
      const int r = radius >= 0 ? radius : rapid_decay::support_radius(g, f);
      const auto e = rapid_decay::reduced_norm_truncated(g, f, r, power);
      result = {{"group", g.name()},
                {"s", s_value},
                {"l1", rapid_decay::l1_norm(f)},
                {"hs", rapid_decay::hs_norm(g, f, s_value)},
                {"red_lower", e.lower},
                {"red_upper", e.upper},
                {"radius", e.radius},
                {"ball_size", e.ball_size},
                {"iterations", e.iterations}};
    } else if (rd_uncond->parsed()) {
      const auto s0 = require_seed(cfg, "rd probe-unconditional");
      const auto g = rapid_decay::MarkedGroup::from_name(marked_name);
      const auto f = input_path.empty() ? default_probe_function(g)
                                        : rapid_decay::function_from_json(g, read_json_file(input_path));
      auto norm = rapid_decay::NormSpec::parse(norm_text);
      norm.power = power;
      const auto mode = mode_text == "sign" ? rapid_decay::PhaseMode::Sign : rapid_decay::PhaseMode::Unimodular;
      const auto rep = rapid_decay::unconditionality_probe(norm, g, f, trials, s0, mode);
      result = rapid_decay::to_json(g, rep);
      result["group"] = g.name();
      result["mode"] = mode_text;
      result["seed"] = s0;
    } else if (rd_probe->parsed()) {
      const auto s0 = require_seed(cfg, "rd probe-rd");
      const auto g = rapid_decay::MarkedGroup::from_name(marked_name);
      rapid_decay::RdProbeOptions opts;
      opts.samples = samples;
      opts.max_support = max_support;
      opts.sphere_supported = sphere;
      if (!radii_text.empty()) opts.support_radii = parse_block_list(radii_text, "--radii");
      result = rapid_decay::to_json(rapid_decay::rd_inequality_probe(g, s_value, s0, opts));
    } else if (rd_schur->parsed()) {
      const auto s0 = require_seed(cfg, "rd probe-schur");
      const auto g = rapid_decay::MarkedGroup::from_name(marked_name);
      rapid_decay::RdProbeOptions opts;
      opts.max_support = max_support;
      opts.sphere_supported = sphere;
      result = rapid_decay::to_json(
          rapid_decay::schur_ratio_probe(g, multiplier_radius, schur_support, samples, s0, opts));
      result["seed"] = s0;
    } else {
      err << app.help();
      return kValidationError;
    }

    if (cfg.format == "table") out << render_table(result);
    else out << result.dump(2) << "\n";
    return kSuccess;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const NumericalAmbiguity& e) {
    err << "numerical ambiguity: " << e.what() << "\n";
    return kNumericalAmbiguity;
  } catch (const json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace dirac_atlas::cli
