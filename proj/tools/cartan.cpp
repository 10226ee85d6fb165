#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cartan/cartan.hpp"
#include "cartan/io.hpp"

namespace {

using cartan::io::json;
using namespace cartan;

struct Globals {
  std::string system_path;
  bool exact = false;
  bool use_float = false;
  double tolerance = kDefaultTolerance;
  std::uint64_t budget = 100000;
  std::string json_out;
  bool no_timing = false;
};

/// Accumulates the report and the bytes its inputs digest covers.
struct Report {
  json body = json::object();
  std::string digest_input;

  void input_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    digest_input += path + "\n" + ss.str() + "\n";
  }
  void parameter(const std::string& key, const json& value) {
    body["parameters"][key] = value;
    digest_input += key + "=" + value.dump() + "\n";
  }
};

std::string mode_of(const Globals& g) { return g.use_float ? "float" : "exact"; }

SystemRef require_system(const Globals& g, Report& r) {
  if (g.system_path.empty()) throw ParseError("--system is required");
  r.input_file(g.system_path);
  return io::load_system(g.system_path);
}

json element_spec_json(const std::string& spec, const std::string& where) {
  auto first = spec.find_first_not_of(' ');
  if (first != std::string::npos && spec[first] == '{') return io::parse_json_text(spec, where);
  return json(spec);
}

Rational parse_positive_rational(const std::string& text, const char* name) {
  Rational q = parse_rational(text);
  if (q <= 0) throw ParseError(std::string(name) + " must be positive");
  return q;
}

json rational_json(const Rational& q) { return to_string(q); }

// --- system-check ------------------------------------------------------------

void cmd_system_check(const Globals& g, Report& r) {
  auto sys = require_system(g, r);
  auto rep = validate_system(*sys);
  json orbits = json::array();
  for (auto o : sys->orbits()) orbits.push_back(io::set_to_json(*sys, o));
  json measures = json::array();
  for (const auto& mu : extreme_invariant_measures(*sys)) {
    json w = json::array();
    for (const auto& q : mu.weights) w.push_back(rational_json(q));
    measures.push_back(w);
  }
  r.body["result"] = {{"valid", true},
                      {"free", rep.free},
                      {"minimal", rep.minimal},
                      {"num_orbits", rep.num_orbits},
                      {"orbits", orbits},
                      {"extreme_measures", measures}};
}

// --- compare -----------------------------------------------------------------

struct CompareArgs {
  std::string a, b;
  bool witness = false, semigroup = false, oracle = false;
};

std::optional<std::size_t> class_of(const DynSystem& sys, const TypeSemigroup& W, const std::vector<PointSet>& t) {
  for (std::size_t c = 0; c < W.size(); ++c)
    if (search_subequivalence(sys, t, W.classes[c]) && search_subequivalence(sys, W.classes[c], t)) return c;
  return std::nullopt;
}

void cmd_compare(const Globals& g, const CompareArgs& args, Report& r) {
  auto sys = require_system(g, r);
  r.parameter("a", args.a);
  r.parameter("b", args.b);
  auto a = io::tuple_from_spec(*sys, args.a, "--a-tuple");
  auto b = io::tuple_from_spec(*sys, args.b, "--b-tuple");
  auto sub = diag_subequivalent(*sys, a, b);
  r.body["result"]["subequivalent"] = sub.holds;
  if (args.witness) r.body["certificates"]["witness"] = sub.witness ? io::witness_to_json(*sys, *sub.witness) : json(nullptr);
  if (args.oracle) r.body["result"]["cuntz_oracle"] = cuntz_oracle(sys, a, b);

  json table = json::array();
  const auto measures = extreme_invariant_measures(*sys);
  for (std::size_t k = 0; k < measures.size(); ++k) {
    Rational ta = 0, tb = 0;
    for (const auto& f : a.entries) ta += d_tau(f, measures[k]);
    for (const auto& f : b.entries) tb += d_tau(f, measures[k]);
    table.push_back({{"orbit", io::set_to_json(*sys, sys->orbits()[k])}, {"a", rational_json(ta)}, {"b", rational_json(tb)}});
  }
  r.body["result"]["d_tau"] = table;

  if (args.semigroup) {
    std::size_t n = std::max(a.size(), b.size());
    auto W = type_semigroup(*sys, n, SemigroupBudget{g.budget});
    auto ca = class_of(*sys, W, a.supports());
    auto cb = class_of(*sys, W, b.supports());
    auto rep = [&](std::optional<std::size_t> c) {
      if (!c) return json(nullptr);
      json t = json::array();
      for (auto s : W.classes[*c]) t.push_back(io::set_to_json(*sys, s));
      return t;
    };
    r.body["result"]["semigroup"] = {{"max_n", n},
                                     {"classes", W.size()},
                                     {"class_a", rep(ca)},
                                     {"class_b", rep(cb)},
                                     {"a_le_b", ca && cb ? json(static_cast<bool>(W.order[*ca][*cb])) : json(nullptr)}};
  }
}

// --- witness -----------------------------------------------------------------

struct WitnessArgs {
  std::string a, b, epsilon, delta, witness_file, t_file;
};

std::vector<PointSet> cut_supports(const DiagTuple& a, const Rational& eps) {
  std::vector<PointSet> out;
  for (const auto& f : a.entries) out.push_back(open_support(pos_cutdown(f, eps)));
  return out;
}

void cmd_witness_compile(const Globals& g, const WitnessArgs& args, Report& r) {
  auto sys = require_system(g, r);
  r.parameter("a", args.a);
  r.parameter("b", args.b);
  r.parameter("epsilon", args.epsilon);
  auto a = io::tuple_from_spec(*sys, args.a, "--a-tuple");
  auto b = io::tuple_from_spec(*sys, args.b, "--b-tuple");
  Rational eps = parse_positive_rational(args.epsilon, "--epsilon");
  std::optional<Witness> w;
  if (!args.witness_file.empty()) {
    r.input_file(args.witness_file);
    w = io::witness_from_json(*sys, io::read_json_file(args.witness_file), "witness");
  } else {
    w = search_subequivalence(*sys, cut_supports(a, eps), b.supports());
  }
  r.body["result"]["compiled"] = w.has_value();
  if (!w) return;
  auto cw = compile(sys, a, b, eps, *w);
  r.body["result"]["zero_certificate"] = cw.t.is_zero();
  r.body["certificates"]["witness"] = io::witness_to_json(*sys, *w);
  r.body["certificates"]["compiled"] = io::compiled_to_json(cw);
}

void cmd_witness_extract(const Globals& g, const WitnessArgs& args, Report& r) {
  auto sys = require_system(g, r);
  r.parameter("a", args.a);
  r.parameter("b", args.b);
  r.parameter("epsilon", args.epsilon);
  r.parameter("delta", args.delta);
  auto a = io::tuple_from_spec(*sys, args.a, "--a-tuple");
  auto b = io::tuple_from_spec(*sys, args.b, "--b-tuple");
  Rational eps = parse_positive_rational(args.epsilon, "--epsilon");
  Rational delta = parse_positive_rational(args.delta, "--delta");
  if (args.t_file.empty()) throw ParseError("--t is required");
  r.input_file(args.t_file);
  json tj = io::read_json_file(args.t_file);
  if (tj.contains("certificates")) tj = tj["certificates"];
  if (tj.contains("compiled")) tj = tj["compiled"];
  if (tj.contains("t")) tj = tj["t"];
  auto t = io::matrix_from_json(sys, tj, "t");
  auto w = extract(sys, a, b, eps, delta, t);
  r.body["result"]["valid"] = check_witness(*sys, cut_supports(a, eps), b.supports(), w);
  r.body["certificates"]["witness"] = io::witness_to_json(*sys, w);
}

void cmd_witness_roundtrip(const Globals& g, const WitnessArgs& args, Report& r) {
  auto sys = require_system(g, r);
  r.parameter("a", args.a);
  r.parameter("b", args.b);
  r.parameter("epsilon", args.epsilon);
  auto a = io::tuple_from_spec(*sys, args.a, "--a-tuple");
  auto b = io::tuple_from_spec(*sys, args.b, "--b-tuple");
  Rational eps = parse_positive_rational(args.epsilon, "--epsilon");
  auto F = cut_supports(a, eps);
  auto w = search_subequivalence(*sys, F, b.supports());
  r.body["result"]["witness_found"] = w.has_value();
  if (!w) {
    r.body["result"]["passed"] = false;
    return;
  }
  auto cw = compile(sys, a, b, eps, *w);
  auto back = extract(sys, a, b, eps, cw.delta, cw.t);
  bool ok = check_witness(*sys, F, b.supports(), back);
  r.body["result"]["passed"] = ok;
  r.body["result"]["delta"] = rational_json(cw.delta);
  r.body["certificates"]["witness"] = io::witness_to_json(*sys, *w);
  r.body["certificates"]["compiled"] = io::compiled_to_json(cw);
  r.body["certificates"]["extracted"] = io::witness_to_json(*sys, back);
}

// --- castle ------------------------------------------------------------------

struct CastleArgs {
  std::string castle_file, data_file, map_file, delta, K, epsilon, F = "unit", h;
  bool strict_diameter = false;
  bool search = false;
  std::size_t n = 0;
};

void cmd_castle_validate(const Globals& g, const CastleArgs& args, Report& r) {
  auto sys = require_system(g, r);
  if (args.castle_file.empty()) throw ParseError("--castle is required");
  r.input_file(args.castle_file);
  json cj = io::read_json_file(args.castle_file);
  auto c = io::castle_from_json(*sys, cj, "castle");
  bool valid = validate_castle(*sys, c);
  r.body["result"]["valid"] = valid;
  r.body["result"]["footprint"] = io::set_to_json(*sys, castle_footprint(*sys, c));
  if (args.delta.empty()) return;
  r.parameter("delta", args.delta);
  r.parameter("K", args.K);
  r.parameter("strict_diameter", args.strict_diameter);
  Rational delta = parse_positive_rational(args.delta, "--delta");
  std::vector<std::size_t> K;
  if (args.K.empty()) {
    for (std::size_t s = 0; s < sys->group_order(); ++s) K.push_back(s);
  } else {
    std::stringstream ss(args.K);
    std::string item;
    while (std::getline(ss, item, ',')) K.push_back(io::element_index(*sys, item, "--K"));
  }
  std::vector<std::vector<std::size_t>> primes(c.towers.size());
  if (cj.contains("primes"))
    for (std::size_t t = 0; t < cj["primes"].size() && t < primes.size(); ++t)
      primes[t] = io::elements_from_json(*sys, cj["primes"][t], "castle.primes[" + std::to_string(t) + "]");
  auto cert = almost_finiteness_certificate(*sys, K, delta, c, primes, args.strict_diameter);
  json res = {{"passed", cert.passed()},
              {"invariance", cert.invariance},
              {"small_primes", cert.small_primes},
              {"remainder", cert.remainder},
              {"max_invariance", rational_json(cert.max_invariance)},
              {"remainder_set", io::set_to_json(*sys, cert.remainder_set)},
              {"prime_set", io::set_to_json(*sys, cert.prime_set)}};
  if (cert.diameter) res["diameter"] = *cert.diameter;
  r.body["result"]["almost_finiteness"] = res;
  if (cert.witness) r.body["certificates"]["remainder_witness"] = io::witness_to_json(*sys, *cert.witness);
}

OrderZeroMap load_map(const Globals& g, const CastleArgs& args, const SystemRef& sys, Report& r) {
  (void)g;
  if (!args.map_file.empty()) {
    r.input_file(args.map_file);
    return io::map_from_json(sys, io::read_json_file(args.map_file), "map");
  }
  if (!args.data_file.empty()) {
    r.input_file(args.data_file);
    return build_castle_ozm(sys, io::ozm_data_from_json(*sys, io::read_json_file(args.data_file), "data"));
  }
  throw ParseError("--map or --data is required");
}

json map_checks(const OrderZeroMap& phi, double tol) {
  auto cpc = cpc_report(phi, tol);
  return {{"cpc", cpc.passed()},
          {"order_zero", verify_order_zero(phi)},
          {"normalizer_preserving", verify_normalizer_preserving(phi)}};
}

json cpc_margins(const OrderZeroMap& phi, double tol) {
  auto cpc = cpc_report(phi, tol);
  return {{"min_choi_eigenvalue", io::format_double(cpc.min_choi_eigenvalue)},
          {"unit_image_norm", io::format_double(cpc.unit_image_norm)},
          {"tolerance", io::format_double(tol)}};
}

void cmd_castle_build(const Globals& g, const CastleArgs& args, Report& r) {
  auto sys = require_system(g, r);
  if (args.data_file.empty()) throw ParseError("--data is required");
  r.input_file(args.data_file);
  auto data = io::ozm_data_from_json(*sys, io::read_json_file(args.data_file), "data");
  auto phi = build_castle_ozm(sys, data);
  r.body["result"] = map_checks(phi, g.tolerance);
  r.body["margins"] = cpc_margins(phi, g.tolerance);
  r.body["certificates"]["map"] = io::map_to_json(phi);
}

void cmd_castle_decompose(const Globals& g, const CastleArgs& args, Report& r) {
  auto sys = require_system(g, r);
  auto phi = load_map(g, args, sys, r);
  auto data = decompose_ozm(sys, phi);
  r.body["result"]["round_trip"] = build_castle_ozm(sys, data) == phi;
  r.body["result"]["towers"] = data.castle.towers.size();
  r.body["certificates"]["data"] = io::ozm_data_to_json(*sys, data);
}

std::vector<CrossedElement> element_list(const SystemRef& sys, const std::string& spec) {
  std::vector<CrossedElement> out;
  auto first = spec.find_first_not_of(' ');
  if (first != std::string::npos && spec[first] == '[') {
    json j = io::parse_json_text(spec, "--elements");
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(io::element_from_json(sys, j[k], "--elements[" + std::to_string(k) + "]"));
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) out.push_back(io::element_from_json(sys, element_spec_json(item, "--elements"), "--elements"));
  return out;
}

json tzs_json(const DynSystem& sys, const TzsReport& rep, Report& r) {
  json res = {{"passed", rep.passed()},
              {"i_normalizers", rep.normalizers},
              {"ii_remainder", rep.remainder ? json(*rep.remainder) : json(nullptr)},
              {"iii_commutators", rep.commutators.status}};
  r.body["margins"]["commutator_max_norm"] = io::format_double(rep.commutators.max_norm);
  r.body["margins"]["commutator_bound_n2"] = io::format_double(rep.commutators.bound);
  r.body["margins"]["epsilon_minus_max"] = io::format_double(rep.commutators.margin);
  r.body["margins"]["note"] = "matrix units only; every contraction obeys the n^2 bound";
  if (rep.remainder_witness) r.body["certificates"]["remainder_witness"] = io::witness_to_json(sys, *rep.remainder_witness);
  return res;
}

void cmd_castle_tzs(const Globals& g, const CastleArgs& args, Report& r) {
  auto sys = require_system(g, r);
  r.parameter("epsilon", args.epsilon);
  r.parameter("F", args.F);
  r.parameter("h", args.h);
  TzsInstance inst;
  inst.epsilon = parse_positive_rational(args.epsilon, "--epsilon");
  inst.F = element_list(sys, args.F);
  if (args.h.empty()) throw ParseError("--h is required");
  inst.h = io::func_from_json(*sys, element_spec_json(args.h, "--h-func"), "--h-func");
  if (args.search) {
    r.parameter("n", args.n);
    r.parameter("budget", g.budget);
    inst.n = args.n;
    auto found = search_tzs_map(sys, inst, g.budget);
    r.body["result"]["found"] = found.map.has_value();
    r.body["result"]["candidates"] = found.candidates;
    r.body["result"]["exhausted"] = found.exhausted;
    if (found.map) {
      r.body["result"]["tzs"] = tzs_json(*sys, check_tzs_instance(sys, inst, *found.map), r);
      r.body["certificates"]["data"] = io::ozm_data_to_json(*sys, *found.data);
    }
    return;
  }
  auto phi = load_map(g, args, sys, r);
  inst.n = phi.n;
  r.body["result"] = tzs_json(*sys, check_tzs_instance(sys, inst, phi), r);
}

// --- semigroup ---------------------------------------------------------------

void cmd_semigroup(const Globals& g, std::size_t max_n, Report& r) {
  auto sys = require_system(g, r);
  r.parameter("max_n", max_n);
  r.parameter("budget", g.budget);
  auto W = type_semigroup(*sys, max_n, SemigroupBudget{g.budget});
  auto au = almost_unperforation_check(W);
  r.body["result"]["classes"] = W.size();
  r.body["result"]["almost_unperforated_within_bound"] = au.holds;
  if (au.counterexample)
    r.body["result"]["counterexample"] = {{"x", au.counterexample->x}, {"y", au.counterexample->y}, {"n", au.counterexample->n}};
  r.body["certificates"]["semigroup"] = io::semigroup_to_json(*sys, W);
}

// --- normalizer --------------------------------------------------------------

template <class S>
json normalizer_predicates(const BasicCrossed<S>& a) {
  json res = {{"normalizer", is_normalizer(a)}, {"r_normalizer", is_r_normalizer(a)}, {"s_normalizer", is_s_normalizer(a)}};
  if (a.sys().is_free()) res["r_normalizer_by_support"] = is_r_normalizer_by_support(a);
  return res;
}

void cmd_normalizer(const Globals& g, const std::string& spec, Report& r) {
  auto sys = require_system(g, r);
  r.parameter("element", spec);
  auto a = io::element_from_json(sys, element_spec_json(spec, "--element"), "--element");
  r.body["result"] = g.use_float ? normalizer_predicates(to_float(a)) : normalizer_predicates(a);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normalizers, subequivalence witnesses and castle order zero maps for finite group actions"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--system", g.system_path, "System JSON file");
  auto* exact_flag = app.add_flag("--exact", g.exact, "Exact radical arithmetic (default)");
  app.add_flag("--float", g.use_float, "Floating-point scalars where supported")->excludes(exact_flag);
  app.add_option("--tolerance", g.tolerance, "Float tolerance")->capture_default_str();
  app.add_option("--budget", g.budget, "Enumeration budget")->capture_default_str();
  app.add_option("--json", g.json_out, "Also write the report to this file");
  app.add_flag("--no-timing", g.no_timing, "Omit runtime_ms from the report");

  auto* sc = app.add_subcommand("system-check", "Validate a system file");

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Decide a <= b for diagonal tuples");
  compare->add_option("--a-tuple", cmp.a, "Tuple spec, e.g. 'chi:0' or 'chi:0;chi:1,2'")->required();
  compare->add_option("--b-tuple", cmp.b, "Tuple spec")->required();
  compare->add_flag("--witness", cmp.witness, "Emit the witness");
  compare->add_flag("--semigroup", cmp.semigroup, "Locate both tuples in the type semigroup");
  compare->add_flag("--oracle", cmp.oracle, "Run the rank-based Cuntz oracle");

  WitnessArgs wa;
  auto* witness = app.add_subcommand("witness", "Compile and extract witnesses");
  witness->require_subcommand(1);
  auto add_tuple_opts = [&](CLI::App* c) {
    c->add_option("--a-tuple", wa.a, "Tuple spec")->required();
    c->add_option("--b-tuple", wa.b, "Tuple spec")->required();
    c->add_option("--epsilon", wa.epsilon, "Positive rational")->required();
  };
  auto* wc = witness->add_subcommand("compile", "Build t from a witness");
  add_tuple_opts(wc);
  wc->add_option("--witness-file", wa.witness_file, "Witness JSON; searched when omitted");
  auto* we = witness->add_subcommand("extract", "Read a witness back from t");
  add_tuple_opts(we);
  we->add_option("--delta", wa.delta, "Positive rational")->required();
  we->add_option("--t", wa.t_file, "Matrix JSON or compile report")->required();
  auto* wr = witness->add_subcommand("roundtrip", "Search, compile, extract and check");
  add_tuple_opts(wr);

  CastleArgs ca;
  auto* castle = app.add_subcommand("castle", "Castles and castle order zero maps");
  castle->require_subcommand(1);
  auto* cv = castle->add_subcommand("validate", "Check disjointness and optionally almost finiteness");
  cv->add_option("--castle", ca.castle_file, "Castle JSON")->required();
  cv->add_option("--delta", ca.delta, "Run the almost-finiteness certificate at this delta");
  cv->add_option("--group-set", ca.K, "Comma-separated group labels (default: all of G)");
  cv->add_flag("--strict-diameter", ca.strict_diameter, "Require singleton bases");
  auto* cb = castle->add_subcommand("build-ozm", "Assemble and verify a castle order zero map");
  cb->add_option("--data", ca.data_file, "Castle map data JSON")->required();
  auto* cd = castle->add_subcommand("decompose", "Recover castle data from a map");
  cd->add_option("--map", ca.map_file, "Map JSON");
  cd->add_option("--data", ca.data_file, "Castle map data JSON, built first");
  auto* ct = castle->add_subcommand("tzs", "Evaluate a tracial Z-stability instance");
  ct->add_option("--map", ca.map_file, "Map JSON");
  ct->add_option("--data", ca.data_file, "Castle map data JSON");
  ct->add_option("--epsilon", ca.epsilon, "Positive rational")->required();
  ct->add_option("--elements", ca.F, "Element specs separated by ';'")->capture_default_str();
  ct->add_option("--h-func", ca.h, "Positive function spec")->required();
  ct->add_flag("--search", ca.search, "Search castle maps instead of loading one");
  ct->add_option("--size", ca.n, "Matrix size for --search");

  std::size_t max_n = 1;
  auto* sg = app.add_subcommand("semigroup", "Type semigroup tables up to a tuple size");
  sg->add_option("--max-n", max_n, "Largest tuple size")->required();

  std::string element;
  auto* nz = app.add_subcommand("normalizer", "Normalizer predicates for one element");
  nz->add_option("--element", element, "Element spec: unit, u:<g>, chi:<points> or JSON")->required();

  CLI11_PARSE(app, argc, argv);

  Report r;
  std::string command;
  auto start = std::chrono::steady_clock::now();
  try {
    if (sc->parsed()) {
      command = "system-check";
      cmd_system_check(g, r);
    } else if (compare->parsed()) {
      command = "compare";
      cmd_compare(g, cmp, r);
    } else if (wc->parsed()) {
      command = "witness compile";
      cmd_witness_compile(g, wa, r);
    } else if (we->parsed()) {
      command = "witness extract";
      cmd_witness_extract(g, wa, r);
    } else if (wr->parsed()) {
      command = "witness roundtrip";
      cmd_witness_roundtrip(g, wa, r);
    } else if (cv->parsed()) {
      command = "castle validate";
      cmd_castle_validate(g, ca, r);
    } else if (cb->parsed()) {
      command = "castle build-ozm";
      cmd_castle_build(g, ca, r);
    } else if (cd->parsed()) {
      command = "castle decompose";
      cmd_castle_decompose(g, ca, r);
    } else if (ct->parsed()) {
      command = "castle tzs";
      cmd_castle_tzs(g, ca, r);
    } else if (sg->parsed()) {
      command = "semigroup";
      cmd_semigroup(g, max_n, r);
    } else if (nz->parsed()) {
      command = "normalizer";
      cmd_normalizer(g, element, r);
    }
  } catch (const cartan::error& e) {
    json err = {{"command", command}, {"error", e.kind()}, {"message", e.what()}};
    std::cerr << err.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    json err = {{"command", command}, {"error", "InternalError"}, {"message", e.what()}};
    std::cerr << err.dump(2) << "\n";
    return 3;
  }
  auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  json out;
  out["command"] = command;
  out["mode"] = mode_of(g);
  out["inputs_digest"] = io::digest(command + "\n" + r.digest_input);
  for (const char* key : {"parameters", "result", "certificates", "margins"})
    if (r.body.contains(key)) out[key] = r.body[key];
  if (!g.no_timing) out["runtime_ms"] = io::format_double(std::round(elapsed * 1000.0) / 1000.0);
  const std::string text = out.dump(2) + "\n";
  std::cout << text;
  if (!g.json_out.empty()) {
    std::ofstream f(g.json_out);
    if (!f) {
      std::cerr << "cannot write " << g.json_out << "\n";
      return 2;
    }
    f << text;
  }
  return 0;
}
