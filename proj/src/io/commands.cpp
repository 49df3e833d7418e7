#include "io/commands.hpp"

#include <cstdlib>
#include <map>
#include <set>

#include "core/fan.hpp"
#include "io/svg.hpp"

namespace trop {

namespace {

struct CommandError : std::runtime_error {
  int code;
  CommandError(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

std::vector<std::pair<std::string, Json>> inputs_of(const Json& req) {
  std::vector<std::pair<std::string, Json>> out;
  if (!req.contains("inputs")) return out;
  if (!req.at("inputs").is_array()) throw IoError("inputs must be an array");
  for (const auto& e : req.at("inputs")) {
    if (!e.is_object() || !e.contains("name") || !e.contains("doc"))
      throw IoError("each input needs name and doc fields");
    out.emplace_back(e.at("name").get<std::string>(), e.at("doc"));
  }
  return out;
}

const Json& input_named(const std::vector<std::pair<std::string, Json>>& ins,
                        const std::string& name) {
  for (const auto& [n, doc] : ins)
    if (n == name) return doc;
  throw IoError("missing required input '" + name + "'");
}

Json options_of(const Json& req) {
  Json opts = req.value("options", Json::object());
  if (!opts.is_object()) throw IoError("options must be an object");
  return opts;
}

uint64_t seed_of(const Json& req) {
  if (!req.contains("seed")) return kDefaultSeed;
  const Json& s = req.at("seed");
  try {
    if (s.is_string()) return std::stoull(s.get<std::string>());
    if (s.is_number_unsigned() || s.is_number_integer()) return s.get<uint64_t>();
  } catch (const std::exception&) {
  }
  throw IoError("seed must be an unsigned integer");
}

std::vector<int> indices_from_json(const Json& j) {
  if (!j.is_array()) throw IoError("expected an array of ray indices");
  std::vector<int> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw IoError("ray index must be an integer");
    out.push_back(e.get<int>());
  }
  return out;
}

// command outputs wrap their result ({"cycle": ...}, {"weight": ...});
// accept those envelopes back as inputs so results pipe into new runs
const Json& unwrap(const Json& doc, const char* key) {
  if (doc.is_object() && doc.contains(key)) return doc.at(key);
  return doc;
}

Cycle cycle_input(const Json& doc) { return cycle_from_json(unwrap(doc, "cycle")); }
MinkowskiWeight mw_input(const Json& doc) { return mw_from_json(unwrap(doc, "weight")); }

Json zmat_to_json(const ZMat& m) {
  Json out = Json::array();
  for (const auto& r : m) out.push_back(zvec_to_json(r));
  return out;
}

Json frame_to_json(const QuotientFrame& f) {
  return Json{{"proj", zmat_to_json(f.proj)}, {"lift", zmat_to_json(f.lift)}};
}

// ---- validate -------------------------------------------------------------

Json check_entry(const std::string& name, bool pass, const std::string& detail = "") {
  Json e{{"name", name}, {"pass", pass}};
  if (!detail.empty()) e["detail"] = detail;
  return e;
}

Json validate_fan_doc(const Json& doc) {
  // Parse the raw fields first so that invariant violations are reported
  // instead of rejected at ingestion.
  if (!doc.contains("ambient") || !doc.at("ambient").is_number_integer())
    throw IoError("fan needs an integer ambient field");
  int n = doc.at("ambient").get<int>();
  ZMat rays;
  for (const auto& r : doc.value("rays", Json::array())) rays.push_back(zvec_from_json(r, n));
  std::vector<std::vector<int>> cones;
  for (const auto& c : doc.value("cones", Json::array())) {
    std::vector<int> cone = indices_from_json(c);
    for (int idx : cone)
      if (idx < 0 || idx >= (int)rays.size()) throw IoError("ray index out of range");
    cones.push_back(cone);
  }
  Json checks = Json::array();
  try {
    Fan d = make_fan(n, rays, cones);
    checks.push_back(check_entry("fan-invariants", true));
    checks.push_back(check_entry("unimodular", is_unimodular(d)));
    checks.push_back(check_entry("complete", is_complete(d)));
  } catch (const FanError& e) {
    checks.push_back(check_entry("fan-invariants", false, e.what()));
  }
  return Json{{"type", "fan"}, {"checks", checks}};
}

Json validate_cycle_doc(const Json& doc) {
  if (!doc.contains("ambient") || !doc.at("ambient").is_number_integer() ||
      !doc.contains("dim") || !doc.at("dim").is_number_integer())
    throw IoError("cycle needs integer ambient and dim fields");
  int n = doc.at("ambient").get<int>();
  int dim = doc.at("dim").get<int>();
  std::vector<Cell> cells;
  for (const auto& c : doc.value("cells", Json::array())) {
    if (!c.contains("poly") || !c.contains("weight")) throw IoError("cell needs poly and weight");
    Rat w = rat_from_json(c.at("weight"));
    w.canonicalize();
    if (w.get_den() != 1) throw IoError("cell weight must be an integer");
    cells.push_back({poly_from_json(c.at("poly")), w.get_num()});
  }
  Json checks = Json::array();
  try {
    Cycle s = make_cycle(n, dim, std::move(cells));
    checks.push_back(check_entry("pure-dimensional", true));
    std::vector<std::string> bad = balancing_check(s);
    std::string detail;
    for (const auto& b : bad) detail += (detail.empty() ? "" : "; ") + b;
    checks.push_back(check_entry("balanced", bad.empty(), detail));
  } catch (const CycleError& e) {
    checks.push_back(check_entry("pure-dimensional", false, e.what()));
  }
  return Json{{"type", "cycle"}, {"checks", checks}};
}

Json validate_doc(const Json& doc0) {
  if (!doc0.is_object()) throw IoError("input document must be a JSON object");
  const Json& doc = unwrap(unwrap(doc0, "cycle"), "weight");
  if (doc.contains("rays") && doc.contains("cones")) return validate_fan_doc(doc);
  if (doc.contains("cells")) return validate_cycle_doc(doc);
  if (doc.contains("terms")) {
    Json checks = Json::array();
    try {
      TropicalPolynomial f = polynomial_from_json(doc);
      checks.push_back(check_entry("polynomial", true));
      try {
        balancing_check(tropical_hypersurface(f));
        checks.push_back(check_entry("hypersurface-balanced", true));
      } catch (const DivisorError& e) {
        checks.push_back(check_entry("hypersurface-balanced", false, e.what()));
      }
    } catch (const IoError& e) {
      checks.push_back(check_entry("polynomial", false, e.what()));
    }
    return Json{{"type", "polynomial"}, {"checks", checks}};
  }
  if (doc.contains("codim") && doc.contains("values")) {
    Json checks = Json::array();
    try {
      mw_from_json(doc);
      checks.push_back(check_entry("minkowski-weight", true));
    } catch (const IoError& e) {
      checks.push_back(check_entry("minkowski-weight", false, e.what()));
    }
    return Json{{"type", "minkowski-weight"}, {"checks", checks}};
  }
  throw IoError("unrecognized document type");
}

// ---- commands -------------------------------------------------------------

Json cmd_validate(const Json& req) {
  auto ins = inputs_of(req);
  if (ins.empty()) throw IoError("validate needs at least one input");
  Json report = Json::array();
  bool all = true;
  for (const auto& [name, doc] : ins) {
    Json r = validate_doc(doc);
    r["input"] = name;
    for (const auto& c : r.at("checks"))
      if (!c.at("pass").get<bool>()) all = false;
    report.push_back(r);
  }
  return Json{{"report", report}, {"all_pass", all}};
}

Json cmd_stable_intersect(const Json& req) {
  auto ins = inputs_of(req);
  if (ins.size() < 2) throw IoError("stable-intersect needs at least two input cycles");
  std::vector<Cycle> cycles;
  for (const auto& [name, doc] : ins) cycles.push_back(cycle_input(doc));
  Cycle res = multi_stable_intersect(cycles, seed_of(req));
  Json opts = options_of(req);
  if (opts.contains("component")) {
    try {
      res = restrict_to_component(res, cycles, qvec_from_json(opts.at("component"), res.ambient));
    } catch (const CycleError& e) {
      throw IoError(e.what());
    }
  }
  Json payload{{"cycle", cycle_to_json(res)}};
  if (opts.value("degree", false)) {
    if (res.dim != 0) throw CommandError(3, "degree needs a zero-dimensional result");
    payload["degree"] = degree(res).get_str();
  }
  return payload;
}

Json cmd_compactified(const Json& req) {
  auto ins = inputs_of(req);
  Fan d = fan_from_json(input_named(ins, "fan"));
  Cycle s = cycle_input(input_named(ins, "s"));
  Json opts = options_of(req);
  uint64_t seed = seed_of(req);

  std::vector<Polyhedron> spolys;
  for (const auto& c : s.cells) spolys.push_back(c.poly);
  if (auto viol = compatibility_violation(d, spolys))
    throw CommandError(3, "cycle is not compatible with the fan: cone " +
                              std::to_string(viol->first) + " vs cell " +
                              std::to_string(viol->second));

  const Json& gdoc = input_named(ins, "gamma");
  StratifiedCycle gamma;
  if (gdoc.contains("components")) {
    gamma = stratified_from_json(gdoc, d);
  } else {
    gamma.components[d.index_of({})] = cycle_input(gdoc);
  }

  auto one = [&](size_t tau, const Cycle& g) {
    if (g.cells.empty()) {
      Json out{{"tau", d.cones[tau]},
               {"frame", frame_to_json(stratum_frame(d, tau))},
               {"cycle", cycle_to_json(make_cycle(stratum_frame(d, tau).quotient, 0, {}))},
               {"degree", "0"}};
      return out;
    }
    Cycle res = compactified_stable_intersect(g, s, tau, d, seed);
    Json out{{"tau", d.cones[tau]},
             {"frame", frame_to_json(stratum_frame(d, tau))},
             {"cycle", cycle_to_json(res)}};
    if (res.dim == 0 || res.cells.empty()) out["degree"] = degree(res).get_str();
    return out;
  };

  if (opts.contains("tau")) {
    size_t tau;
    try {
      tau = d.index_of(indices_from_json(opts.at("tau")));
    } catch (const FanError& e) {
      throw IoError(e.what());
    }
    Cycle g = gamma.components.count(tau) ? gamma.components.at(tau)
                                          : make_cycle(stratum_frame(d, tau).quotient, 0, {});
    return one(tau, g);
  }

  Json strata = Json::array();
  Int total = 0;
  bool all_points = true;
  for (const auto& [tau, g] : gamma.components) {
    Json r = one(tau, g);
    if (r.contains("degree"))
      total += Int(r.at("degree").get<std::string>());
    else
      all_points = false;
    strata.push_back(r);
  }
  Json payload{{"strata", strata}};
  if (all_points) payload["total_degree"] = total.get_str();
  return payload;
}

Json cmd_hypersurface(const Json& req) {
  auto ins = inputs_of(req);
  if (ins.size() != 1) throw IoError("hypersurface takes exactly one polynomial input");
  TropicalPolynomial f = polynomial_from_json(ins[0].second);
  try {
    return Json{{"cycle", cycle_to_json(tropical_hypersurface(f))}};
  } catch (const DivisorError& e) {
    throw IoError(e.what());
  }
}

bool same_fan(const Fan& a, const Fan& b) {
  return a.ambient == b.ambient && a.rays == b.rays && a.cones == b.cones;
}

Json cmd_mw(const Json& req) {
  auto ins = inputs_of(req);
  Json opts = options_of(req);
  std::string op = opts.value("op", "");
  uint64_t seed = seed_of(req);
  try {
    if (op == "product") {
      if (ins.size() != 2) throw IoError("mw product takes two weight inputs");
      MinkowskiWeight c1 = mw_input(ins[0].second);
      MinkowskiWeight c2 = mw_input(ins[1].second);
      if (!same_fan(c1.fan, c2.fan)) throw IoError("the two weights live on different fans");
      if (!is_complete(c1.fan) || !is_unimodular(c1.fan))
        throw CommandError(3, "weight fan must be complete and unimodular");
      return Json{{"weight", mw_to_json(mw_product(c1, c2, seed))}};
    }
    if (op == "degree") {
      if (ins.size() != 1) throw IoError("mw degree takes one weight input");
      MinkowskiWeight c = mw_input(ins[0].second);
      if (c.codim != c.fan.ambient)
        throw IoError("degree needs a top-codimension weight");
      return Json{{"degree", mw_degree(c).get_str()}};
    }
    if (op == "from-cycle") {
      Fan d = fan_from_json(input_named(ins, "fan"));
      Cycle s = cycle_input(input_named(ins, "cycle"));
      if (!is_complete(d) || !is_unimodular(d))
        throw CommandError(3, "fan must be complete and unimodular");
      return Json{{"weight", mw_to_json(mw_from_cycle(s, d))}};
    }
    throw IoError("op must be one of product, degree, from-cycle");
  } catch (const DivisorError& e) {
    throw IoError(e.what());
  }
}

Json cmd_plot(const Json& req) {
  auto ins = inputs_of(req);
  if (ins.empty()) throw IoError("plot needs at least one input cycle");
  std::vector<Cycle> cycles;
  for (const auto& [name, doc] : ins) {
    Cycle s = cycle_input(doc);
    if (s.ambient != 2) throw IoError("plot needs planar cycles (ambient dimension 2)");
    cycles.push_back(s);
  }
  Json opts = options_of(req);
  QVec bbox{Rat(-5), Rat(-5), Rat(5), Rat(5)};
  if (opts.contains("bbox")) bbox = qvec_from_json(opts.at("bbox"), 4);
  try {
    return Json{{"svg", render_svg(cycles, bbox)}};
  } catch (const CycleError& e) {
    throw IoError(e.what());
  }
}

// ---- fixtures -------------------------------------------------------------

Json poly_doc(int ambient, const std::vector<std::pair<ZVec, Rat>>& terms) {
  Json t = Json::array();
  for (const auto& [e, v] : terms)
    t.push_back({{"exp", zvec_to_json(e)}, {"val", rat_to_json(v)}});
  return Json{{"ambient", ambient}, {"terms", t}};
}

Json mw_doc(const Json& fan, int codim, const std::vector<std::pair<std::vector<int>, Int>>& vals) {
  Json v = Json::array();
  for (const auto& [cone, w] : vals) v.push_back({{"cone", cone}, {"w", w.get_str()}});
  return Json{{"fan", fan}, {"codim", codim}, {"values", v}};
}

Json quadrant_fan_doc() {
  return Json{{"ambient", 2},
              {"rays", Json::array({Json::array({"1", "0"}), Json::array({"0", "1"}),
                                    Json::array({"-1", "0"}), Json::array({"0", "-1"})})},
              {"cones", Json{Json::array(), {0}, {1}, {2}, {3}, {0, 1}, {1, 2}, {2, 3}, {0, 3}}}};
}

Json fixture_selfintersection(int n) {
  if (n < 1) throw IoError("n must be a positive integer");
  Json files;
  files["curve.json"] =
      poly_doc(2, {{{Int(n), 0}, Rat(0)}, {{0, 1}, Rat(0)}, {{0, 0}, Rat(0)}});
  files["expected.json"] =
      Json{{"local_multiplicity_at_origin", std::to_string(n)},
           {"note", "self stable intersection of the 1," + std::to_string(n) +
                        ",1 star curve at its vertex"}};
  return files;
}

Json fixture_selfinter_ex() {
  Json files;
  files["conic.json"] = poly_doc(2, {{{2, 0}, Rat(1)},
                                     {{1, 1}, Rat(0)},
                                     {{0, 2}, Rat(1)},
                                     {{1, 0}, Rat(0)},
                                     {{0, 1}, Rat(0)},
                                     {{0, 0}, Rat(1)}});
  files["line.json"] = poly_doc(2, {{{1, 0}, Rat(0)}, {{0, 1}, Rat(0)}, {{0, 0}, Rat(1)}});
  Json fan = quadrant_fan_doc();
  files["fan.json"] = fan;
  files["class_2_2.json"] = mw_doc(fan, 1, {{{0}, 2}, {{1}, 2}, {{2}, 2}, {{3}, 2}});
  files["class_1_1.json"] = mw_doc(fan, 1, {{{0}, 1}, {{1}, 1}, {{2}, 1}, {{3}, 1}});
  files["expected.json"] =
      Json{{"stable_degree_at_component", "2"},
           {"component_witness", Json::array({"1", "1"})},
           {"mw_product_degree", "4"},
           {"note", "conic and line meeting in a single bounded component; the class "
                    "pairing on the complete square fan gives the global count"}};
  return files;
}

Json cell_doc(const Polyhedron& p, const Int& w) {
  return Json{{"poly", poly_to_json(p)}, {"weight", w.get_str()}};
}

Json fixture_tp3() {
  Json files;
  Json fan{{"ambient", 3},
           {"rays", Json::array({Json::array({"1", "0", "0"}), Json::array({"0", "1", "0"}),
                                 Json::array({"0", "0", "1"}), Json::array({"-1", "-1", "-1"})})},
           {"cones", Json::array()}};
  for (int mask = 0; mask < 16; ++mask) {
    if (mask == 15) continue;
    Json cone = Json::array();
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) cone.push_back(i);
    fan["cones"].push_back(cone);
  }
  files["fan.json"] = fan;

  // the line: vertex at the origin inside {x=0}, rays e2, e3, -e2-e3
  auto ray_cell = [](const QVec& dir) {
    return intersect(Polyhedron::cone_from_rays(3, {dir}),
                     Polyhedron(3, {}, {{{Rat(1), Rat(0), Rat(0)}, Rat(0)}}));
  };
  Json line{{"ambient", 3}, {"dim", 1}, {"cells", Json::array()}};
  line["cells"].push_back(cell_doc(ray_cell({Rat(0), Rat(1), Rat(0)}), 1));
  line["cells"].push_back(cell_doc(ray_cell({Rat(0), Rat(0), Rat(1)}), 1));
  line["cells"].push_back(cell_doc(ray_cell({Rat(0), Rat(-1), Rat(-1)}), 1));
  files["line.json"] = line;

  Json origin_pt_2{{"ambient", 2}, {"dim", 0},
                   {"cells", Json::array({cell_doc(Polyhedron::point({Rat(0), Rat(0)}), 1)})}};
  Json origin_pt_1{{"ambient", 1}, {"dim", 0},
                   {"cells", Json::array({cell_doc(Polyhedron::point({Rat(0)}), 1)})}};
  files["gamma.json"] =
      Json{{"components", Json::array({Json{{"tau", Json::array()}, {"cycle", line}},
                                       Json{{"tau", {1}}, {"cycle", origin_pt_2}},
                                       Json{{"tau", {2}}, {"cycle", origin_pt_2}},
                                       Json{{"tau", {0, 3}}, {"cycle", origin_pt_1}}})}};

  files["f_plane.json"] =
      Json{{"ambient", 3}, {"dim", 2},
           {"cells", Json::array({cell_doc(
                         Polyhedron(3, {}, {{{Rat(1), Rat(0), Rat(0)}, Rat(0)}}), 1)})}};

  Json skel{{"ambient", 3}, {"dim", 2}, {"cells", Json::array()}};
  QMat gens{{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)},
            {Rat(0), Rat(0), Rat(1)}, {Rat(-1), Rat(-1), Rat(-1)}};
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = i + 1; j < 4; ++j)
      skel["cells"].push_back(cell_doc(Polyhedron::cone_from_rays(3, {gens[i], gens[j]}), 1));
  files["f_skeleton.json"] = skel;

  files["expected.json"] =
      Json{{"stable_degree_line_f_plane", "0"},
           {"total_degree_f_skeleton", "1"},
           {"note", "the plane {x=0} fails the compatibility predicate against this fan "
                    "(its recession slices through the interior of a 2-cone), so the "
                    "compactified command rejects it with exit code 3 and its degree 0 is "
                    "the plain stable intersection with line.json; the weight-one "
                    "2-skeleton is compatible and its compactified total degree is 1"}};
  return files;
}

Json fixture_bezout22() {
  Json files;
  files["conic1.json"] = poly_doc(2, {{{2, 0}, Rat(1)},
                                      {{1, 1}, Rat(0)},
                                      {{0, 2}, Rat(1)},
                                      {{1, 0}, Rat(0)},
                                      {{0, 1}, Rat(0)},
                                      {{0, 0}, Rat(1)}});
  files["conic2.json"] = poly_doc(2, {{{2, 0}, Rat(0)},
                                      {{1, 1}, Rat(0)},
                                      {{0, 2}, Rat(0)},
                                      {{1, 0}, Rat(0)},
                                      {{0, 1}, Rat(0)},
                                      {{0, 0}, Rat(0)}});
  files["expected.json"] = Json{{"stable_degree", "4"},
                                {"note", "two plane conics meet in 2*2 = 4 points counted "
                                         "with stable multiplicities"}};
  return files;
}

Json cmd_examples(const Json& req) {
  Json opts = options_of(req);
  std::string name = opts.value("name", "");
  if (name == "selfintersection-n") {
    int n = 3;
    if (opts.contains("n")) {
      const Json& jn = opts.at("n");
      if (jn.is_number_integer())
        n = jn.get<int>();
      else if (jn.is_string())
        n = std::atoi(jn.get<std::string>().c_str());
      else
        throw IoError("n must be an integer");
    }
    return Json{{"fixture", name}, {"files", fixture_selfintersection(n)}};
  }
  if (name == "selfinter-ex") return Json{{"fixture", name}, {"files", fixture_selfinter_ex()}};
  if (name == "tp3") return Json{{"fixture", name}, {"files", fixture_tp3()}};
  if (name == "bezout-2-2") return Json{{"fixture", name}, {"files", fixture_bezout22()}};
  throw IoError("unknown fixture '" + name +
                "'; available: selfintersection-n, selfinter-ex, tp3, bezout-2-2");
}

}  // namespace

int run_command(const std::string& command, const Json& request, Json& response) {
  response = Json{{"status", "ok"}, {"payload", Json::object()}, {"diagnostics", Json::array()}};
  try {
    if (command == "validate")
      response["payload"] = cmd_validate(request);
    else if (command == "stable-intersect")
      response["payload"] = cmd_stable_intersect(request);
    else if (command == "compactified")
      response["payload"] = cmd_compactified(request);
    else if (command == "hypersurface")
      response["payload"] = cmd_hypersurface(request);
    else if (command == "mw")
      response["payload"] = cmd_mw(request);
    else if (command == "plot")
      response["payload"] = cmd_plot(request);
    else if (command == "examples")
      response["payload"] = cmd_examples(request);
    else {
      response["status"] = "error";
      response["diagnostics"].push_back("unknown command '" + command + "'");
      return 2;
    }
    return 0;
  } catch (const CommandError& e) {
    response["status"] = "error";
    response["diagnostics"].push_back(e.what());
    return e.code;
  } catch (const IoError& e) {
    response["status"] = "error";
    response["diagnostics"].push_back(e.what());
    return 2;
  } catch (const std::exception& e) {
    response["status"] = "error";
    response["diagnostics"].push_back(std::string("internal error: ") + e.what());
    return 1;
  }
}

}  // namespace trop
