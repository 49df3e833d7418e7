#include "io/json_io.hpp"

namespace trop {

Json rat_to_json(const Rat& r) { return rat_str(r); }

Rat rat_from_json(const Json& j) {
  if (j.is_number())
    throw IoError("plain JSON numbers are rejected for coordinates; use strings");
  if (!j.is_string()) throw IoError("expected a rational string");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const std::exception& e) {
    throw IoError(std::string("bad rational: ") + e.what());
  }
}

Json qvec_to_json(const QVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rat_to_json(x));
  return out;
}

QVec qvec_from_json(const Json& j, int expect_len) {
  if (!j.is_array()) throw IoError("expected an array of rational strings");
  QVec v;
  for (const auto& e : j) v.push_back(rat_from_json(e));
  if (expect_len >= 0 && (int)v.size() != expect_len) throw IoError("vector length mismatch");
  return v;
}

Json zvec_to_json(const ZVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

ZVec zvec_from_json(const Json& j, int expect_len) {
  QVec q = qvec_from_json(j, expect_len);
  ZVec v;
  for (auto& x : q) {
    x.canonicalize();
    if (x.get_den() != 1) throw IoError("expected an integer entry");
    v.push_back(x.get_num());
  }
  return v;
}

namespace {

Json row_to_json(const Constraint& c) {
  Json out = Json::array();
  for (const auto& x : c.a) out.push_back(rat_to_json(x));
  out.push_back(rat_to_json(c.b));
  return out;
}

Constraint row_from_json(const Json& j, int n) {
  QVec full = qvec_from_json(j, n + 1);
  QVec a(full.begin(), full.end() - 1);
  return Constraint{a, full.back()};
}

}  // namespace

Json poly_to_json(const Polyhedron& p) {
  Json out;
  out["dim"] = p.ambient();
  out["ineqs"] = Json::array();
  for (const auto& c : p.ineqs()) out["ineqs"].push_back(row_to_json(c));
  out["eqs"] = Json::array();
  for (const auto& c : p.eqs()) out["eqs"].push_back(row_to_json(c));
  return out;
}

Polyhedron poly_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim")) throw IoError("polyhedron needs a dim field");
  if (!j.at("dim").is_number_integer()) throw IoError("dim must be an integer");
  int n = j.at("dim").get<int>();
  if (n < 0) throw IoError("negative ambient dimension");
  std::vector<Constraint> ineqs, eqs;
  for (const auto& r : j.value("ineqs", Json::array())) ineqs.push_back(row_from_json(r, n));
  for (const auto& r : j.value("eqs", Json::array())) eqs.push_back(row_from_json(r, n));
  return Polyhedron(n, ineqs, eqs);
}

Json cycle_to_json(const Cycle& s) {
  Json out;
  out["ambient"] = s.ambient;
  out["dim"] = s.dim;
  out["cells"] = Json::array();
  for (const auto& c : s.cells)
    out["cells"].push_back({{"poly", poly_to_json(c.poly)}, {"weight", c.weight.get_str()}});
  return out;
}

Cycle cycle_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ambient") || !j.contains("dim"))
    throw IoError("cycle needs ambient and dim fields");
  if (!j.at("ambient").is_number_integer() || !j.at("dim").is_number_integer())
    throw IoError("ambient and dim must be integers");
  int n = j.at("ambient").get<int>();
  int dim = j.at("dim").get<int>();
  std::vector<Cell> cells;
  for (const auto& c : j.value("cells", Json::array())) {
    if (!c.contains("poly") || !c.contains("weight")) throw IoError("cell needs poly and weight");
    Rat w = rat_from_json(c.at("weight"));
    w.canonicalize();
    if (w.get_den() != 1) throw IoError("cell weight must be an integer");
    cells.push_back({poly_from_json(c.at("poly")), w.get_num()});
  }
  try {
    return make_cycle(n, dim, std::move(cells));
  } catch (const CycleError& e) {
    throw IoError(e.what());
  }
}

Json fan_to_json(const Fan& d) {
  Json out;
  out["ambient"] = d.ambient;
  out["rays"] = Json::array();
  for (const auto& r : d.rays) out["rays"].push_back(zvec_to_json(r));
  out["cones"] = Json::array();
  for (const auto& c : d.cones) out["cones"].push_back(c);
  return out;
}

Fan fan_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ambient")) throw IoError("fan needs an ambient field");
  if (!j.at("ambient").is_number_integer()) throw IoError("ambient must be an integer");
  int n = j.at("ambient").get<int>();
  ZMat rays;
  for (const auto& r : j.value("rays", Json::array())) rays.push_back(zvec_from_json(r, n));
  std::vector<std::vector<int>> cones;
  for (const auto& c : j.value("cones", Json::array())) {
    if (!c.is_array()) throw IoError("cone must be an array of ray indices");
    std::vector<int> set;
    for (const auto& e : c) {
      if (!e.is_number_integer()) throw IoError("ray index must be an integer");
      int idx = e.get<int>();
      if (idx < 0 || idx >= (int)rays.size()) throw IoError("ray index out of range");
      set.push_back(idx);
    }
    cones.push_back(set);
  }
  try {
    return make_fan(n, std::move(rays), std::move(cones));
  } catch (const FanError& e) {
    throw IoError(e.what());
  }
}

Json polynomial_to_json(const TropicalPolynomial& f) {
  Json out;
  out["ambient"] = f.ambient;
  out["terms"] = Json::array();
  for (const auto& t : f.terms)
    out["terms"].push_back({{"exp", zvec_to_json(t.exp)}, {"val", rat_to_json(t.val)}});
  return out;
}

TropicalPolynomial polynomial_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ambient")) throw IoError("polynomial needs an ambient field");
  if (!j.at("ambient").is_number_integer()) throw IoError("ambient must be an integer");
  int n = j.at("ambient").get<int>();
  std::vector<Term> terms;
  for (const auto& t : j.value("terms", Json::array())) {
    if (!t.contains("exp") || !t.contains("val")) throw IoError("term needs exp and val");
    terms.push_back({zvec_from_json(t.at("exp"), n), rat_from_json(t.at("val"))});
  }
  try {
    return make_polynomial(n, std::move(terms));
  } catch (const DivisorError& e) {
    throw IoError(e.what());
  }
}

Json mw_to_json(const MinkowskiWeight& c) {
  Json out;
  out["fan"] = fan_to_json(c.fan);
  out["codim"] = c.codim;
  out["values"] = Json::array();
  for (const auto& [idx, w] : c.values)
    out["values"].push_back({{"cone", c.fan.cones[idx]}, {"w", w.get_str()}});
  return out;
}

MinkowskiWeight mw_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("fan") || !j.contains("codim"))
    throw IoError("weight needs fan and codim fields");
  if (!j.at("codim").is_number_integer()) throw IoError("codim must be an integer");
  Fan d = fan_from_json(j.at("fan"));
  int codim = j.at("codim").get<int>();
  std::map<size_t, Int> values;
  for (const auto& v : j.value("values", Json::array())) {
    if (!v.contains("cone") || !v.contains("w")) throw IoError("value needs cone and w");
    std::vector<int> set;
    for (const auto& e : v.at("cone")) {
      if (!e.is_number_integer()) throw IoError("ray index must be an integer");
      set.push_back(e.get<int>());
    }
    Rat w = rat_from_json(v.at("w"));
    w.canonicalize();
    if (w.get_den() != 1) throw IoError("weight must be an integer");
    try {
      values[d.index_of(set)] = w.get_num();
    } catch (const FanError& e) {
      throw IoError(e.what());
    }
  }
  try {
    return make_minkowski_weight(std::move(d), codim, std::move(values));
  } catch (const DivisorError& e) {
    throw IoError(e.what());
  }
}

Json stratified_to_json(const StratifiedCycle& s, const Fan& d) {
  Json out;
  out["components"] = Json::array();
  for (const auto& [tau, comp] : s.components)
    out["components"].push_back({{"tau", d.cones[tau]}, {"cycle", cycle_to_json(comp)}});
  return out;
}

StratifiedCycle stratified_from_json(const Json& j, const Fan& d) {
  if (!j.is_object() || !j.contains("components"))
    throw IoError("stratified cycle needs a components field");
  StratifiedCycle out;
  for (const auto& c : j.at("components")) {
    if (!c.contains("tau") || !c.contains("cycle")) throw IoError("component needs tau and cycle");
    std::vector<int> set;
    for (const auto& e : c.at("tau")) {
      if (!e.is_number_integer()) throw IoError("ray index must be an integer");
      set.push_back(e.get<int>());
    }
    size_t tau;
    try {
      tau = d.index_of(set);
    } catch (const FanError& e) {
      throw IoError(e.what());
    }
    if (out.components.count(tau)) throw IoError("duplicate stratum component");
    Cycle comp = cycle_from_json(c.at("cycle"));
    if (comp.ambient != stratum_frame(d, tau).quotient)
      throw IoError("component ambient does not match the stratum frame");
    out.components[tau] = comp;
  }
  return out;
}

std::string dump_canonical(const Json& j) { return j.dump(2); }

}  // namespace trop
