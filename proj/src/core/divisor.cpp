#include "core/divisor.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace trop {

namespace {

Rat zdot(const ZVec& a, const QVec& x) {
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * x[i];
  return s;
}

Int zzdot(const ZVec& a, const ZVec& b) {
  Int s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int to_int(const Rat& r0) {
  Rat r = r0;
  r.canonicalize();
  if (r.get_den() != 1) throw DivisorError("expected an integer weight");
  return r.get_num();
}

}  // namespace

// ---- toric divisors ------------------------------------------------------

ToricDivisor make_divisor(Fan d, std::vector<Int> coeffs) {
  if (coeffs.size() != d.rays.size()) throw DivisorError("one coefficient per ray expected");
  return ToricDivisor{std::move(d), std::move(coeffs)};
}

ToricDivisor principal_divisor(const ZVec& m, const Fan& d) {
  if ((int)m.size() != d.ambient) throw DivisorError("lattice vector size mismatch");
  std::vector<Int> coeffs;
  for (const auto& u : d.rays) coeffs.push_back(zzdot(m, u));
  return ToricDivisor{d, coeffs};
}

std::optional<std::map<size_t, ZVec>> is_cartier(const ToricDivisor& dv) {
  const Fan& d = dv.fan;
  std::map<size_t, ZVec> cert;
  for (size_t idx : d.maximal_cones()) {
    const auto& rs = d.cones[idx];
    if (rs.empty()) {
      cert[idx] = ZVec(d.ambient, Int(0));
      continue;
    }
    ZMat A;
    ZVec b;
    for (int r : rs) {
      A.push_back(d.rays[r]);
      b.push_back(-dv.coeffs[r]);
    }
    auto m = z_solve(A, b);
    if (!m) return std::nullopt;
    cert[idx] = *m;
  }
  return cert;
}

bool is_ample(const ToricDivisor& dv) {
  const Fan& d = dv.fan;
  if (!is_complete(d)) throw DivisorError("ampleness needs a complete fan");
  auto cert = is_cartier(dv);
  if (!cert) throw DivisorError("divisor is not Cartier");
  for (const auto& [idx, m] : *cert) {
    const auto& rs = d.cones[idx];
    for (size_t r = 0; r < d.rays.size(); ++r) {
      if (std::find(rs.begin(), rs.end(), (int)r) != rs.end()) continue;
      if (zzdot(m, d.rays[r]) <= -dv.coeffs[r]) return false;
    }
  }
  return true;
}

Polyhedron divisor_polytope(const ToricDivisor& dv) {
  std::vector<Constraint> ineqs;
  for (size_t r = 0; r < dv.fan.rays.size(); ++r)
    ineqs.push_back({to_qvec(dv.fan.rays[r]), Rat(-dv.coeffs[r])});
  return Polyhedron(dv.fan.ambient, ineqs, {});
}

Fan normal_fan(const Polyhedron& p) {
  int n = p.ambient();
  if (p.dim() != n) throw DivisorError("normal fan needs a full-dimensional polytope");
  if (recession_cone(p).dim() != 0) throw DivisorError("normal fan needs a bounded polytope");
  QMat vs = vertices(p);
  for (const auto& v : vs)
    for (const auto& c : v) {
      Rat cc = c;
      cc.canonicalize();
      if (cc.get_den() != 1) throw DivisorError("normal fan needs lattice vertices");
    }
  std::vector<Polyhedron> cones;
  for (const auto& v : vs) {
    std::vector<Constraint> ineqs;
    for (const auto& m : vs) {
      QVec a = sub(m, v);
      if (is_zero(a)) continue;
      ineqs.push_back({a, Rat(0)});
    }
    cones.push_back(Polyhedron(n, ineqs, {}));
  }
  return fan_from_cones(n, cones);
}

// ---- tropical polynomials ------------------------------------------------

TropicalPolynomial make_polynomial(int ambient, std::vector<Term> terms) {
  std::map<ZVec, Rat> folded;
  for (auto& t : terms) {
    if ((int)t.exp.size() != ambient) throw DivisorError("term exponent size mismatch");
    auto it = folded.find(t.exp);
    if (it == folded.end())
      folded.emplace(t.exp, t.val);
    else if (t.val < it->second)
      it->second = t.val;
  }
  if (folded.empty()) throw DivisorError("polynomial needs at least one term");
  TropicalPolynomial f{ambient, {}};
  for (auto& [e, v] : folded) f.terms.push_back({e, v});
  return f;
}

Rat eval_polynomial(const TropicalPolynomial& f, const QVec& x) {
  bool first = true;
  Rat best(0);
  for (const auto& t : f.terms) {
    Rat v = zdot(t.exp, x) + t.val;
    if (first || v < best) best = v;
    first = false;
  }
  return best;
}

namespace {

// closed region where term i attains the minimum
Polyhedron term_region(const TropicalPolynomial& f, size_t i) {
  std::vector<Constraint> ineqs;
  for (size_t j = 0; j < f.terms.size(); ++j) {
    if (j == i) continue;
    QVec a = sub(to_qvec(f.terms[j].exp), to_qvec(f.terms[i].exp));
    ineqs.push_back({a, f.terms[i].val - f.terms[j].val});
  }
  return Polyhedron(f.ambient, ineqs, {});
}

// lattice length of the set of minimizing exponents at x (must be collinear)
Int dual_edge_length(const TropicalPolynomial& f, const QVec& x) {
  Rat best = eval_polynomial(f, x);
  std::vector<ZVec> mins;
  for (const auto& t : f.terms)
    if (zdot(t.exp, x) + t.val == best) mins.push_back(t.exp);
  if (mins.size() < 2) throw DivisorError("degenerate dual cell");
  ZVec e0 = mins[0];
  ZVec g;
  for (const auto& e : mins) {
    ZVec dvec(e.size());
    bool nz = false;
    for (size_t i = 0; i < e.size(); ++i) {
      dvec[i] = e[i] - e0[i];
      if (dvec[i] != 0) nz = true;
    }
    if (nz) {
      g = primitive_generator(dvec);
      break;
    }
  }
  size_t pivot = 0;
  while (g[pivot] == 0) ++pivot;
  Int tmin(0), tmax(0);
  for (const auto& e : mins) {
    Int t = (e[pivot] - e0[pivot]) / g[pivot];
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] - e0[i] != t * g[i]) throw DivisorError("dual cell is not an edge");
    if (t < tmin) tmin = t;
    if (t > tmax) tmax = t;
  }
  return tmax - tmin;
}

}  // namespace

Cycle tropical_hypersurface(const TropicalPolynomial& f) {
  if (f.terms.size() < 2) throw DivisorError("hypersurface needs at least two distinct terms");
  int n = f.ambient;
  std::vector<Polyhedron> regions;
  for (size_t i = 0; i < f.terms.size(); ++i) regions.push_back(term_region(f, i));
  std::vector<Polyhedron> fs;
  for (size_t i = 0; i < regions.size(); ++i) {
    if (regions[i].dim() != n) continue;
    for (size_t j = i + 1; j < regions.size(); ++j) {
      if (regions[j].dim() != n) continue;
      Polyhedron q = intersect(regions[i], regions[j]);
      if (q.dim() == n - 1) fs.push_back(q);
    }
  }
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  std::vector<Cell> cells;
  for (const auto& q : fs) cells.push_back({q, dual_edge_length(f, relative_interior_point(q))});
  return make_cycle(n, n - 1, std::move(cells));
}

Cycle skeleton_divisor_check(const ToricDivisor& dv) {
  const Fan& d = dv.fan;
  if (!is_complete(d) || !is_unimodular(d))
    throw DivisorError("skeleton check needs a complete unimodular fan");
  if (!is_ample(dv)) throw DivisorError("skeleton check needs an ample divisor");
  auto cert = is_cartier(dv);
  std::vector<Term> terms;
  for (const auto& [idx, m] : *cert) terms.push_back({m, Rat(0)});
  Cycle h = tropical_hypersurface(make_polynomial(d.ambient, terms));
  std::vector<Polyhedron> skel;
  for (size_t idx : d.cones_of_dim(d.ambient - 1)) skel.push_back(d.cone_polys[idx]);
  for (const auto& c : h.cells)
    if (!covers(c.poly, skel)) throw DivisorError("hypersurface leaves the skeleton");
  std::vector<Polyhedron> supp;
  for (const auto& c : h.cells) supp.push_back(c.poly);
  for (const auto& s : skel)
    if (!covers(s, supp)) throw DivisorError("hypersurface misses part of the skeleton");
  return h;
}

// ---- Minkowski weights ---------------------------------------------------

Int MinkowskiWeight::value(size_t cone) const {
  auto it = values.find(cone);
  return it == values.end() ? Int(0) : it->second;
}

Cycle mw_cycle(const MinkowskiWeight& c) {
  int dim = c.fan.ambient - c.codim;
  std::vector<Cell> cells;
  for (const auto& [idx, w] : c.values)
    if (w != 0) cells.push_back({c.fan.cone_polys[idx], w});
  return make_cycle(c.fan.ambient, dim, std::move(cells));
}

std::vector<std::string> mw_balancing_check(const MinkowskiWeight& c) {
  return balancing_check(mw_cycle(c));
}

MinkowskiWeight make_minkowski_weight(Fan d, int codim, std::map<size_t, Int> values) {
  if (!is_complete(d)) throw DivisorError("Minkowski weights live on complete fans");
  int n = d.ambient;
  if (codim < 0) throw DivisorError("negative codimension");
  MinkowskiWeight c{std::move(d), codim, {}};
  if (codim > n) {
    if (!values.empty()) throw DivisorError("no cones in this codimension");
    return c;
  }
  std::vector<size_t> keys = c.fan.cones_of_dim(n - codim);
  for (const auto& [idx, w] : values)
    if (std::find(keys.begin(), keys.end(), idx) == keys.end())
      throw DivisorError("weight on a cone of the wrong dimension");
  for (size_t idx : keys) {
    auto it = values.find(idx);
    c.values[idx] = it == values.end() ? Int(0) : it->second;
  }
  auto bad = mw_balancing_check(c);
  if (!bad.empty()) throw DivisorError("unbalanced Minkowski weight: " + bad.front());
  return c;
}

MinkowskiWeight mw_from_cycle(const Cycle& s, const Fan& d) {
  if (s.ambient != d.ambient) throw DivisorError("ambient mismatch");
  if (s.dim < 0) throw DivisorError("empty cycle has no well-defined codimension");
  std::vector<Polyhedron> polys;
  for (const auto& c : s.cells) polys.push_back(c.poly);
  if (!is_compatible(d, polys)) throw DivisorError("cycle is not compatible with the fan");
  Cycle rec = recession_fan_cycle(s);
  std::vector<Polyhedron> skel;
  for (size_t idx : d.cones_of_dim(s.dim)) skel.push_back(d.cone_polys[idx]);
  for (const auto& c : rec.cells)
    if (!covers(c.poly, skel)) throw DivisorError("recession fan is not supported on the fan");
  std::map<size_t, Int> values;
  for (size_t idx : d.cones_of_dim(s.dim)) {
    QVec u = relative_interior_point(d.cone_polys[idx]);
    Int w(0);
    for (const auto& c : rec.cells)
      if (c.poly.contains(u)) w += c.weight;
    values[idx] = w;
  }
  return make_minkowski_weight(d, d.ambient - s.dim, values);
}

MinkowskiWeight mw_product(const MinkowskiWeight& c1, const MinkowskiWeight& c2, uint64_t seed) {
  const Fan& d = c1.fan;
  if (d.ambient != c2.fan.ambient || d.rays != c2.fan.rays || d.cones != c2.fan.cones)
    throw DivisorError("Minkowski weights on different fans");
  int n = d.ambient;
  int codim = c1.codim + c2.codim;
  if (codim > n) return MinkowskiWeight{d, codim, {}};
  std::vector<size_t> s1 = d.cones_of_dim(n - c1.codim);
  std::vector<size_t> s2 = d.cones_of_dim(n - c2.codim);
  struct Pair {
    size_t i, j;
    Int idx;
  };
  DisplacementGen gen(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    QVec v = gen.next(n);
    std::vector<Pair> meets;
    bool generic = true;
    for (size_t i : s1) {
      if (c1.value(i) == 0) continue;
      for (size_t j : s2) {
        if (c2.value(j) == 0) continue;
        if (intersect(d.cone_polys[i], translate(d.cone_polys[j], v)).is_empty()) continue;
        ZMat rows;
        for (const auto& r : saturate(d.cone_polys[i].direction_lattice()).basis) rows.push_back(r);
        for (const auto& r : saturate(d.cone_polys[j].direction_lattice()).basis) rows.push_back(r);
        Lattice sum = Lattice::from_rows(n, rows);
        if ((int)sum.rank() != n) {
          generic = false;
          break;
        }
        meets.push_back({i, j, lattice_index(sum, Lattice::standard(n))});
      }
      if (!generic) break;
    }
    if (!generic) continue;
    std::map<size_t, Int> values;
    for (size_t g : d.cones_of_dim(n - codim)) {
      const auto& grays = d.cones[g];
      Int w(0);
      for (const auto& pr : meets) {
        auto inside = [&](size_t cone) {
          const auto& rs = d.cones[cone];
          for (int r : grays)
            if (std::find(rs.begin(), rs.end(), r) == rs.end()) return false;
          return true;
        };
        if (inside(pr.i) && inside(pr.j)) w += pr.idx * c1.value(pr.i) * c2.value(pr.j);
      }
      values[g] = w;
    }
    return make_minkowski_weight(d, codim, values);
  }
  throw DivisorError("no certified generic displacement found");
}

Int mw_degree(const MinkowskiWeight& c) {
  if (c.codim != c.fan.ambient) throw DivisorError("degree needs a top-codimension weight");
  return c.value(c.fan.index_of({}));
}

Int degree_pairing_check(const MinkowskiWeight& c1, const MinkowskiWeight& c2,
                         const std::vector<MinkowskiWeight>& hyps, uint64_t seed) {
  MinkowskiWeight acc = mw_product(c1, c2, seed);
  for (const auto& h : hyps) acc = mw_product(acc, h, seed);
  return mw_degree(acc);
}

// ---- piecewise linear functions ------------------------------------------

RationalFunction make_rational_function(int ambient, std::vector<PLPiece> pieces) {
  std::vector<PLPiece> kept;
  for (auto& p : pieces) {
    if (p.dom.ambient() != ambient || (int)p.lin.size() != ambient)
      throw DivisorError("piece size mismatch");
    if (!p.dom.is_empty()) kept.push_back(std::move(p));
  }
  if (kept.empty()) throw DivisorError("function needs at least one piece");
  std::vector<Polyhedron> doms;
  for (const auto& p : kept) doms.push_back(p.dom);
  if (!covers(Polyhedron::full_space(ambient), doms))
    throw DivisorError("pieces do not cover the space");
  for (size_t i = 0; i < kept.size(); ++i)
    for (size_t j = i + 1; j < kept.size(); ++j) {
      Polyhedron o = intersect(kept[i].dom, kept[j].dom);
      if (o.is_empty()) continue;
      QVec dlin = sub(to_qvec(kept[i].lin), to_qvec(kept[j].lin));
      Rat dc = kept[i].c - kept[j].c;
      if (dot(dlin, relative_interior_point(o)) + dc != 0)
        throw DivisorError("pieces disagree on an overlap");
      for (const auto& b : o.direction_space())
        if (dot(dlin, b) != 0) throw DivisorError("pieces disagree on an overlap");
    }
  return RationalFunction{ambient, std::move(kept)};
}

Rat eval_function(const RationalFunction& r, const QVec& x) {
  for (const auto& p : r.pieces)
    if (p.dom.contains(x)) return zdot(p.lin, x) + p.c;
  throw DivisorError("point not covered by any piece");
}

RationalFunction function_from_polynomial(const TropicalPolynomial& f) {
  std::vector<PLPiece> pieces;
  for (size_t i = 0; i < f.terms.size(); ++i) {
    Polyhedron reg = term_region(f, i);
    if (reg.dim() == f.ambient) pieces.push_back({reg, f.terms[i].exp, f.terms[i].val});
  }
  return make_rational_function(f.ambient, std::move(pieces));
}

RationalFunction negate_function(const RationalFunction& r) {
  RationalFunction out = r;
  for (auto& p : out.pieces) {
    for (auto& v : p.lin) v = -v;
    p.c = -p.c;
  }
  return out;
}

RationalFunction support_function(const ToricDivisor& dv) {
  const Fan& d = dv.fan;
  if (!is_complete(d)) throw DivisorError("support function needs a complete fan");
  auto cert = is_cartier(dv);
  if (!cert) throw DivisorError("divisor is not Cartier");
  std::vector<PLPiece> pieces;
  for (const auto& [idx, m] : *cert) {
    ZVec lin(m.size());
    for (size_t i = 0; i < m.size(); ++i) lin[i] = -m[i];
    pieces.push_back({d.cone_polys[idx], lin, Rat(0)});
  }
  return make_rational_function(d.ambient, std::move(pieces));
}

std::optional<RationalFunction> restrict_function_to_orbit(const RationalFunction& r, size_t tau,
                                                           const Fan& d) {
  QuotientFrame frame = stratum_frame(d, tau);
  const Polyhedron& taupoly = d.cone_polys[tau];
  std::vector<PLPiece> pieces;
  for (const auto& p : r.pieces) {
    Polyhedron q = intersect(recession_cone(p.dom), taupoly);
    if (q.is_empty() || !in_relint(taupoly, relative_interior_point(q))) continue;
    for (const auto& b : frame.tau_basis)
      if (zzdot(p.lin, b) != 0) return std::nullopt;
    ZVec linq(frame.quotient);
    for (int j = 0; j < frame.quotient; ++j) linq[j] = zzdot(p.lin, frame.lift[j]);
    pieces.push_back({project(p.dom, frame), linq, p.c});
  }
  try {
    return make_rational_function(frame.quotient, std::move(pieces));
  } catch (const DivisorError&) {
    return std::nullopt;
  }
}

// ---- Cartier divisors on stratified cycles -------------------------------

StratifiedCycle ambient_cycle(const Fan& d) {
  StratifiedCycle a;
  a.components[d.index_of({})] =
      make_cycle(d.ambient, d.ambient, {{Polyhedron::full_space(d.ambient), 1}});
  return a;
}

CartierDivisor global_cartier(const RationalFunction& r) {
  return CartierDivisor{{Chart{{Polyhedron::full_space(r.ambient)}, r}}};
}

namespace {

// image of the chart region on the stratum O(tau)
std::vector<Polyhedron> chart_trace(const Chart& ch, size_t tau, const Fan& d,
                                    const QuotientFrame& frame) {
  if (d.cone_dim(tau) == 0) return ch.region;
  const Polyhedron& taupoly = d.cone_polys[tau];
  std::vector<Polyhedron> out;
  for (const auto& reg : ch.region)
    for (size_t del : d.maximal_cones()) {
      Polyhedron q = intersect(reg, d.cone_polys[del]);
      if (q.is_empty() || !recession_cone(q).contains(taupoly)) continue;
      out.push_back(project(q, frame));
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct RChart {
  std::vector<Polyhedron> trace;
  std::optional<RationalFunction> r;
};

std::vector<RChart> restrict_charts(const std::vector<Chart>& charts, size_t tau, const Fan& d,
                                    const QuotientFrame& frame) {
  std::vector<RChart> out;
  for (const auto& ch : charts)
    out.push_back({chart_trace(ch, tau, d, frame), restrict_function_to_orbit(ch.r, tau, d)});
  return out;
}

bool trace_contains(const RChart& rc, const QVec& x) {
  for (const auto& t : rc.trace)
    if (t.contains(x)) return true;
  return false;
}

// linear part and constant of the applicable chart at x
std::pair<ZVec, Rat> chart_affine_at(const std::vector<RChart>& rcs, const QVec& x) {
  for (const auto& rc : rcs) {
    if (!rc.r || !trace_contains(rc, x)) continue;
    for (const auto& p : rc.r->pieces)
      if (p.dom.contains(x)) return {p.lin, p.c};
  }
  throw DivisorError("chart cover gap");
}

}  // namespace

CartierDivisor make_cartier(std::vector<Chart> charts, const StratifiedCycle& alpha, const Fan& d) {
  if (charts.empty()) throw DivisorError("no charts");
  for (const auto& [tau, comp] : alpha.components) {
    if (comp.empty()) continue;
    QuotientFrame frame = stratum_frame(d, tau);
    std::vector<RChart> rcs = restrict_charts(charts, tau, d, frame);
    std::vector<Polyhedron> all_trace;
    for (const auto& rc : rcs)
      for (const auto& t : rc.trace) all_trace.push_back(t);
    for (const auto& cell : comp.cells) {
      if (!covers(cell.poly, all_trace)) throw DivisorError("chart cover gap");
      for (const auto& rc : rcs) {
        bool meets = false;
        for (const auto& t : rc.trace)
          if (!intersect(t, cell.poly).is_empty()) meets = true;
        if (meets && !rc.r) throw DivisorError("chart does not restrict to a met stratum");
      }
    }
    // differences of overlapping charts must be a single affine function
    for (size_t i = 0; i < rcs.size(); ++i)
      for (size_t j = i + 1; j < rcs.size(); ++j) {
        if (!rcs[i].r || !rcs[j].r) continue;
        bool seen = false;
        QVec dlin;
        Rat dc;
        for (const auto& ti : rcs[i].trace)
          for (const auto& tj : rcs[j].trace)
            for (const auto& cell : comp.cells)
              for (const auto& pi : rcs[i].r->pieces)
                for (const auto& pj : rcs[j].r->pieces) {
                  Polyhedron o = intersect(intersect(ti, tj),
                                           intersect(cell.poly, intersect(pi.dom, pj.dom)));
                  if (o.is_empty()) continue;
                  QVec dl = sub(to_qvec(pi.lin), to_qvec(pj.lin));
                  Rat dcc = pi.c - pj.c;
                  if (!seen) {
                    dlin = dl;
                    dc = dcc;
                    seen = true;
                  } else if (dl != dlin || dcc != dc) {
                    throw DivisorError("chart difference is not a single affine function");
                  }
                }
      }
  }
  return CartierDivisor{std::move(charts)};
}

StratifiedCycle cartier_intersect(const CartierDivisor& phi, const StratifiedCycle& alpha,
                                  const Fan& d) {
  std::map<size_t, std::map<Polyhedron, Int>> staged;
  std::map<size_t, int> staged_dim;
  auto stage = [&](size_t stratum, const Polyhedron& p, const Int& w, int dim) {
    auto it = staged_dim.find(stratum);
    if (it == staged_dim.end())
      staged_dim[stratum] = dim;
    else if (it->second != dim)
      throw DivisorError("mixed dimensions on a stratum");
    staged[stratum][p] += w;
  };

  for (const auto& [tau, comp0] : alpha.components) {
    if (comp0.empty() || comp0.dim < 1) continue;
    QuotientFrame frame = stratum_frame(d, tau);
    int m = frame.quotient;
    std::vector<RChart> rcs = restrict_charts(phi.charts, tau, d, frame);

    // refine so every chart is affine on every cell and every cell sits
    // inside or outside each trace piece
    std::vector<Cell> aux;
    for (const auto& rc : rcs) {
      if (rc.r)
        for (const auto& p : rc.r->pieces) aux.push_back({p.dom, 1});
      for (const auto& t : rc.trace) aux.push_back({t, 1});
    }
    std::vector<Hyperplane> hs = cell_hyperplanes(comp0.cells);
    for (const auto& h : cell_hyperplanes(aux)) hs.push_back(h);
    Cycle comp = refine_with(comp0, hs);

    std::vector<ZVec> lin_of(comp.cells.size());
    for (size_t i = 0; i < comp.cells.size(); ++i)
      lin_of[i] = chart_affine_at(rcs, relative_interior_point(comp.cells[i].poly)).first;

    // corner-locus part on this stratum
    std::vector<Polyhedron> fs;
    for (const auto& c : comp.cells)
      for (const auto& f : facets(c.poly)) fs.push_back(f);
    std::sort(fs.begin(), fs.end());
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
    for (const auto& q : fs) {
      QVec x = relative_interior_point(q);
      QuotientFrame fq = quotient_frame(m, q.direction_space());
      ZVec linq = chart_affine_at(rcs, x).first;
      Rat w(0);
      ZVec vsum(m, Int(0));
      for (size_t i = 0; i < comp.cells.size(); ++i) {
        const Cell& c = comp.cells[i];
        if (!c.poly.contains(q)) continue;
        ZVec u = normal_vector(c.poly, x, fq);
        auto v = z_solve(transpose(fq.proj), u);
        if (!v) throw DivisorError("no lattice normal lift");
        w += Rat(c.weight) * Rat(zzdot(lin_of[i], *v));
        for (int t = 0; t < m; ++t) vsum[t] += c.weight * (*v)[t];
      }
      w -= Rat(zzdot(linq, vsum));
      Int wi = to_int(w);
      if (wi != 0) stage(tau, q, wi, comp.dim - 1);
    }

    // boundary parts on the rays of the star fan
    Fan star = star_fan_quotient(d, tau);
    for (size_t sb = 0; sb < star.size(); ++sb) {
      if (star.cone_dim(sb) != 1) continue;
      const Polyhedron& sbpoly = star.cone_polys[sb];
      // matching cone of the big fan
      size_t sigma = d.size();
      for (size_t idx = 0; idx < d.size(); ++idx) {
        if (d.cone_dim(idx) != d.cone_dim(tau) + 1) continue;
        if (!d.cone_polys[idx].contains(d.cone_polys[tau])) continue;
        if (project(d.cone_polys[idx], frame) == sbpoly) {
          sigma = idx;
          break;
        }
      }
      if (sigma == d.size()) throw DivisorError("star ray without a matching cone");
      QuotientFrame fs_frame = stratum_frame(d, sigma);
      QuotientFrame W = quotient_frame(m, sbpoly.direction_space());
      ZVec gen = primitive_generator(relative_interior_point(sbpoly));
      for (size_t i = 0; i < comp.cells.size(); ++i) {
        const Cell& c = comp.cells[i];
        std::set<Polyhedron> imgs;
        for (size_t del : star.maximal_cones()) {
          Polyhedron q = intersect(c.poly, star.cone_polys[del]);
          if (q.is_empty() || !recession_cone(q).contains(sbpoly)) continue;
          Polyhedron img = project(q, W);
          if (img.dim() == comp.dim - 1) imgs.insert(img);
        }
        for (const auto& img : imgs) {
          Int idx = lattice_index(project_lattice(c.poly.direction_lattice(), W),
                                  img.direction_lattice());
          Int w = c.weight * idx * (-zzdot(lin_of[i], gen));
          if (w == 0) continue;
          Polyhedron canon = project(preimage(preimage(img, W), frame), fs_frame);
          stage(sigma, canon, w, comp.dim - 1);
        }
      }
    }
  }

  StratifiedCycle out;
  for (const auto& [stratum, cellmap] : staged) {
    std::vector<Cell> cells;
    for (const auto& [p, w] : cellmap)
      if (w != 0) cells.push_back({p, w});
    if (cells.empty()) continue;
    out.components[stratum] =
        make_cycle(stratum_frame(d, stratum).quotient, staged_dim[stratum], std::move(cells));
  }
  return out;
}

}  // namespace trop
