#include "core/cycle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "core/lp.hpp"

namespace trop {

namespace {

bool cell_less(const Cell& x, const Cell& y) { return x.poly < y.poly; }

// merge coinciding cells, summing weights; drop zeros
std::vector<Cell> merge_cells(std::vector<Cell> cells) {
  std::map<Polyhedron, Int> acc;
  for (auto& c : cells) acc[c.poly] += c.weight;
  std::vector<Cell> out;
  for (auto& [p, w] : acc)
    if (w != 0) out.push_back(Cell{p, w});
  return out;
}

void sign_normalize(QVec& a, Rat& b) {
  for (const Rat& c : a) {
    if (c == 0) continue;
    if (c < 0) {
      for (Rat& d : a) d = -d;
      b = -b;
    }
    return;
  }
}

// split a cell along one hyperplane, keeping full-dimensional halves
std::vector<Polyhedron> split(const Polyhedron& p, const Hyperplane& h) {
  QVec na = h.first;
  for (Rat& v : na) v = -v;
  Polyhedron above = intersect(p, Polyhedron(p.ambient(), {Constraint{h.first, h.second}}, {}));
  if (above == p) return {p};
  Polyhedron below = intersect(p, Polyhedron(p.ambient(), {Constraint{na, -h.second}}, {}));
  if (below == p) return {p};
  std::vector<Polyhedron> out;
  if (!above.is_empty() && above.dim() == p.dim()) out.push_back(above);
  if (!below.is_empty() && below.dim() == p.dim()) out.push_back(below);
  return out;
}

}  // namespace

// primitive generator of the image of the tangent cone of cell at x in the
// quotient by the facet directions (the cone must project to a ray)
ZVec normal_vector(const Polyhedron& cell, const QVec& x, const QuotientFrame& f) {
  Polyhedron ray = project(tangent_cone(cell, x), f);
  if (ray.dim() != 1 || !ray.is_cone())
    throw CycleError("facet star does not project to a ray");
  return primitive_generator(relative_interior_point(ray));
}

bool Cycle::supports(const QVec& x) const {
  for (const auto& c : cells)
    if (c.poly.contains(x)) return true;
  return false;
}

Cycle make_cycle(int ambient, int dim, std::vector<Cell> cells) {
  std::vector<Cell> kept;
  for (auto& c : cells) {
    if (c.poly.ambient() != ambient) throw CycleError("cell ambient mismatch");
    if (c.poly.is_empty() || c.weight == 0) continue;
    if (c.poly.dim() != dim) throw CycleError("cycle is not pure-dimensional");
    kept.push_back(std::move(c));
  }
  Cycle s;
  s.ambient = ambient;
  s.dim = dim;
  s.cells = merge_cells(std::move(kept));
  return s;
}

std::vector<Hyperplane> cell_hyperplanes(const std::vector<Cell>& cells) {
  std::vector<Hyperplane> hs;
  for (const auto& c : cells) {
    auto take = [&](const Constraint& con) {
      QVec a = con.a;
      Rat b = con.b;
      sign_normalize(a, b);
      hs.emplace_back(std::move(a), std::move(b));
    };
    for (const auto& con : c.poly.ineqs()) take(con);
    for (const auto& con : c.poly.eqs()) take(con);
  }
  std::sort(hs.begin(), hs.end(), [](const Hyperplane& x, const Hyperplane& y) {
    if (x.first != y.first) return qvec_less(x.first, y.first);
    return cmp(x.second, y.second) < 0;
  });
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
  return hs;
}

Cycle refine_with(const Cycle& s, const std::vector<Hyperplane>& hs) {
  std::vector<Cell> out;
  for (const auto& c : s.cells) {
    std::vector<Polyhedron> pieces = {c.poly};
    for (const auto& h : hs) {
      std::vector<Polyhedron> next;
      for (const auto& p : pieces) {
        std::vector<Polyhedron> sp = split(p, h);
        next.insert(next.end(), sp.begin(), sp.end());
      }
      pieces = std::move(next);
    }
    for (auto& p : pieces) out.push_back(Cell{std::move(p), c.weight});
  }
  Cycle r;
  r.ambient = s.ambient;
  r.dim = s.dim;
  r.cells = merge_cells(std::move(out));
  return r;
}

Cycle refine(const Cycle& s) { return refine_with(s, cell_hyperplanes(s.cells)); }

std::pair<Cycle, Cycle> common_refinement(const Cycle& a, const Cycle& b) {
  if (a.ambient != b.ambient) throw CycleError("ambient mismatch");
  std::vector<Cell> all = a.cells;
  all.insert(all.end(), b.cells.begin(), b.cells.end());
  std::vector<Hyperplane> hs = cell_hyperplanes(all);
  return {refine_with(a, hs), refine_with(b, hs)};
}

std::vector<std::string> balancing_check(const Cycle& s0) {
  std::vector<std::string> bad;
  if (s0.cells.empty() || s0.dim <= 0) return bad;
  Cycle s = refine(s0);
  std::vector<Polyhedron> fs;
  for (const auto& c : s.cells)
    for (const auto& f : facets(c.poly)) fs.push_back(f);
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  for (const auto& tau : fs) {
    QuotientFrame f = quotient_frame(s.ambient, tau.direction_space());
    QVec x = relative_interior_point(tau);
    QVec sum(f.quotient, Rat(0));
    for (const auto& c : s.cells) {
      if (!c.poly.contains(tau)) continue;
      ZVec u = normal_vector(c.poly, x, f);
      for (int i = 0; i < f.quotient; ++i) sum[i] += Rat(c.weight) * Rat(u[i]);
    }
    if (!is_zero(sum)) {
      std::ostringstream os;
      os << "unbalanced at face " << tau.key() << ": residue " << qvec_str(sum);
      bad.push_back(os.str());
    }
  }
  return bad;
}

Cycle star_at(const Cycle& s, const QVec& u) {
  Cycle r = refine(s);
  std::vector<Cell> out;
  for (const auto& c : r.cells)
    if (c.poly.contains(u)) out.push_back(Cell{tangent_cone(c.poly, u), c.weight});
  if (out.empty()) throw CycleError("point is not on the support");
  Cycle st;
  st.ambient = s.ambient;
  st.dim = s.dim;
  st.cells = merge_cells(std::move(out));
  return st;
}

Cycle translate(const Cycle& s, const QVec& v) {
  Cycle r = s;
  for (auto& c : r.cells) c.poly = translate(c.poly, v);
  return r;
}

DisplacementGen::DisplacementGen(uint64_t seed) : rng(seed) {}

QVec DisplacementGen::next(int n) {
  std::uniform_int_distribution<long> d(-1000003, 1000003);
  QVec v(n);
  for (int i = 0; i < n; ++i) v[i] = Rat((long)d(rng));
  return v;
}

bool displaced_meets(const Polyhedron& p1, const Polyhedron& p2, const QVec& v) {
  if (p1.is_empty() || p2.is_empty()) return false;
  int n = p1.ambient();
  // variables (x, eps): x in p1, x - eps*v in p2, eps >= 0
  QMat A;
  QVec b;
  QMat E;
  QVec f;
  auto push = [&](const Constraint& c, const Rat& vshift, bool eq) {
    QVec row = c.a;
    row.push_back(vshift);
    (eq ? E : A).push_back(std::move(row));
    (eq ? f : b).push_back(c.b);
  };
  for (const auto& c : p1.ineqs()) push(c, Rat(0), false);
  for (const auto& c : p1.eqs()) push(c, Rat(0), true);
  for (const auto& c : p2.ineqs()) push(c, -dot(c.a, v), false);
  for (const auto& c : p2.eqs()) push(c, -dot(c.a, v), true);
  QVec pos(n + 1, Rat(0));
  pos[n] = 1;
  A.push_back(pos);
  b.push_back(Rat(0));
  QVec obj(n + 1, Rat(0));
  obj[n] = 1;
  LpResult lo = lp_minimize(obj, A, b, E, f);
  if (lo.status != LpStatus::Optimal || lo.value != 0) return false;
  LpResult hi = lp_maximize(obj, A, b, E, f);
  return hi.status == LpStatus::Unbounded || (hi.status == LpStatus::Optimal && hi.value > 0);
}

namespace {

struct StarPair {
  Polyhedron c1, c2;
  Int w;          // product of the two cell weights
  Lattice sum;    // L1 + L2
  bool transverse;
};

// star data of both cycles at x; weight contribution of each pair
std::vector<StarPair> star_pairs(const Cycle& a, const Cycle& b, const QVec& x) {
  std::vector<StarPair> out;
  for (const auto& ca : a.cells) {
    if (!ca.poly.contains(x)) continue;
    Lattice la = ca.poly.direction_lattice();
    for (const auto& cb : b.cells) {
      if (!cb.poly.contains(x)) continue;
      Lattice lb = cb.poly.direction_lattice();
      ZMat rows = la.basis;
      rows.insert(rows.end(), lb.basis.begin(), lb.basis.end());
      StarPair sp;
      sp.c1 = tangent_cone(ca.poly, x);
      sp.c2 = tangent_cone(cb.poly, x);
      sp.w = ca.weight * cb.weight;
      sp.sum = Lattice::from_rows(a.ambient, rows);
      sp.transverse = (int)sp.sum.rank() == a.ambient;
      out.push_back(std::move(sp));
    }
  }
  return out;
}

// multiplicity at x for a fixed displacement; nullopt if v fails the
// genericity certificate (a displaced pair meets without transversality)
std::optional<Int> mult_at(const std::vector<StarPair>& pairs, const QVec& v, int n) {
  Int total = 0;
  for (const auto& sp : pairs) {
    if (!displaced_meets(sp.c1, sp.c2, v)) continue;
    if (!sp.transverse) return std::nullopt;
    total += sp.w * lattice_index(sp.sum, Lattice::standard(n));
  }
  return total;
}

}  // namespace

Cycle stable_intersect(const Cycle& a0, const Cycle& b0, uint64_t seed) {
  if (a0.ambient != b0.ambient) throw CycleError("ambient mismatch");
  int n = a0.ambient;
  int m = a0.dim + b0.dim - n;
  Cycle out;
  out.ambient = n;
  out.dim = m;
  if (m < 0 || a0.cells.empty() || b0.cells.empty()) {
    out.dim = std::max(m, -1);
    return out;
  }
  auto [a, b] = common_refinement(a0, b0);
  std::vector<Polyhedron> cand;
  for (const auto& ca : a.cells)
    for (const auto& cb : b.cells) {
      Polyhedron i = intersect(ca.poly, cb.poly);
      if (i.dim() < m) continue;
      for (const auto& f : faces(i, m)) cand.push_back(f);
    }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  DisplacementGen gen(seed);
  QVec v = gen.next(n);
  std::vector<Cell> cells;
  for (const auto& q : cand) {
    QVec x = relative_interior_point(q);
    std::vector<StarPair> pairs = star_pairs(a, b, x);
    std::optional<Int> w;
    for (int tries = 0; tries < 64; ++tries) {
      w = mult_at(pairs, v, n);
      if (w) break;
      v = gen.next(n);
    }
    if (!w) throw CycleError("no certified generic displacement found");
    if (*w != 0) cells.push_back(Cell{q, *w});
  }
  out.cells = merge_cells(std::move(cells));
  return out;
}

Int local_multiplicity(const Cycle& a, const Cycle& b, const QVec& u, uint64_t seed) {
  if (a.ambient != b.ambient) throw CycleError("ambient mismatch");
  if (a.dim + b.dim != a.ambient) throw CycleError("dimensions are not complementary");
  if (!a.supports(u) || !b.supports(u)) return 0;
  Cycle sa = star_at(a, u), sb = star_at(b, u);
  std::vector<StarPair> pairs = star_pairs(sa, sb, QVec(a.ambient, Rat(0)));
  DisplacementGen gen(seed);
  for (int tries = 0; tries < 64; ++tries) {
    std::optional<Int> w = mult_at(pairs, gen.next(a.ambient), a.ambient);
    if (w) return *w;
  }
  throw CycleError("no certified generic displacement found");
}

Cycle multi_stable_intersect(const std::vector<Cycle>& list, uint64_t seed) {
  if (list.empty()) throw CycleError("empty intersection list");
  Cycle acc = list[0];
  for (size_t i = 1; i < list.size(); ++i) acc = stable_intersect(acc, list[i], seed);
  return acc;
}

Int degree(const Cycle& s) {
  if (s.cells.empty()) return 0;
  if (s.dim != 0) throw CycleError("degree of a positive-dimensional cycle");
  Int d = 0;
  for (const auto& c : s.cells) d += c.weight;
  return d;
}

namespace {

// is f a face of p? (f nonempty subset of p)
bool face_of(const Polyhedron& p, const Polyhedron& f) {
  QVec x = relative_interior_point(f);
  std::vector<Constraint> eqs = p.eqs();
  std::vector<Constraint> ineqs;
  for (const auto& c : p.ineqs()) {
    if (dot(c.a, x) == c.b)
      eqs.push_back(c);
    else
      ineqs.push_back(c);
  }
  return Polyhedron(p.ambient(), ineqs, eqs) == f;
}

// do the cells form a polyhedral complex (pairwise common faces)?
bool is_complex(const std::vector<Cell>& cells) {
  for (size_t i = 0; i < cells.size(); ++i)
    for (size_t j = i + 1; j < cells.size(); ++j) {
      if (cells[i].poly == cells[j].poly) continue;
      Polyhedron f = intersect(cells[i].poly, cells[j].poly);
      if (f.is_empty()) continue;
      if (!face_of(cells[i].poly, f) || !face_of(cells[j].poly, f)) return false;
    }
  return true;
}

}  // namespace

Cycle recession_fan_cycle(const Cycle& s) {
  Cycle rec;
  rec.ambient = s.ambient;
  rec.dim = s.dim;
  for (const auto& c : s.cells) {
    Polyhedron rc = recession_cone(c.poly);
    if (rc.dim() == s.dim) rec.cells.push_back(Cell{std::move(rc), c.weight});
  }
  // Recession cones that already form a complex keep their coarse shape;
  // this preserves compatibility with fans whose cones they are.
  if (is_complex(rec.cells)) {
    rec.cells = merge_cells(std::move(rec.cells));
    return rec;
  }
  // split along the central arrangement of all bounding hyperplanes
  std::vector<Hyperplane> hs = cell_hyperplanes(rec.cells);
  for (auto& h : hs) h.second = 0;
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
  Cycle split = refine_with(rec, hs);
  // weights of overlapping recession cones accumulate; zero-sum pieces drop
  std::vector<Cell> kept;
  for (auto& c : split.cells)
    if (c.poly.dim() == s.dim) kept.push_back(std::move(c));
  Cycle out;
  out.ambient = s.ambient;
  out.dim = s.dim;
  out.cells = merge_cells(std::move(kept));
  return out;
}

std::vector<Cycle> connected_components(const Cycle& s0) {
  Cycle s = refine(s0);
  size_t n = s.cells.size();
  std::vector<size_t> parent(n);
  for (size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (!intersect(s.cells[i].poly, s.cells[j].poly).is_empty()) parent[find(i)] = find(j);
  std::map<size_t, Cycle> comp;
  for (size_t i = 0; i < n; ++i) {
    Cycle& c = comp[find(i)];
    c.ambient = s.ambient;
    c.dim = s.dim;
    c.cells.push_back(s.cells[i]);
  }
  std::vector<Cycle> out;
  for (auto& [k, c] : comp) out.push_back(std::move(c));
  return out;
}

Cycle restrict_to_component(const Cycle& s, const QVec& witness) {
  for (Cycle& c : connected_components(s)) {
    if (c.supports(witness)) return c;
  }
  throw CycleError("witness point is not on the support");
}

Cycle restrict_to_component(const Cycle& s, const std::vector<Cycle>& supports,
                            const QVec& witness) {
  // Pieces of the set-theoretic intersection of the supports. Connectivity
  // is measured there, not on s: an intersection component can join points
  // of s through positive-dimensional overlap that carries no weight.
  std::vector<Polyhedron> pieces{Polyhedron::full_space(s.ambient)};
  for (const Cycle& sup : supports) {
    std::vector<Polyhedron> next;
    for (const Polyhedron& p : pieces)
      for (const Cell& c : sup.cells) {
        Polyhedron q = intersect(p, c.poly);
        if (!q.is_empty()) next.push_back(q);
      }
    pieces = std::move(next);
  }
  size_t n = pieces.size();
  std::vector<size_t> parent(n);
  for (size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (!intersect(pieces[i], pieces[j]).is_empty()) parent[find(i)] = find(j);
  std::optional<size_t> home;
  for (size_t i = 0; i < n; ++i)
    if (pieces[i].contains(witness)) home = find(i);
  if (!home) throw CycleError("witness point is not on the intersection of the supports");
  std::vector<Cell> kept;
  for (const Cell& c : s.cells)
    for (size_t i = 0; i < n; ++i)
      if (find(i) == *home && !intersect(c.poly, pieces[i]).is_empty()) {
        kept.push_back(c);
        break;
      }
  return make_cycle(s.ambient, s.dim, std::move(kept));
}

bool cycle_equal(const Cycle& a, const Cycle& b) {
  if (a.ambient != b.ambient) return false;
  if (a.cells.empty() && b.cells.empty()) return true;
  if (a.dim != b.dim) return false;
  auto [ra, rb] = common_refinement(a, b);
  std::map<Polyhedron, Int> wa, wb;
  for (const auto& c : ra.cells) wa[c.poly] += c.weight;
  for (const auto& c : rb.cells) wb[c.poly] += c.weight;
  return wa == wb;
}

Int relative_multiplicity_in_smooth_face(const Cycle& s1, const Cycle& s2, const Cycle& y,
                                         const QVec& u, uint64_t seed) {
  Cycle ry = refine(y);
  const Cell* face = nullptr;
  for (const auto& c : ry.cells) {
    if (!c.poly.contains(u)) continue;
    // u must be interior: no non-implicit constraint tight
    Polyhedron tc = tangent_cone(c.poly, u);
    if (!tc.ineqs().empty()) throw CycleError("point is not in the relative interior of a maximal face");
    if (face) throw CycleError("point lies on several maximal faces");
    face = &c;
  }
  if (!face) throw CycleError("point is not on the ambient cycle");
  if (face->weight != 1) throw CycleError("face has multiplicity different from one");
  // coordinates in the saturated direction lattice of the face
  Lattice W = face->poly.direction_lattice();
  int d = (int)W.rank();
  auto push_down = [&](const Cycle& s) {
    Cycle st = star_at(s, u);
    std::vector<Cell> cells;
    for (const auto& c : st.cells) {
      std::vector<Constraint> in, eq;
      auto conv = [&](const Constraint& con) {
        Constraint r;
        r.a.resize(d);
        for (int i = 0; i < d; ++i) r.a[i] = dot(W.basis[i], con.a);
        r.b = con.b;
        return r;
      };
      for (const auto& con : c.poly.ineqs()) in.push_back(conv(con));
      for (const auto& con : c.poly.eqs()) eq.push_back(conv(con));
      Polyhedron p(d, std::move(in), std::move(eq));
      if (p.dim() != c.poly.dim()) throw CycleError("cycle leaves the ambient face near the point");
      cells.push_back(Cell{std::move(p), c.weight});
    }
    return make_cycle(d, st.dim, std::move(cells));
  };
  Cycle a = push_down(s1), b = push_down(s2);
  return local_multiplicity(a, b, QVec(d, Rat(0)), seed);
}

}  // namespace trop
