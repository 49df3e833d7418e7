#include "core/fan.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace trop {

namespace {

Polyhedron cone_poly_of(int ambient, const ZMat& rays, const std::vector<int>& idx) {
  QMat gens;
  for (int i : idx) gens.push_back(to_qvec(rays[i]));
  return Polyhedron::cone_from_rays(ambient, gens);
}

}  // namespace

size_t Fan::index_of(const std::vector<int>& rayset) const {
  std::vector<int> key = rayset;
  std::sort(key.begin(), key.end());
  for (size_t i = 0; i < cones.size(); ++i)
    if (cones[i] == key) return i;
  throw FanError("cone not in fan");
}

std::optional<size_t> Fan::find_poly(const Polyhedron& p) const {
  for (size_t i = 0; i < cone_polys.size(); ++i)
    if (cone_polys[i] == p) return i;
  return std::nullopt;
}

std::vector<size_t> Fan::maximal_cones() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < size(); ++i) {
    bool maximal = true;
    for (size_t j = 0; j < size() && maximal; ++j)
      if (i != j && cone_polys[j].contains(cone_polys[i])) maximal = false;
    if (maximal) out.push_back(i);
  }
  return out;
}

std::vector<size_t> Fan::cones_of_dim(int d) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < size(); ++i)
    if (cone_dim(i) == d) out.push_back(i);
  return out;
}

Fan make_fan(int ambient, ZMat rays, std::vector<std::vector<int>> cones) {
  Fan f;
  f.ambient = ambient;
  f.rays = std::move(rays);
  for (const ZVec& r : f.rays) {
    if ((int)r.size() != ambient) throw FanError("ray arity mismatch");
    if (is_zero(r)) throw FanError("zero ray");
    if (primitive_generator(r) != r) throw FanError("ray is not primitive");
  }
  for (size_t i = 0; i < f.rays.size(); ++i)
    for (size_t j = i + 1; j < f.rays.size(); ++j)
      if (f.rays[i] == f.rays[j]) throw FanError("duplicate ray");

  for (auto& c : cones) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (int i : c)
      if (i < 0 || i >= (int)f.rays.size()) throw FanError("ray index out of range");
  }
  std::sort(cones.begin(), cones.end());
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
  f.cones = std::move(cones);
  bool has_zero = false;
  for (const auto& c : f.cones) has_zero |= c.empty();
  if (!has_zero) throw FanError("zero cone missing");

  for (const auto& c : f.cones) {
    Polyhedron p = cone_poly_of(ambient, f.rays, c);
    // the listed rays must be exactly the extreme rays (pointedness too)
    ZMat extreme = cone_rays(p);
    ZMat listed;
    for (int i : c) listed.push_back(f.rays[i]);
    std::sort(listed.begin(), listed.end());
    if (extreme != listed) throw FanError("cone is not generated by its listed rays");
    f.cone_polys.push_back(std::move(p));
  }

  // faces listed, pairwise intersections are listed common faces
  for (size_t i = 0; i < f.size(); ++i) {
    for (int k = 0; k <= f.cone_dim(i); ++k)
      for (const Polyhedron& face : faces(f.cone_polys[i], k))
        if (!f.find_poly(face)) throw FanError("face of a cone is not listed");
    for (size_t j = i + 1; j < f.size(); ++j) {
      Polyhedron meet = intersect(f.cone_polys[i], f.cone_polys[j]);
      auto idx = f.find_poly(meet);
      if (!idx) throw FanError("cone intersection is not a listed cone");
      bool face_i = false, face_j = false;
      for (int k = 0; k <= f.cone_dim(i); ++k)
        for (const Polyhedron& face : faces(f.cone_polys[i], k)) face_i |= face == meet;
      for (int k = 0; k <= f.cone_dim(j); ++k)
        for (const Polyhedron& face : faces(f.cone_polys[j], k)) face_j |= face == meet;
      if (!face_i || !face_j) throw FanError("cone intersection is not a common face");
    }
  }
  return f;
}

Fan fan_from_cones(int ambient, const std::vector<Polyhedron>& cones) {
  std::vector<Polyhedron> all;
  for (const auto& c : cones)
    for (int k = 0; k <= c.dim(); ++k)
      for (const Polyhedron& face : faces(c, k)) all.push_back(face);
  all.push_back(Polyhedron::point(QVec(ambient, Rat(0))));
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  ZMat rays;
  for (const auto& c : all)
    if (c.dim() == 1)
      rays.push_back(primitive_generator(relative_interior_point(c)));
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());

  std::vector<std::vector<int>> idx_sets;
  for (const auto& c : all) {
    std::vector<int> set;
    for (size_t i = 0; i < rays.size(); ++i)
      if (c.contains(to_qvec(rays[i]))) set.push_back((int)i);
    idx_sets.push_back(std::move(set));
  }
  return make_fan(ambient, std::move(rays), std::move(idx_sets));
}

bool is_unimodular(const Fan& d) {
  for (const auto& c : d.cones) {
    if (c.empty()) continue;
    ZMat gens;
    for (int i : c) gens.push_back(d.rays[i]);
    Lattice l = Lattice::from_rows(d.ambient, gens);
    if (l.rank() != c.size()) return false;
    if (lattice_index(l, saturate(l)) != 1) return false;
  }
  return true;
}

bool is_complete(const Fan& d) {
  if (d.ambient == 0) return true;
  std::vector<size_t> max = d.maximal_cones();
  if (max.empty()) return false;
  for (size_t i : max)
    if (d.cone_dim(i) != d.ambient) return false;
  for (size_t w : d.cones_of_dim(d.ambient - 1)) {
    int bound = 0;
    for (size_t i : d.cones_of_dim(d.ambient))
      if (d.cone_polys[i].contains(d.cone_polys[w])) ++bound;
    if (bound != 2) return false;
  }
  return true;
}

bool in_relint(const Polyhedron& p, const QVec& x) {
  if (!p.contains(x)) return false;
  for (const auto& c : p.ineqs())
    if (dot(c.a, x) == c.b) return false;
  return true;
}

bool covers(const Polyhedron& target, const std::vector<Polyhedron>& pieces) {
  if (target.is_empty()) return true;
  int d = target.dim();
  std::vector<Polyhedron> residue = {target};
  for (const auto& c : pieces) {
    if (c.dim() < d) continue;
    std::vector<Polyhedron> next;
    for (const auto& p : residue) {
      if (c.contains(p)) continue;
      // keep the closed parts of p outside one constraint of c each
      for (const auto& con : c.ineqs()) {
        QVec na = con.a;
        for (Rat& v : na) v = -v;
        Polyhedron q = intersect(p, Polyhedron(p.ambient(), {Constraint{na, -con.b}}, {}));
        if (!q.is_empty() && q.dim() == d) next.push_back(q);
      }
      auto flip_eq = [&](QVec a, Rat b) {
        Polyhedron q = intersect(p, Polyhedron(p.ambient(), {Constraint{a, b}}, {}));
        if (!q.is_empty() && q.dim() == d) next.push_back(q);
      };
      for (const auto& con : c.eqs()) {
        QVec na = con.a;
        for (Rat& v : na) v = -v;
        flip_eq(con.a, con.b);
        flip_eq(na, -con.b);
      }
    }
    residue = std::move(next);
    if (residue.empty()) return true;
  }
  return residue.empty();
}

std::optional<std::pair<size_t, size_t>> compatibility_violation(
    const Fan& d, const std::vector<Polyhedron>& pp) {
  for (size_t j = 0; j < pp.size(); ++j) {
    Polyhedron rho = recession_cone(pp[j]);
    for (size_t i = 0; i < d.size(); ++i) {
      const Polyhedron& sigma = d.cone_polys[i];
      if (rho.contains(sigma)) continue;
      Polyhedron meet = intersect(sigma, rho);
      if (meet.is_empty()) continue;
      if (in_relint(sigma, relative_interior_point(meet))) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

bool is_compatible(const Fan& d, const std::vector<Polyhedron>& pp) {
  return !compatibility_violation(d, pp).has_value();
}

bool is_compactifying(const Fan& d, const std::vector<Polyhedron>& pp) {
  for (const auto& p : pp) {
    Polyhedron rho = recession_cone(p);
    std::vector<Polyhedron> inside;
    for (const auto& c : d.cone_polys)
      if (rho.contains(c)) inside.push_back(c);
    if (!covers(rho, inside)) return false;
  }
  return true;
}

std::vector<Polyhedron> delta_decomposition(const std::vector<Polyhedron>& pp, const Fan& d) {
  if (!is_compactifying(d, pp)) throw FanError("fan is not compactifying for the collection");
  std::vector<size_t> max = d.maximal_cones();
  std::vector<Polyhedron> out;
  for (const auto& p : pp) {
    std::vector<Polyhedron> pieces;
    for (size_t i : max) {
      Polyhedron q = intersect(p, d.cone_polys[i]);
      if (!q.is_empty()) pieces.push_back(q);
    }
    if (!covers(p, pieces)) throw FanError("fan cones do not cover a member of the collection");
    std::sort(pieces.begin(), pieces.end());
    pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
    for (size_t i = 0; i < pieces.size(); ++i) {
      bool redundant = false;
      for (size_t j = 0; j < pieces.size() && !redundant; ++j)
        if (i != j && !(pieces[j] == pieces[i]) && pieces[j].contains(pieces[i])) redundant = true;
      if (!redundant) out.push_back(pieces[i]);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Polyhedron> delta_thickening(const std::vector<Polyhedron>& pp, const Fan& d,
                                         const Rat& eps) {
  if (eps <= 0) throw FanError("thickening requires positive eps");
  std::vector<Polyhedron> out;
  for (const auto& p : delta_decomposition(pp, d)) out.push_back(thicken(p, eps));
  return out;
}

QuotientFrame stratum_frame(const Fan& d, size_t tau) {
  if (tau >= d.size()) throw FanError("cone index out of range");
  return quotient_frame(d.ambient, d.cone_polys[tau].direction_space());
}

Fan star_fan_quotient(const Fan& d, size_t tau) {
  QuotientFrame f = stratum_frame(d, tau);
  std::vector<Polyhedron> imgs;
  for (size_t i = 0; i < d.size(); ++i) {
    if (!d.cone_polys[i].contains(d.cone_polys[tau])) continue;
    imgs.push_back(project(d.cone_polys[i], f));
  }
  return fan_from_cones(f.quotient, imgs);
}

std::vector<Polyhedron> star_fan_ambient(const Fan& d, size_t tau) {
  QuotientFrame f = stratum_frame(d, tau);
  std::vector<Polyhedron> cs;
  for (size_t i = 0; i < d.size(); ++i) {
    if (!d.cone_polys[i].contains(d.cone_polys[tau])) continue;
    cs.push_back(preimage(project(d.cone_polys[i], f), f));
  }
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  return cs;
}

std::pair<size_t, QVec> limit_point(const QVec& x, const QVec& v, const Fan& d) {
  if (is_zero(v)) return {d.index_of({}), x};
  for (size_t i = 0; i < d.size(); ++i) {
    if (!in_relint(d.cone_polys[i], v)) continue;
    QuotientFrame f = stratum_frame(d, i);
    return {i, f.project(x)};
  }
  throw FanError("direction lies outside the fan support");
}

Cycle boundary_cycle(const Cycle& s0, size_t tau, const Fan& d) {
  if (tau >= d.size()) throw FanError("cone index out of range");
  QuotientFrame frame = stratum_frame(d, tau);
  int dt = d.cone_dim(tau);
  // The predicate concerns the recession cones of the given cells;
  // refining first could split them and fail spuriously.
  std::vector<Polyhedron> cellpolys;
  for (const auto& c : s0.cells) cellpolys.push_back(c.poly);
  if (auto viol = compatibility_violation(d, cellpolys))
    throw FanError("fan is not compatible with the cycle");
  Cycle s = refine(s0);
  const Polyhedron& taup = d.cone_polys[tau];

  std::vector<size_t> max = d.maximal_cones();
  std::map<Polyhedron, Int> acc;
  for (const auto& c : s.cells) {
    std::vector<Polyhedron> pieces;
    for (size_t i : max) {
      Polyhedron q = intersect(c.poly, d.cone_polys[i]);
      if (q.is_empty() || q.dim() != s.dim) continue;
      pieces.push_back(q);
    }
    std::sort(pieces.begin(), pieces.end());
    pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
    for (const auto& q : pieces) {
      if (!recession_cone(q).contains(taup)) continue;
      Polyhedron img = project(q, frame);
      if (img.dim() != s.dim - dt)
        throw FanError("projected cell has unexpected dimension");
      // distinct pieces project onto distinct cells; a repeated image can
      // only come from the same region reached through two fan cones
      acc.emplace(img, c.weight);
    }
  }
  std::vector<Cell> cells;
  for (auto& [p, w] : acc) cells.push_back(Cell{p, w});
  return make_cycle(frame.quotient, s.dim - dt, std::move(cells));
}

Cycle compactified_stable_intersect(const Cycle& gamma, const Cycle& s, size_t tau, const Fan& d,
                                    uint64_t seed) {
  Cycle b = boundary_cycle(s, tau, d);
  if (gamma.ambient != b.ambient) throw FanError("stratum frame mismatch");
  return stable_intersect(gamma, b, seed);
}

std::pair<Int, Int> recession_degree_check(const Cycle& gamma, const Cycle& s, size_t tau,
                                           const Fan& d, uint64_t seed) {
  Int a = degree(compactified_stable_intersect(gamma, s, tau, d, seed));
  Int b = degree(compactified_stable_intersect(gamma, recession_fan_cycle(s), tau, d, seed));
  return {a, b};
}

}  // namespace trop
