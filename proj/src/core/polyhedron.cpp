#include "core/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "core/lp.hpp"

namespace trop {

namespace {

// Scale (a, b) by a positive rational so that a is a primitive integer
// vector. Leaves a == 0 rows alone.
void normalize_row(QVec& a, Rat& b) {
  Int l = 1;
  for (const Rat& c : a) l = lcm(l, c.get_den());
  l = lcm(l, b.get_den());
  Int g = 0;
  for (const Rat& c : a) g = gcd(g, Int(c.get_num() * (l / c.get_den())));
  if (g == 0) return;
  Rat s(l, g);
  s.canonicalize();
  for (Rat& c : a) c *= s;
  b *= s;
}

// Flip sign so the first nonzero entry of a is positive (equalities only).
void normalize_eq_sign(QVec& a, Rat& b) {
  for (const Rat& c : a) {
    if (c == 0) continue;
    if (c < 0) {
      for (Rat& d : a) d = -d;
      b = -b;
    }
    return;
  }
}

ZVec to_zrow(const QVec& a) {
  ZVec z(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].get_den() != 1) throw PolyhedronError("non-integer normalized row");
    z[i] = a[i].get_num();
  }
  return z;
}

struct System {
  std::vector<Constraint> ineqs, eqs;
};

// Fourier-Motzkin / substitution elimination of variable j.
void eliminate_var(System& s, size_t j) {
  for (size_t e = 0; e < s.eqs.size(); ++e) {
    if (s.eqs[e].a[j] == 0) continue;
    Constraint piv = s.eqs[e];
    s.eqs.erase(s.eqs.begin() + e);
    auto subst = [&](Constraint& c) {
      if (c.a[j] == 0) return;
      Rat f = c.a[j] / piv.a[j];
      c.a = sub(c.a, scale(f, piv.a));
      c.b -= f * piv.b;
    };
    for (auto& c : s.ineqs) subst(c);
    for (auto& c : s.eqs) subst(c);
    return;
  }
  std::vector<Constraint> pos, neg, zero;
  for (auto& c : s.ineqs) {
    if (c.a[j] > 0)
      pos.push_back(c);
    else if (c.a[j] < 0)
      neg.push_back(c);
    else
      zero.push_back(c);
  }
  for (const auto& p : pos)
    for (const auto& n : neg) {
      // p.a[j] > 0 > n.a[j]; cancel the j entries
      Rat fp = -n.a[j], fn = p.a[j];
      Constraint c;
      c.a = add(scale(fp, p.a), scale(fn, n.a));
      c.b = fp * p.b + fn * n.b;
      zero.push_back(std::move(c));
    }
  s.ineqs = std::move(zero);
}

// Eliminate the first d variables; return the system in the remaining m.
Polyhedron eliminate_prefix(System s, size_t d, int m) {
  for (size_t j = 0; j < d; ++j) eliminate_var(s, j);
  std::vector<Constraint> in2, eq2;
  auto crop = [&](const Constraint& c) {
    Constraint r;
    r.a.assign(c.a.begin() + d, c.a.end());
    r.b = c.b;
    return r;
  };
  for (const auto& c : s.ineqs) in2.push_back(crop(c));
  for (const auto& c : s.eqs) eq2.push_back(crop(c));
  return Polyhedron(m, std::move(in2), std::move(eq2));
}

QMat ineq_lhs(const std::vector<Constraint>& cs) {
  QMat A;
  for (const auto& c : cs) A.push_back(c.a);
  return A;
}

QVec ineq_rhs(const std::vector<Constraint>& cs) {
  QVec b;
  for (const auto& c : cs) b.push_back(c.b);
  return b;
}

}  // namespace

bool constraint_less(const Constraint& x, const Constraint& y) {
  if (x.a != y.a) return qvec_less(x.a, y.a);
  return cmp(x.b, y.b) < 0;
}

Polyhedron::Polyhedron(int ambient, std::vector<Constraint> ineqs, std::vector<Constraint> eqs)
    : ambient_(ambient), ineqs_(std::move(ineqs)), eqs_(std::move(eqs)) {
  for (const auto& c : ineqs_)
    if ((int)c.a.size() != ambient_) throw PolyhedronError("constraint arity mismatch");
  for (const auto& c : eqs_)
    if ((int)c.a.size() != ambient_) throw PolyhedronError("constraint arity mismatch");
  canonicalize();
}

Polyhedron Polyhedron::full_space(int ambient) { return Polyhedron(ambient, {}, {}); }

Polyhedron Polyhedron::empty(int ambient) {
  QVec zero(ambient, Rat(0));
  return Polyhedron(ambient, {Constraint{zero, Rat(1)}}, {});
}

Polyhedron Polyhedron::point(const QVec& x) {
  std::vector<Constraint> eqs;
  for (size_t i = 0; i < x.size(); ++i) {
    QVec a(x.size(), Rat(0));
    a[i] = 1;
    eqs.push_back(Constraint{a, x[i]});
  }
  return Polyhedron((int)x.size(), {}, std::move(eqs));
}

Polyhedron Polyhedron::cone_from_rays(int ambient, const QMat& rays) {
  size_t r = rays.size();
  if (r == 0) return point(QVec(ambient, Rat(0)));
  // variables (lambda_1..lambda_r, x_1..x_n); eliminate the lambdas
  System s;
  for (size_t j = 0; j < r; ++j) {
    QVec a(r + ambient, Rat(0));
    a[j] = 1;
    s.ineqs.push_back(Constraint{a, Rat(0)});
  }
  for (int i = 0; i < ambient; ++i) {
    QVec a(r + ambient, Rat(0));
    for (size_t j = 0; j < r; ++j) a[j] = rays[j][i];
    a[r + i] = -1;
    s.eqs.push_back(Constraint{a, Rat(0)});
  }
  return eliminate_prefix(std::move(s), r, ambient);
}

void Polyhedron::canonicalize() {
  // normalize, drop trivial rows, catch trivially false ones
  std::vector<Constraint> in2;
  for (auto& c : ineqs_) {
    normalize_row(c.a, c.b);
    if (is_zero(c.a)) {
      if (c.b > 0) {
        dim_ = -1;
        ineqs_.clear();
        eqs_.clear();
        return;
      }
      continue;
    }
    in2.push_back(std::move(c));
  }
  ineqs_ = std::move(in2);
  std::sort(ineqs_.begin(), ineqs_.end(), constraint_less);
  ineqs_.erase(std::unique(ineqs_.begin(), ineqs_.end()), ineqs_.end());

  if (!lp_feasible(ineq_lhs(ineqs_), ineq_rhs(ineqs_), ineq_lhs(eqs_), ineq_rhs(eqs_))) {
    dim_ = -1;
    ineqs_.clear();
    eqs_.clear();
    return;
  }

  // implicit equalities: an inequality whose maximum over the set equals
  // its bound holds with equality everywhere
  std::vector<Constraint> strict;
  for (const auto& c : ineqs_) {
    LpResult r = lp_maximize(c.a, ineq_lhs(ineqs_), ineq_rhs(ineqs_), ineq_lhs(eqs_), ineq_rhs(eqs_));
    if (r.status == LpStatus::Optimal && r.value == c.b)
      eqs_.push_back(c);
    else
      strict.push_back(c);
  }
  ineqs_ = std::move(strict);

  // canonical equality system via reduced row echelon of [A | b]
  QMat ab;
  for (const auto& c : eqs_) {
    QVec row = c.a;
    row.push_back(c.b);
    ab.push_back(std::move(row));
  }
  std::vector<size_t> pivots = rref(ab);
  eqs_.clear();
  for (size_t i = 0; i < pivots.size(); ++i) {
    Constraint c;
    c.a.assign(ab[i].begin(), ab[i].end() - 1);
    c.b = ab[i].back();
    normalize_row(c.a, c.b);
    normalize_eq_sign(c.a, c.b);
    eqs_.push_back(std::move(c));
  }
  dim_ = ambient_ - (int)eqs_.size();

  // reduce inequality normals modulo the equality rowspace
  for (auto& c : ineqs_) {
    for (size_t i = 0; i < pivots.size(); ++i) {
      size_t p = pivots[i];
      if (c.a[p] == 0) continue;
      Rat f = c.a[p] / eqs_[i].a[p];
      c.a = sub(c.a, scale(f, eqs_[i].a));
      c.b -= f * eqs_[i].b;
    }
    normalize_row(c.a, c.b);
  }
  in2.clear();
  for (auto& c : ineqs_)
    if (!is_zero(c.a)) in2.push_back(std::move(c));
  ineqs_ = std::move(in2);
  std::sort(ineqs_.begin(), ineqs_.end(), constraint_less);
  ineqs_.erase(std::unique(ineqs_.begin(), ineqs_.end()), ineqs_.end());

  // irredundancy: drop any inequality implied by the rest
  for (size_t i = 0; i < ineqs_.size();) {
    std::vector<Constraint> rest;
    for (size_t j = 0; j < ineqs_.size(); ++j)
      if (j != i) rest.push_back(ineqs_[j]);
    LpResult r = lp_minimize(ineqs_[i].a, ineq_lhs(rest), ineq_rhs(rest), ineq_lhs(eqs_), ineq_rhs(eqs_));
    if (r.status == LpStatus::Optimal && r.value >= ineqs_[i].b)
      ineqs_.erase(ineqs_.begin() + i);
    else
      ++i;
  }
}

bool Polyhedron::is_cone() const {
  if (is_empty()) return false;
  for (const auto& c : ineqs_)
    if (c.b != 0) return false;
  for (const auto& c : eqs_)
    if (c.b != 0) return false;
  return true;
}

bool Polyhedron::contains(const QVec& x) const {
  if (is_empty()) return false;
  for (const auto& c : ineqs_)
    if (dot(c.a, x) < c.b) return false;
  for (const auto& c : eqs_)
    if (dot(c.a, x) != c.b) return false;
  return true;
}

bool Polyhedron::contains(const Polyhedron& other) const {
  if (other.is_empty()) return true;
  if (is_empty()) return false;
  auto holds_min = [&](const QVec& a, const Rat& b) {
    LpResult r = lp_minimize(a, ineq_lhs(other.ineqs_), ineq_rhs(other.ineqs_),
                             ineq_lhs(other.eqs_), ineq_rhs(other.eqs_));
    return r.status == LpStatus::Optimal && r.value >= b;
  };
  for (const auto& c : ineqs_)
    if (!holds_min(c.a, c.b)) return false;
  for (const auto& c : eqs_) {
    if (!holds_min(c.a, c.b)) return false;
    QVec na = c.a;
    for (Rat& v : na) v = -v;
    if (!holds_min(na, -c.b)) return false;
  }
  return true;
}

bool Polyhedron::operator==(const Polyhedron& o) const {
  return ambient_ == o.ambient_ && dim_ == o.dim_ && ineqs_ == o.ineqs_ && eqs_ == o.eqs_;
}

bool Polyhedron::operator<(const Polyhedron& o) const {
  if (ambient_ != o.ambient_) return ambient_ < o.ambient_;
  if (dim_ != o.dim_) return dim_ < o.dim_;
  auto list_less = [](const std::vector<Constraint>& x, const std::vector<Constraint>& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), constraint_less);
  };
  if (eqs_ != o.eqs_) return list_less(eqs_, o.eqs_);
  if (ineqs_ != o.ineqs_) return list_less(ineqs_, o.ineqs_);
  return false;
}

Lattice Polyhedron::direction_lattice() const {
  ZMat A;
  for (const auto& c : eqs_) A.push_back(to_zrow(c.a));
  if (A.empty()) return Lattice::standard(ambient_);
  return Lattice{ambient_, z_kernel(A)};
}

QMat Polyhedron::direction_space() const {
  QMat out;
  for (const ZVec& r : direction_lattice().basis) {
    QVec q(r.size());
    for (size_t i = 0; i < r.size(); ++i) q[i] = r[i];
    out.push_back(std::move(q));
  }
  return out;
}

std::string Polyhedron::key() const {
  std::ostringstream os;
  os << "d" << dim_ << "/a" << ambient_;
  auto put = [&](const char* tag, const std::vector<Constraint>& cs) {
    for (const auto& c : cs) os << tag << qvec_str(c.a) << ">=" << rat_str(c.b);
  };
  put(";e:", eqs_);
  put(";i:", ineqs_);
  return os.str();
}

Polyhedron intersect(const Polyhedron& p, const Polyhedron& q) {
  if (p.ambient() != q.ambient()) throw PolyhedronError("ambient mismatch in intersect");
  if (p.is_empty()) return p;
  if (q.is_empty()) return q;
  std::vector<Constraint> in = p.ineqs(), eq = p.eqs();
  in.insert(in.end(), q.ineqs().begin(), q.ineqs().end());
  eq.insert(eq.end(), q.eqs().begin(), q.eqs().end());
  return Polyhedron(p.ambient(), std::move(in), std::move(eq));
}

Polyhedron recession_cone(const Polyhedron& p) {
  if (p.is_empty()) return p;
  std::vector<Constraint> in = p.ineqs(), eq = p.eqs();
  for (auto& c : in) c.b = 0;
  for (auto& c : eq) c.b = 0;
  return Polyhedron(p.ambient(), std::move(in), std::move(eq));
}

Polyhedron thicken(const Polyhedron& p, const Rat& eps) {
  if (p.is_empty()) return p;
  std::vector<Constraint> in = p.ineqs();
  for (auto& c : in) c.b -= eps;
  for (const auto& c : p.eqs()) {
    in.push_back(Constraint{c.a, c.b - eps});
    QVec na = c.a;
    for (Rat& v : na) v = -v;
    in.push_back(Constraint{na, -c.b - eps});
  }
  return Polyhedron(p.ambient(), std::move(in), {});
}

std::vector<Polyhedron> facets(const Polyhedron& p) {
  std::vector<Polyhedron> out;
  for (const auto& c : p.ineqs()) {
    std::vector<Constraint> eq = p.eqs();
    eq.push_back(c);
    out.push_back(Polyhedron(p.ambient(), p.ineqs(), std::move(eq)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Polyhedron> faces(const Polyhedron& p, int k) {
  if (p.is_empty() || k > p.dim() || k < 0) return {};
  if (k == p.dim()) return {p};
  std::vector<Polyhedron> out;
  for (const Polyhedron& f : facets(p)) {
    std::vector<Polyhedron> sub = faces(f, k);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

QVec relative_interior_point(const Polyhedron& p) {
  if (p.is_empty()) throw PolyhedronError("relative interior of empty set");
  int n = p.ambient();
  // variables (x, t): maximize t with a.x - t >= b for each inequality,
  // t <= 1; canonical form makes the optimum strictly positive
  QMat A;
  QVec b;
  for (const auto& c : p.ineqs()) {
    QVec row = c.a;
    row.push_back(Rat(-1));
    A.push_back(std::move(row));
    b.push_back(c.b);
  }
  QVec cap(n + 1, Rat(0));
  cap[n] = -1;
  A.push_back(cap);
  b.push_back(Rat(-1));
  QMat E;
  QVec f;
  for (const auto& c : p.eqs()) {
    QVec row = c.a;
    row.push_back(Rat(0));
    E.push_back(std::move(row));
    f.push_back(c.b);
  }
  QVec obj(n + 1, Rat(0));
  obj[n] = 1;
  LpResult r = lp_maximize(obj, A, b, E, f);
  if (r.status != LpStatus::Optimal || r.value <= 0)
    throw PolyhedronError("relative interior point search failed");
  return QVec(r.x.begin(), r.x.begin() + n);
}

Polyhedron project(const Polyhedron& p, const QuotientFrame& frame) {
  if (p.ambient() != frame.ambient) throw PolyhedronError("frame ambient mismatch");
  if (p.is_empty()) return Polyhedron::empty(frame.quotient);
  size_t d = frame.tau_basis.size();
  // parametrize x = u * tau_basis + y * lift and eliminate u
  System s;
  auto convert = [&](const Constraint& c) {
    Constraint r;
    r.a.resize(d + frame.quotient);
    for (size_t i = 0; i < d; ++i) {
      Rat v = 0;
      for (int j = 0; j < frame.ambient; ++j) v += Rat(frame.tau_basis[i][j]) * c.a[j];
      r.a[i] = v;
    }
    for (int i = 0; i < frame.quotient; ++i) {
      Rat v = 0;
      for (int j = 0; j < frame.ambient; ++j) v += Rat(frame.lift[i][j]) * c.a[j];
      r.a[d + i] = v;
    }
    r.b = c.b;
    return r;
  };
  for (const auto& c : p.ineqs()) s.ineqs.push_back(convert(c));
  for (const auto& c : p.eqs()) s.eqs.push_back(convert(c));
  return eliminate_prefix(std::move(s), d, frame.quotient);
}

Polyhedron preimage(const Polyhedron& p, const QuotientFrame& frame) {
  if (p.ambient() != frame.quotient) throw PolyhedronError("frame quotient mismatch");
  if (p.is_empty()) return Polyhedron::empty(frame.ambient);
  auto pull = [&](const Constraint& c) {
    Constraint r;
    r.a.resize(frame.ambient);
    for (int i = 0; i < frame.ambient; ++i) {
      Rat v = 0;
      for (int j = 0; j < frame.quotient; ++j) v += Rat(frame.proj[i][j]) * c.a[j];
      r.a[i] = v;
    }
    r.b = c.b;
    return r;
  };
  std::vector<Constraint> in, eq;
  for (const auto& c : p.ineqs()) in.push_back(pull(c));
  for (const auto& c : p.eqs()) eq.push_back(pull(c));
  return Polyhedron(frame.ambient, std::move(in), std::move(eq));
}

Polyhedron translate(const Polyhedron& p, const QVec& t) {
  if (p.is_empty()) return p;
  std::vector<Constraint> in = p.ineqs(), eq = p.eqs();
  for (auto& c : in) c.b += dot(c.a, t);
  for (auto& c : eq) c.b += dot(c.a, t);
  return Polyhedron(p.ambient(), std::move(in), std::move(eq));
}

Polyhedron tangent_cone(const Polyhedron& p, const QVec& x) {
  if (!p.contains(x)) throw PolyhedronError("tangent cone base point outside set");
  std::vector<Constraint> in, eq;
  for (const auto& c : p.ineqs())
    if (dot(c.a, x) == c.b) in.push_back(Constraint{c.a, Rat(0)});
  for (const auto& c : p.eqs()) eq.push_back(Constraint{c.a, Rat(0)});
  return Polyhedron(p.ambient(), std::move(in), std::move(eq));
}

QVec single_point(const Polyhedron& p) {
  if (p.dim() != 0) throw PolyhedronError("not a single point");
  QMat A;
  QVec b;
  for (const auto& c : p.eqs()) {
    A.push_back(c.a);
    b.push_back(c.b);
  }
  auto x = q_solve(A, b);
  if (!x) throw PolyhedronError("inconsistent point system");
  return *x;
}

QMat vertices(const Polyhedron& p) {
  QMat out;
  for (const Polyhedron& f : faces(p, 0)) out.push_back(single_point(f));
  return out;
}

ZMat cone_rays(const Polyhedron& cone) {
  if (cone.is_empty() || !cone.is_cone()) throw PolyhedronError("not a cone");
  QMat eqsys;
  for (const auto& c : cone.ineqs()) eqsys.push_back(c.a);
  for (const auto& c : cone.eqs()) eqsys.push_back(c.a);
  size_t lineality = eqsys.empty() ? cone.ambient() : q_kernel(eqsys).size();
  if (lineality > 0) throw PolyhedronError("cone has nontrivial lineality");
  ZMat out;
  for (const Polyhedron& f : faces(cone, 1))
    out.push_back(primitive_generator(relative_interior_point(f)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace trop
