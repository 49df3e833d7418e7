#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/linalg.hpp"
#include "core/lp.hpp"
#include "core/polyhedron.hpp"

using namespace trop;

static QVec qv(std::initializer_list<int> v) {
  QVec r;
  for (int x : v) r.push_back(Rat(x));
  return r;
}
static ZVec zv(std::initializer_list<int> v) {
  ZVec r;
  for (int x : v) r.push_back(Int(x));
  return r;
}

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rat("3/4") == Rat(3, 4));
  CHECK(parse_rat("-2") == Rat(-2));
  CHECK(parse_rat("-1.25") == Rat(-5, 4));
  CHECK(rat_str(Rat(6, 4)) == "3/2");
  CHECK(rat_str(Rat(-3)) == "-3");
  CHECK_THROWS(parse_rat("1/0"));
  CHECK_THROWS(parse_rat("abc"));
}

TEST_CASE("hnf basics") {
  ZMat I = {zv({1, 0}), zv({0, 1})};
  CHECK(hnf(I) == I);

  ZMat M = {zv({1, 1}), zv({1, -1})};
  ZMat U, Uinv;
  ZMat H = hnf(M, &U, &Uinv);
  CHECK(mat_mul(U, M) == H);
  CHECK(mat_mul(U, Uinv) == ZMat{zv({1, 0}), zv({0, 1})});
  CHECK(H == ZMat{zv({1, 1}), zv({0, 2})});
  Int d = z_det(H);
  CHECK(abs(d) == 2);
  CHECK(hnf(H) == H);
}

TEST_CASE("lattice index") {
  Lattice Z2 = Lattice::standard(2);
  CHECK(lattice_index(Z2, Z2) == 1);
  Lattice L1 = Lattice::from_rows(2, {zv({2, 0}), zv({0, 3})});
  CHECK(lattice_index(L1, Z2) == 6);
  Lattice L2 = Lattice::from_rows(2, {zv({1, 1}), zv({1, -1})});
  CHECK(lattice_index(L2, Z2) == 2);
  Lattice L3 = Lattice::from_rows(2, {zv({1, 0})});
  CHECK_THROWS_AS(lattice_index(L3, Z2), LatticeError);
}

TEST_CASE("primitive generators") {
  CHECK(primitive_generator(qv({2, 4})) == zv({1, 2}));
  QVec half = {Rat(1, 2), Rat(3, 2)};
  CHECK(primitive_generator(half) == zv({1, 3}));
  CHECK(primitive_generator(qv({0, -6})) == zv({0, -1}));
}

TEST_CASE("saturation") {
  Lattice L = Lattice::from_rows(2, {zv({2, 2}), zv({0, 4})});
  Lattice S = saturate(L);
  CHECK(S.basis == ZMat{zv({1, 0}), zv({0, 1})});
  CHECK(lattice_index(L, S) == 8);

  ZMat full = saturate_rows({zv({3, 0}), zv({0, 7})});
  CHECK(full == ZMat{zv({1, 0}), zv({0, 1})});
}

TEST_CASE("integer kernel is saturated") {
  ZMat A = {zv({1, 1, 2})};
  ZMat K = z_kernel(A);
  CHECK(K.size() == 2);
  for (const ZVec& k : K) CHECK(k[0] + k[1] + 2 * k[2] == 0);
  CHECK(saturate_rows(K) == hnf_basis(K));
}

TEST_CASE("quotient frame round trips") {
  QMat span = {qv({1, 1, 0})};
  QuotientFrame f = quotient_frame(3, span);
  CHECK(f.quotient == 2);
  // collapsed direction maps to zero
  CHECK(f.project(qv({1, 1, 0})) == qv({0, 0}));
  // project after unproject is the identity
  QVec y = {Rat(3), Rat(-5)};
  CHECK(f.project(f.unproject(y)) == y);
  // unproject then project differs from the input by something in the span
  QVec x = qv({2, 7, -1});
  QVec diff = sub(f.unproject(f.project(x)), x);
  CHECK(diff[0] == diff[1]);
  CHECK(diff[2] == 0);
}

TEST_CASE("project lattice") {
  QuotientFrame f = quotient_frame(2, {qv({1, 1})});
  Lattice L = Lattice::from_rows(2, {zv({2, 0})});
  Lattice P = project_lattice(L, f);
  CHECK(P.rank() == 1);
  // image of (2,0) generates index-2 sublattice of the quotient
  CHECK(lattice_index(P, Lattice::standard(1)) == 2);
}

TEST_CASE("lp basics") {
  // min x+y st x>=1, y>=2
  QMat A = {qv({1, 0}), qv({0, 1})};
  QVec b = {Rat(1), Rat(2)};
  LpResult r = lp_minimize(qv({1, 1}), A, b, {}, {});
  CHECK(r.status == LpStatus::Optimal);
  CHECK(r.value == 3);

  r = lp_minimize(qv({-1, 0}), A, b, {}, {});
  CHECK(r.status == LpStatus::Unbounded);

  QMat A2 = {qv({1, 0}), qv({-1, 0})};
  QVec b2 = {Rat(1), Rat(0)};
  CHECK_FALSE(lp_feasible(A2, b2, {}, {}));

  // equality constraint with fractional optimum
  r = lp_minimize(qv({1, 0}), {qv({1, -1})}, {Rat(0)}, {qv({1, 1})}, {Rat(1)});
  CHECK(r.status == LpStatus::Optimal);
  CHECK(r.value == Rat(1, 2));
}

static Polyhedron box2() {
  // unit square
  std::vector<Constraint> in = {
      {qv({1, 0}), Rat(0)}, {qv({0, 1}), Rat(0)}, {qv({-1, 0}), Rat(-1)}, {qv({0, -1}), Rat(-1)}};
  return Polyhedron(2, in, {});
}

TEST_CASE("polyhedron canonicalization") {
  Polyhedron p = box2();
  CHECK(p.dim() == 2);
  CHECK(p.ineqs().size() == 4);
  CHECK(p.eqs().empty());

  // redundant constraint dropped
  std::vector<Constraint> in = box2().ineqs();
  in.push_back({qv({1, 1}), Rat(-5)});
  CHECK(Polyhedron(2, in, {}) == p);

  // implicit equality promoted
  in = {{qv({1, 0}), Rat(0)}, {qv({-1, 0}), Rat(0)}, {qv({0, 1}), Rat(0)}};
  Polyhedron line = Polyhedron(2, in, {});
  CHECK(line.dim() == 1);
  CHECK(line.eqs().size() == 1);
  CHECK(line.ineqs().size() == 1);

  // infeasible
  in = {{qv({1, 0}), Rat(1)}, {qv({-1, 0}), Rat(0)}};
  CHECK(Polyhedron(2, in, {}).is_empty());
  CHECK(Polyhedron::empty(2).is_empty());
}

TEST_CASE("polyhedron faces") {
  Polyhedron p = box2();
  CHECK(faces(p, 2).size() == 1);
  CHECK(faces(p, 1).size() == 4);
  CHECK(faces(p, 0).size() == 4);
  QMat vs = vertices(p);
  CHECK(vs.size() == 4);
  for (const QVec& v : vs) CHECK(p.contains(v));

  QVec c = relative_interior_point(p);
  CHECK(p.contains(c));
  CHECK(c[0] > 0);
  CHECK(c[0] < 1);
}

TEST_CASE("recession cone and thicken") {
  // half strip x>=0, 0<=y<=1
  std::vector<Constraint> in = {{qv({1, 0}), Rat(0)}, {qv({0, 1}), Rat(0)}, {qv({0, -1}), Rat(-1)}};
  Polyhedron strip(2, in, {});
  Polyhedron rc = recession_cone(strip);
  CHECK(rc.contains(qv({1, 0})));
  CHECK_FALSE(rc.contains(qv({0, 1})));
  CHECK_FALSE(rc.contains(qv({-1, 0})));

  // thickening a point opens the implicit equalities in both directions
  Polyhedron pt = Polyhedron::point(qv({0}));
  Polyhedron th = thicken(pt, Rat(1));
  CHECK(th.dim() == 1);
  CHECK(th.contains(qv({1})));
  CHECK(th.contains(qv({-1})));
  CHECK_FALSE(th.contains(qv({2})));
}

TEST_CASE("cones from rays and back") {
  QMat rays = {qv({1, 0}), qv({1, 2})};
  Polyhedron c = Polyhedron::cone_from_rays(2, rays);
  CHECK(c.is_cone());
  CHECK(c.dim() == 2);
  CHECK(c.contains(qv({2, 2})));
  CHECK_FALSE(c.contains(qv({0, 1})));
  ZMat back = cone_rays(c);
  CHECK(back == ZMat{zv({1, 0}), zv({1, 2})});

  // zero cone
  Polyhedron z = Polyhedron::cone_from_rays(2, {});
  CHECK(z.dim() == 0);
  CHECK(cone_rays(z).empty());

  // a half-plane has lineality
  Polyhedron hp(2, {{qv({0, 1}), Rat(0)}}, {});
  CHECK_THROWS_AS(cone_rays(hp), PolyhedronError);
}

TEST_CASE("projection and preimage") {
  QuotientFrame f = quotient_frame(2, {qv({0, 1})});
  Polyhedron p = box2();
  Polyhedron q = project(p, f);
  CHECK(q.ambient() == 1);
  CHECK(q.dim() == 1);
  CHECK(q.contains(qv({0})));
  CHECK(q.contains(qv({1})));
  CHECK_FALSE(q.contains(qv({2})));

  Polyhedron back = preimage(q, f);
  CHECK(back.dim() == 2);
  CHECK(back.contains(qv({0, 5})));
  CHECK_FALSE(back.contains(qv({2, 0})));
}

TEST_CASE("translate and tangent cone") {
  Polyhedron p = box2();
  Polyhedron t = translate(p, qv({3, 3}));
  CHECK(t.contains(qv({3, 3})));
  CHECK_FALSE(t.contains(qv({0, 0})));

  Polyhedron tc = tangent_cone(p, qv({0, 0}));
  CHECK(tc.is_cone());
  CHECK(tc.contains(qv({5, 5})));
  CHECK_FALSE(tc.contains(qv({-1, 0})));
  // interior point gives the whole space
  Polyhedron tc2 = tangent_cone(p, QVec{Rat(1, 2), Rat(1, 2)});
  CHECK(tc2.dim() == 2);
  CHECK(tc2.ineqs().empty());
}
