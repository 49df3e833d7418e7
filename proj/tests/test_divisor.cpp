#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/divisor.hpp"

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

static Fan p2_fan() {
  return make_fan(2, {zv({1, 0}), zv({0, 1}), zv({-1, -1})},
                  {{}, {0}, {1}, {2}, {0, 1}, {1, 2}, {2, 0}});
}

static Fan quadrant_fan() {
  return make_fan(2, {zv({1, 0}), zv({0, 1}), zv({-1, 0}), zv({0, -1})},
                  {{}, {0}, {1}, {2}, {3}, {0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

static bool same_fan(const Fan& a, const Fan& b) {
  if (a.ambient != b.ambient || a.size() != b.size()) return false;
  std::vector<Polyhedron> pa = a.cone_polys, pb = b.cone_polys;
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  return pa == pb;
}

static Polyhedron ray_from(const QVec& x, const QVec& dvec) {
  return translate(Polyhedron::cone_from_rays((int)x.size(), {dvec}), x);
}

// min-plus tropical line: rays e1, e2, -e1-e2
static Cycle std_line(const QVec& x) {
  return make_cycle(2, 1, {{ray_from(x, qv({1, 0})), 1},
                           {ray_from(x, qv({0, 1})), 1},
                           {ray_from(x, qv({-1, -1})), 1}});
}

TEST_CASE("principal and Cartier divisors") {
  Fan p2 = p2_fan();
  ToricDivisor dv = principal_divisor(zv({1, 0}), p2);
  CHECK(dv.coeffs == std::vector<Int>{Int(1), Int(0), Int(-1)});
  auto cert = is_cartier(dv);
  REQUIRE(cert.has_value());
  for (const auto& [idx, m] : *cert) CHECK(m == zv({-1, 0}));

  // every divisor on a unimodular fan is Cartier
  auto c2 = is_cartier(make_divisor(p2, {Int(5), Int(-3), Int(7)}));
  CHECK(c2.has_value());

  // non-unimodular cone: integral solvability can fail
  Fan bad = make_fan(2, {zv({1, 0}), zv({1, 2})}, {{}, {0}, {1}, {0, 1}});
  CHECK_FALSE(is_cartier(make_divisor(bad, {Int(1), Int(0)})).has_value());
  CHECK(is_cartier(make_divisor(bad, {Int(2), Int(0)})).has_value());
}

TEST_CASE("ampleness and the divisor polytope") {
  Fan p2 = p2_fan();
  CHECK(is_ample(make_divisor(p2, {Int(1), Int(0), Int(0)})));
  CHECK(is_ample(make_divisor(p2, {Int(1), Int(1), Int(1)})));
  CHECK_FALSE(is_ample(make_divisor(p2, {Int(0), Int(0), Int(0)})));

  Polyhedron pd = divisor_polytope(make_divisor(p2, {Int(1), Int(1), Int(1)}));
  QMat vs = vertices(pd);
  std::sort(vs.begin(), vs.end(), qvec_less);
  REQUIRE(vs.size() == 3);
  CHECK(vs[0] == qv({-1, -1}));
  CHECK(vs[1] == qv({-1, 2}));
  CHECK(vs[2] == qv({2, -1}));

  // zero divisor on a complete fan cuts out the origin
  Polyhedron z = divisor_polytope(make_divisor(p2, {Int(0), Int(0), Int(0)}));
  CHECK(z.dim() == 0);
  CHECK(z.contains(qv({0, 0})));
}

TEST_CASE("normal fans and the ample round trip") {
  Polyhedron square(2, {{qv({1, 0}), Rat(0)}, {qv({0, 1}), Rat(0)}, {qv({-1, 0}), Rat(-1)},
                        {qv({0, -1}), Rat(-1)}},
                    {});
  CHECK(same_fan(normal_fan(square), quadrant_fan()));

  Polyhedron tri(2, {{qv({1, 0}), Rat(0)}, {qv({0, 1}), Rat(0)}, {qv({-1, -1}), Rat(-1)}}, {});
  CHECK(same_fan(normal_fan(tri), p2_fan()));

  Fan p2 = p2_fan();
  ToricDivisor dv = make_divisor(p2, {Int(1), Int(1), Int(1)});
  CHECK(same_fan(normal_fan(divisor_polytope(dv)), p2));

  CHECK_THROWS_AS(normal_fan(Polyhedron::cone_from_rays(2, {qv({1, 0}), qv({0, 1})})),
                  DivisorError);
}

TEST_CASE("tropical hypersurfaces") {
  TropicalPolynomial line =
      make_polynomial(2, {{zv({1, 0}), Rat(0)}, {zv({0, 1}), Rat(0)}, {zv({0, 0}), Rat(0)}});
  Cycle h = tropical_hypersurface(line);
  CHECK(cycle_equal(h, std_line(qv({0, 0}))));

  for (int n = 2; n <= 4; ++n) {
    TropicalPolynomial f =
        make_polynomial(2, {{zv({n, 0}), Rat(0)}, {zv({0, 1}), Rat(0)}, {zv({0, 0}), Rat(0)}});
    Cycle c = tropical_hypersurface(f);
    CHECK(balancing_check(c).empty());
    // weights 1, n, 1 on the rays (1,0), (0,1), (-1,-n)
    Cycle expect = make_cycle(
        2, 1, {{ray_from(qv({0, 0}), qv({1, 0})), 1}, {ray_from(qv({0, 0}), qv({0, 1})), n},
               {ray_from(qv({0, 0}), qv({-1, -n})), 1}});
    CHECK(cycle_equal(c, expect));
    CHECK(degree(stable_intersect(c, c)) == n);
  }

  CHECK_THROWS_AS(tropical_hypersurface(make_polynomial(2, {{zv({1, 1}), Rat(3)}})),
                  DivisorError);
}

TEST_CASE("conic with vertices off the origin") {
  TropicalPolynomial f = make_polynomial(
      2, {{zv({2, 0}), Rat(1)}, {zv({1, 1}), Rat(0)}, {zv({0, 2}), Rat(1)},
          {zv({1, 0}), Rat(0)}, {zv({0, 1}), Rat(0)}, {zv({0, 0}), Rat(1)}});
  Cycle c = tropical_hypersurface(f);
  CHECK(balancing_check(c).empty());
  for (const auto& cell : c.cells) CHECK(cell.weight == 1);
  for (auto v : {qv({0, 0}), qv({1, 1}), qv({0, -1}), qv({-1, 0})}) CHECK(c.supports(v));
  // two rays in each of the directions (1,0), (0,1), (-1,-1)
  Cycle rec = recession_fan_cycle(c);
  MinkowskiWeight mw = mw_from_cycle(c, p2_fan());
  for (const auto& [idx, w] : mw.values) CHECK(w == 2);
  CHECK(degree(stable_intersect(c, c)) == 4);
}

TEST_CASE("Minkowski weights") {
  Fan p2 = p2_fan();
  auto ray_values = [&](const Fan& d, int w) {
    std::map<size_t, Int> m;
    for (size_t idx : d.cones_of_dim(1)) m[idx] = w;
    return m;
  };
  MinkowskiWeight l1 = make_minkowski_weight(p2, 1, ray_values(p2, 1));
  MinkowskiWeight line_from_cycle = mw_from_cycle(std_line(qv({3, -2})), p2);
  CHECK(l1.values == line_from_cycle.values);

  // unbalanced data is rejected
  std::map<size_t, Int> badv = ray_values(p2, 1);
  badv[p2.index_of({0})] = 2;
  CHECK_THROWS_AS(make_minkowski_weight(p2, 1, badv), DivisorError);

  CHECK(mw_degree(mw_product(l1, l1)) == 1);
  for (int dd = 1; dd <= 3; ++dd)
    for (int e = 1; e <= 3; ++e) {
      MinkowskiWeight a = make_minkowski_weight(p2, 1, ray_values(p2, dd));
      MinkowskiWeight b = make_minkowski_weight(p2, 1, ray_values(p2, e));
      CHECK(mw_degree(mw_product(a, b)) == dd * e);
      CHECK(degree_pairing_check(a, b, {}) == dd * e);
    }

  // identity of the ring: the all-ones codim-0 weight
  std::map<size_t, Int> ones;
  for (size_t idx : p2.cones_of_dim(2)) ones[idx] = 1;
  MinkowskiWeight fund = make_minkowski_weight(p2, 0, ones);
  CHECK(mw_product(l1, fund).values == l1.values);

  // the paper's compactified self-intersection degree on P1 x P1
  Fan quad = quadrant_fan();
  MinkowskiWeight c22 = make_minkowski_weight(quad, 1, ray_values(quad, 2));
  MinkowskiWeight c11 = make_minkowski_weight(quad, 1, ray_values(quad, 1));
  CHECK(mw_degree(mw_product(c22, c11)) == 4);

  CHECK_THROWS_AS(mw_degree(l1), DivisorError);
  CHECK(mw_product(mw_product(l1, l1), l1).values.empty());
}

TEST_CASE("support functions and orbit restriction") {
  Fan p2 = p2_fan();
  ToricDivisor dv = make_divisor(p2, {Int(1), Int(1), Int(1)});
  RationalFunction f = support_function(dv);
  CHECK(eval_function(f, qv({1, 0})) == 1);
  CHECK(eval_function(f, qv({0, 1})) == 1);
  CHECK(eval_function(f, qv({-1, -1})) == 1);
  CHECK(eval_function(f, qv({0, 0})) == 0);

  // globally linear function restricts exactly when it kills the ray
  RationalFunction rx =
      make_rational_function(2, {{Polyhedron::full_space(2), zv({1, 0}), Rat(0)}});
  CHECK_FALSE(restrict_function_to_orbit(rx, p2.index_of({0}), p2).has_value());
  RationalFunction ry =
      make_rational_function(2, {{Polyhedron::full_space(2), zv({0, 1}), Rat(5)}});
  auto rr = restrict_function_to_orbit(ry, p2.index_of({0}), p2);
  REQUIRE(rr.has_value());
  CHECK(rr->ambient == 1);
  CHECK(eval_function(*rr, qv({2})) == eval_function(ry, qv({7, 2})));

  // min(x,y,0) flattens to zero on the diagonal ray's orbit
  Fan diag = fan_from_cones(
      2, {Polyhedron::cone_from_rays(2, {qv({1, 0}), qv({1, 1})}),
          Polyhedron::cone_from_rays(2, {qv({1, 1}), qv({0, 1})}),
          Polyhedron::cone_from_rays(2, {qv({0, 1}), qv({-1, 0})}),
          Polyhedron::cone_from_rays(2, {qv({-1, 0}), qv({0, -1})}),
          Polyhedron::cone_from_rays(2, {qv({0, -1}), qv({1, 0})})});
  TropicalPolynomial lp =
      make_polynomial(2, {{zv({1, 0}), Rat(0)}, {zv({0, 1}), Rat(0)}, {zv({0, 0}), Rat(0)}});
  RationalFunction rl = function_from_polynomial(lp);
  size_t dray = 0;
  for (size_t i = 0; i < diag.size(); ++i)
    if (diag.cone_dim(i) == 1 && diag.cone_polys[i].contains(qv({1, 1}))) dray = i;
  auto rd = restrict_function_to_orbit(rl, dray, diag);
  REQUIRE(rd.has_value());
  CHECK(eval_function(*rd, qv({4})) == 0);
  CHECK(eval_function(*rd, qv({-4})) == 0);
}

TEST_CASE("cartier intersection reproduces the corner locus") {
  Fan triv = make_fan(2, {}, {{}});
  TropicalPolynomial lp =
      make_polynomial(2, {{zv({1, 0}), Rat(0)}, {zv({0, 1}), Rat(0)}, {zv({0, 0}), Rat(0)}});
  // the product weights are positive for the max-form of the polynomial
  RationalFunction r = negate_function(function_from_polynomial(lp));
  CartierDivisor phi = make_cartier(global_cartier(r).charts, ambient_cycle(triv), triv);
  StratifiedCycle e = cartier_intersect(phi, ambient_cycle(triv), triv);
  REQUIRE(e.components.size() == 1);
  CHECK(cycle_equal(e.components.begin()->second, tropical_hypersurface(lp)));

  // affine functions produce the zero cycle
  RationalFunction aff =
      make_rational_function(2, {{Polyhedron::full_space(2), zv({3, -2}), Rat(7)}});
  CHECK(cartier_intersect(global_cartier(aff), ambient_cycle(triv), triv).components.empty());
}

TEST_CASE("support function cuts skeleton minus boundary orbits") {
  Fan p2 = p2_fan();
  ToricDivisor dv = make_divisor(p2, {Int(1), Int(1), Int(1)});
  RationalFunction f = support_function(dv);
  StratifiedCycle e = cartier_intersect(global_cartier(f), ambient_cycle(p2), p2);

  // finite part: the codimension-one skeleton with lattice-length weights
  size_t zero = p2.index_of({});
  REQUIRE(e.components.count(zero) == 1);
  Cycle skel = skeleton_divisor_check(dv);
  CHECK(cycle_equal(e.components.at(zero), skel));
  for (const auto& c : skel.cells) CHECK(c.weight == 3);

  // boundary parts: weight -a_rho on each ray orbit
  for (size_t idx : p2.cones_of_dim(1)) {
    REQUIRE(e.components.count(idx) == 1);
    Cycle expect = make_cycle(1, 1, {{Polyhedron::full_space(1), -1}});
    CHECK(cycle_equal(e.components.at(idx), expect));
  }
}
