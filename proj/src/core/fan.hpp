#pragma once

#include "core/cycle.hpp"

namespace trop {

struct FanError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rational polyhedral fan with every face listed explicitly. Cones are
// stored as sorted sets of ray indices; the zero cone is the empty set.
struct Fan {
  int ambient = 0;
  ZMat rays;  // primitive generators
  std::vector<std::vector<int>> cones;
  std::vector<Polyhedron> cone_polys;  // parallel to cones

  size_t size() const { return cones.size(); }
  int cone_dim(size_t i) const { return cone_polys[i].dim(); }
  // index of the listed cone with the given ray set; throws if absent
  size_t index_of(const std::vector<int>& rayset) const;
  std::optional<size_t> find_poly(const Polyhedron& p) const;
  std::vector<size_t> maximal_cones() const;
  std::vector<size_t> cones_of_dim(int d) const;
};

// Validates the fan invariants: primitive distinct rays, pointed cones
// generated by their listed rays, faces listed, pairwise intersections
// are listed common faces.
Fan make_fan(int ambient, ZMat rays, std::vector<std::vector<int>> cones);

// Fan generated by the given pointed cones (closed under faces).
Fan fan_from_cones(int ambient, const std::vector<Polyhedron>& cones);

bool is_unimodular(const Fan& d);
bool is_complete(const Fan& d);

// x in the relative interior of p
bool in_relint(const Polyhedron& p, const QVec& x);

// target covered by the union of the listed polyhedra (up to measure zero
// in its affine hull, which is exact for closed covers)
bool covers(const Polyhedron& target, const std::vector<Polyhedron>& pieces);

bool is_compatible(const Fan& d, const std::vector<Polyhedron>& pp);
bool is_compactifying(const Fan& d, const std::vector<Polyhedron>& pp);

// first reported violation of the compatibility dichotomy, if any
std::optional<std::pair<size_t, size_t>> compatibility_violation(const Fan& d,
                                                                 const std::vector<Polyhedron>& pp);

std::vector<Polyhedron> delta_decomposition(const std::vector<Polyhedron>& pp, const Fan& d);
std::vector<Polyhedron> delta_thickening(const std::vector<Polyhedron>& pp, const Fan& d,
                                         const Rat& eps);

// Coordinate frame of the stratum O(tau) = R^n / span(tau).
QuotientFrame stratum_frame(const Fan& d, size_t tau);

Fan star_fan_quotient(const Fan& d, size_t tau);

// Cones sigma + span(tau) for sigma containing tau. These have lineality
// span(tau), so they are returned as raw cones, not as a Fan.
std::vector<Polyhedron> star_fan_ambient(const Fan& d, size_t tau);

// Stratum reached by x + lambda*v for lambda -> infinity: the cone whose
// relative interior contains v, and the image of x in its frame.
std::pair<size_t, QVec> limit_point(const QVec& x, const QVec& v, const Fan& d);

// Induced cycle on the stratum O(tau): project the cells of a
// decomposition whose recession cones contain tau.
Cycle boundary_cycle(const Cycle& s, size_t tau, const Fan& d);

Cycle compactified_stable_intersect(const Cycle& gamma, const Cycle& s, size_t tau, const Fan& d,
                                    uint64_t seed = kDefaultSeed);

// degrees of gamma ._c s and gamma ._c recession_fan(s); equal by theory
std::pair<Int, Int> recession_degree_check(const Cycle& gamma, const Cycle& s, size_t tau,
                                           const Fan& d, uint64_t seed = kDefaultSeed);

}  // namespace trop
