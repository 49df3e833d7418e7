#pragma once

#include <cstdint>
#include <random>

#include "core/polyhedron.hpp"

namespace trop {

struct CycleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Cell {
  Polyhedron poly;
  Int weight;
};

// Weighted pure-dimensional rational polyhedral complex (formal sum of
// cells; a genuine complex structure is produced on demand by refine).
struct Cycle {
  int ambient = 0;
  int dim = -1;  // -1 only for the empty cycle of unspecified dimension
  std::vector<Cell> cells;

  bool empty() const { return cells.empty(); }
  bool supports(const QVec& x) const;
};

// Validates ambient/dimension consistency, drops empty cells and zero
// weights; throws CycleError on impure dimension.
Cycle make_cycle(int ambient, int dim, std::vector<Cell> cells);

// Oriented hyperplane data (a, b) for <a,x> = b, sign-normalized.
using Hyperplane = std::pair<QVec, Rat>;
std::vector<Hyperplane> cell_hyperplanes(const std::vector<Cell>& cells);

// Split every cell along every listed hyperplane, then merge coinciding
// pieces by summing weights. The result is a genuine complex whenever the
// list contains all hyperplanes of all cells.
Cycle refine_with(const Cycle& s, const std::vector<Hyperplane>& hs);
Cycle refine(const Cycle& s);
std::pair<Cycle, Cycle> common_refinement(const Cycle& a, const Cycle& b);

// Empty iff balanced at every codimension-one face of the refinement.
std::vector<std::string> balancing_check(const Cycle& s);

// Primitive generator of the image of the tangent cone of cell at x in
// the quotient frame f of the facet directions; the image must be a ray.
ZVec normal_vector(const Polyhedron& cell, const QVec& x, const QuotientFrame& f);

// Fan cycle of tangent cones at u; throws if u is off the support.
Cycle star_at(const Cycle& s, const QVec& u);

Cycle translate(const Cycle& s, const QVec& v);

// Generic displacement vectors with certified genericity.
struct DisplacementGen {
  explicit DisplacementGen(uint64_t seed);
  QVec next(int n);

 private:
  std::mt19937_64 rng;
};

constexpr uint64_t kDefaultSeed = 0x74726f70;

// True iff p1 meets (p2 + eps*v) for all sufficiently small eps > 0,
// decided by one exact LP in (x, eps).
bool displaced_meets(const Polyhedron& p1, const Polyhedron& p2, const QVec& v);

Cycle stable_intersect(const Cycle& a, const Cycle& b, uint64_t seed = kDefaultSeed);
Int local_multiplicity(const Cycle& a, const Cycle& b, const QVec& u, uint64_t seed = kDefaultSeed);
Cycle multi_stable_intersect(const std::vector<Cycle>& list, uint64_t seed = kDefaultSeed);

// Sum of weights of a zero-dimensional cycle.
Int degree(const Cycle& s);

// Fan cycle of recession cones with induced weights.
Cycle recession_fan_cycle(const Cycle& s);

std::vector<Cycle> connected_components(const Cycle& s);
Cycle restrict_to_component(const Cycle& s, const QVec& witness);

// Restriction of s to the connected component of the set-theoretic
// intersection of the given supports that contains the witness point.
Cycle restrict_to_component(const Cycle& s, const std::vector<Cycle>& supports,
                            const QVec& witness);

// Equality as weighted supports (common refinement, weight comparison).
bool cycle_equal(const Cycle& a, const Cycle& b);

// Local intersection multiplicity of s1, s2 inside a multiplicity-one
// maximal face of the ambient cycle y at u, computed in the face lattice.
Int relative_multiplicity_in_smooth_face(const Cycle& s1, const Cycle& s2, const Cycle& y,
                                         const QVec& u, uint64_t seed = kDefaultSeed);

}  // namespace trop
