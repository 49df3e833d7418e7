#pragma once

#include <map>

#include "core/fan.hpp"

namespace trop {

struct DivisorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- toric divisors ------------------------------------------------------

// T-invariant divisor sum a_rho D_rho; coeffs parallel to d.rays.
struct ToricDivisor {
  Fan fan;
  std::vector<Int> coeffs;
};

ToricDivisor make_divisor(Fan d, std::vector<Int> coeffs);

// div(chi^m): coefficient <m, u_rho> on each ray.
ToricDivisor principal_divisor(const ZVec& m, const Fan& d);

// Cartier certificate: per maximal cone sigma an integral m_sigma with
// <m_sigma, u_rho> = -a_rho for every ray rho of sigma. Absent if some
// system has no integral solution.
std::optional<std::map<size_t, ZVec>> is_cartier(const ToricDivisor& dv);

// Strict inequality <m_sigma, u_rho> > -a_rho for rays outside sigma.
bool is_ample(const ToricDivisor& dv);

// P_D = {m : <m, u_rho> >= -a_rho for all rho}.
Polyhedron divisor_polytope(const ToricDivisor& dv);

// Inner normal fan of a bounded full-dimensional lattice polytope; the
// cone of a vertex v is {u : <m - v, u> >= 0 for all vertices m}.
Fan normal_fan(const Polyhedron& p);

// ---- tropical polynomials ------------------------------------------------

struct Term {
  ZVec exp;
  Rat val;
};

// Min-plus polynomial: x -> min over terms of (<exp, x> + val).
struct TropicalPolynomial {
  int ambient = 0;
  std::vector<Term> terms;
};

TropicalPolynomial make_polynomial(int ambient, std::vector<Term> terms);

Rat eval_polynomial(const TropicalPolynomial& f, const QVec& x);

// Corner locus of the min-plus evaluation. Facet weights are the lattice
// lengths of the dual edges of the regular subdivision of the Newton
// polytope induced by the coefficient values.
Cycle tropical_hypersurface(const TropicalPolynomial& f);

// For an ample divisor on a complete unimodular fan: the hypersurface of
// min <m_sigma, x> over the Cartier certificate. Asserts its support is
// the codimension-one skeleton of the fan and returns it.
Cycle skeleton_divisor_check(const ToricDivisor& dv);

// ---- Minkowski weights ---------------------------------------------------

// Integer weights on the codim-k cones of a complete fan, balanced around
// every codim-(k+1) cone.
struct MinkowskiWeight {
  Fan fan;
  int codim = 0;
  std::map<size_t, Int> values;  // cone index -> weight; all codim-k cones keyed

  Int value(size_t cone) const;
};

MinkowskiWeight make_minkowski_weight(Fan d, int codim, std::map<size_t, Int> values);

// The weight as a fan cycle (cells with nonzero value).
Cycle mw_cycle(const MinkowskiWeight& c);

std::vector<std::string> mw_balancing_check(const MinkowskiWeight& c);

// Weight of the recession fan of s on each cone of d; s must be
// compatible with d and its recession support must lie on the
// dim(s)-skeleton of d.
MinkowskiWeight mw_from_cycle(const Cycle& s, const Fan& d);

// Fan displacement product with a certified generic lattice shift.
MinkowskiWeight mw_product(const MinkowskiWeight& c1, const MinkowskiWeight& c2,
                           uint64_t seed = kDefaultSeed);

// Value of a codim-n weight on the zero cone.
Int mw_degree(const MinkowskiWeight& c);

// mw_degree of the iterated product; total codimension must be n.
Int degree_pairing_check(const MinkowskiWeight& c1, const MinkowskiWeight& c2,
                         const std::vector<MinkowskiWeight>& hyps, uint64_t seed = kDefaultSeed);

// ---- piecewise linear functions ------------------------------------------

struct PLPiece {
  Polyhedron dom;
  ZVec lin;
  Rat c;
};

// Continuous piecewise integral-affine function covering its ambient space.
struct RationalFunction {
  int ambient = 0;
  std::vector<PLPiece> pieces;
};

// Validates cover and continuity on overlaps.
RationalFunction make_rational_function(int ambient, std::vector<PLPiece> pieces);

Rat eval_function(const RationalFunction& r, const QVec& x);

// min-plus evaluation of f as a piecewise linear function
RationalFunction function_from_polynomial(const TropicalPolynomial& f);

RationalFunction negate_function(const RationalFunction& r);

// Piecewise form of the support function of a Cartier divisor on a
// complete fan, with the sign fixed by f(u_rho) = a_rho.
RationalFunction support_function(const ToricDivisor& dv);

// Limit of r toward the stratum O(tau), as a function on the stratum
// frame, when that limit is a well-defined piecewise linear function.
std::optional<RationalFunction> restrict_function_to_orbit(const RationalFunction& r, size_t tau,
                                                           const Fan& d);

// ---- Cartier divisors on stratified cycles -------------------------------

// Cycle with one component per torus orbit, each in the coordinates of
// stratum_frame(d, tau).
struct StratifiedCycle {
  std::map<size_t, Cycle> components;
};

// The ambient space N_R as a stratified cycle of weight one.
StratifiedCycle ambient_cycle(const Fan& d);

struct Chart {
  std::vector<Polyhedron> region;  // in N_R coordinates
  RationalFunction r;
};

struct CartierDivisor {
  std::vector<Chart> charts;
};

CartierDivisor global_cartier(const RationalFunction& r);

// Validates chart cover, restriction to the strata met, and affine
// linearity of chart differences on overlaps against alpha.
CartierDivisor make_cartier(std::vector<Chart> charts, const StratifiedCycle& alpha, const Fan& d);

// Intersection product phi . alpha: per stratum the corner-locus part on
// codimension-one cells plus boundary parts on codimension-one infinite
// cells of the deeper strata.
StratifiedCycle cartier_intersect(const CartierDivisor& phi, const StratifiedCycle& alpha,
                                  const Fan& d);

}  // namespace trop
