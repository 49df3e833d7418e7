#pragma once

#include "core/linalg.hpp"
#include "core/rational.hpp"

namespace trop {

struct PolyhedronError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One linear condition <a,x> >= b (inequality) or <a,x> = b (equality).
struct Constraint {
  QVec a;
  Rat b;
  bool operator==(const Constraint& o) const { return a == o.a && b == o.b; }
};

bool constraint_less(const Constraint& x, const Constraint& y);

// Rational polyhedron in H-representation. After canonicalization the
// description is irredundant, implicit equalities are promoted, and the
// constraint lists are sorted; equal sets then have equal descriptions.
class Polyhedron {
 public:
  Polyhedron() = default;
  Polyhedron(int ambient, std::vector<Constraint> ineqs, std::vector<Constraint> eqs);

  static Polyhedron full_space(int ambient);
  static Polyhedron empty(int ambient);
  static Polyhedron point(const QVec& x);
  // conic hull of the given ray generators (H-rep via elimination)
  static Polyhedron cone_from_rays(int ambient, const QMat& rays);

  int ambient() const { return ambient_; }
  int dim() const { return dim_; }  // -1 for empty
  bool is_empty() const { return dim_ < 0; }
  bool is_cone() const;  // all right-hand sides zero
  const std::vector<Constraint>& ineqs() const { return ineqs_; }
  const std::vector<Constraint>& eqs() const { return eqs_; }

  bool contains(const QVec& x) const;
  bool contains(const Polyhedron& other) const;  // other subset of this
  bool operator==(const Polyhedron& o) const;
  bool operator<(const Polyhedron& o) const;  // canonical order for sorting

  // Linear-space directions of the affine hull, as a saturated lattice.
  Lattice direction_lattice() const;
  QMat direction_space() const;  // rational basis of the same space

  std::string key() const;  // canonical printable key

 private:
  friend Polyhedron intersect(const Polyhedron&, const Polyhedron&);
  int ambient_ = 0;
  int dim_ = -1;
  std::vector<Constraint> ineqs_;
  std::vector<Constraint> eqs_;
  void canonicalize();
};

Polyhedron intersect(const Polyhedron& p, const Polyhedron& q);
Polyhedron recession_cone(const Polyhedron& p);
Polyhedron thicken(const Polyhedron& p, const Rat& eps);

// All k-dimensional faces, canonical and deduplicated.
std::vector<Polyhedron> faces(const Polyhedron& p, int k);
std::vector<Polyhedron> facets(const Polyhedron& p);

// A deterministic point in the relative interior (p nonempty).
QVec relative_interior_point(const Polyhedron& p);

// Image under the quotient frame map (equivalently of p + span(tau)).
Polyhedron project(const Polyhedron& p, const QuotientFrame& frame);

// Preimage of p under the frame map: {x : frame.project(x) in p}.
Polyhedron preimage(const Polyhedron& p, const QuotientFrame& frame);

// Translate by vector t.
Polyhedron translate(const Polyhedron& p, const QVec& t);

// Cone spanned by p - x at a point x of p: keeps exactly the constraints
// tight at x, homogenized.
Polyhedron tangent_cone(const Polyhedron& p, const QVec& x);

// For bounded 0-dimensional p, its unique point.
QVec single_point(const Polyhedron& p);

// Vertices of p (dimension-0 faces), as points.
QMat vertices(const Polyhedron& p);

// Primitive generators of the rays of a pointed cone.
ZMat cone_rays(const Polyhedron& cone);

}  // namespace trop
