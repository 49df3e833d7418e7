#pragma once

#include "core/rational.hpp"

namespace trop {

// ---- rational Gaussian elimination -------------------------------------

// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(QMat& A);

size_t rank(QMat A);
size_t rank(const ZMat& A);

// Basis of {x : A x = 0} over Q.
QMat q_kernel(const QMat& A);

// One solution of A x = b over Q, if any.
std::optional<QVec> q_solve(const QMat& A, const QVec& b);

Rat q_det(QMat A);

// ---- integer normal forms ----------------------------------------------

// Row-style Hermite normal form. Returns H with U*M = H, U unimodular.
// Nonzero rows of H come first; pivots are positive and entries above a
// pivot are reduced into [0, pivot). Uinv, when requested, satisfies
// U*Uinv = I.
ZMat hnf(const ZMat& M, ZMat* U = nullptr, ZMat* Uinv = nullptr);

// Nonzero rows of hnf(M): canonical basis of the row lattice.
ZMat hnf_basis(const ZMat& M);

// Basis of the integer kernel {x in Z^n : A x = 0}; always saturated.
ZMat z_kernel(const ZMat& A);

// (row span of M over Q) intersected with Z^n, as a canonical basis.
ZMat saturate_rows(const ZMat& M);

// One integral solution of A x = b, if any.
std::optional<ZVec> z_solve(const ZMat& A, const ZVec& b);

ZMat transpose(const ZMat& A);
ZMat mat_mul(const ZMat& A, const ZMat& B);
Int z_det(const ZMat& A);

// ---- lattices -----------------------------------------------------------

// Full-rank-in-its-span lattice in Z^n, stored as canonical HNF basis.
struct Lattice {
  int ambient = 0;
  ZMat basis;  // canonical (HNF, no zero rows); may be empty (zero lattice)

  static Lattice from_rows(int ambient, const ZMat& rows);
  static Lattice standard(int n);
  size_t rank() const { return basis.size(); }
  bool operator==(const Lattice& o) const { return ambient == o.ambient && basis == o.basis; }
};

struct LatticeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// [sup : sub]; throws LatticeError on rank mismatch or non-containment.
Int lattice_index(const Lattice& sub, const Lattice& sup);

Lattice saturate(const Lattice& L);

// Unique primitive lattice vector on the ray through v (v != 0).
ZVec primitive_generator(const QVec& v);
ZVec primitive_generator(const ZVec& v);

// ---- quotient frames -----------------------------------------------------

// Deterministic coordinate frame for Z^n / (span(tau) cap Z^n).
// proj maps x to its quotient coordinates (q = x * proj, proj is n x m);
// lift maps quotient coordinates back to a distinguished preimage
// (x = q * lift, lift is m x n); m = n - dim(tau).
struct QuotientFrame {
  int ambient = 0;   // n
  int quotient = 0;  // m
  ZMat proj;         // n x m
  ZMat lift;         // m x n
  ZMat tau_basis;    // saturated basis of the collapsed subspace

  QVec project(const QVec& x) const;
  QVec unproject(const QVec& y) const;
};

// span_basis: rational vectors spanning the subspace to collapse.
QuotientFrame quotient_frame(int n, const QMat& span_basis);

// Image of L under the frame's projection, inside Z^m.
Lattice project_lattice(const Lattice& L, const QuotientFrame& f);

}  // namespace trop
