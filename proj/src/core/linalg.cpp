#include "core/linalg.hpp"

#include <algorithm>

namespace trop {

std::vector<size_t> rref(QMat& A) {
  std::vector<size_t> pivots;
  if (A.empty()) return pivots;
  size_t rows = A.size(), cols = A[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && A[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(A[r], A[p]);
    Rat inv = A[r][c];
    for (size_t j = c; j < cols; ++j) A[r][j] /= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      Rat f = A[i][c];
      for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

size_t rank(QMat A) { return rref(A).size(); }

size_t rank(const ZMat& A) {
  QMat Q(A.size());
  for (size_t i = 0; i < A.size(); ++i) Q[i] = to_qvec(A[i]);
  return rank(Q);
}

QMat q_kernel(const QMat& A) {
  if (A.empty()) return {};
  size_t cols = A[0].size();
  QMat R = A;
  auto pivots = rref(R);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  QMat out;
  for (size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    QVec v(cols, Rat(0));
    v[c] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -R[i][c];
    out.push_back(v);
  }
  return out;
}

std::optional<QVec> q_solve(const QMat& A, const QVec& b) {
  size_t rows = A.size();
  size_t cols = rows ? A[0].size() : 0;
  QMat aug(rows, QVec(cols + 1));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) aug[i][j] = A[i][j];
    aug[i][cols] = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;  // inconsistent
  QVec x(cols, Rat(0));
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
  return x;
}

Rat q_det(QMat A) {
  size_t n = A.size();
  Rat det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && A[p][c] == 0) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      std::swap(A[p], A[c]);
      det = -det;
    }
    det *= A[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (A[i][c] == 0) continue;
      Rat f = A[i][c] / A[c][c];
      for (size_t j = c; j < n; ++j) A[i][j] -= f * A[c][j];
    }
  }
  return det;
}

// ---- HNF ------------------------------------------------------------------

namespace {

struct RowOps {
  ZMat* U;
  ZMat* Uinv;

  void swap(ZMat& A, size_t i, size_t j) {
    std::swap(A[i], A[j]);
    if (U) std::swap((*U)[i], (*U)[j]);
    if (Uinv)  // column swap on the inverse
      for (auto& row : *Uinv) std::swap(row[i], row[j]);
  }
  void negate(ZMat& A, size_t i) {
    for (auto& x : A[i]) x = -x;
    if (U)
      for (auto& x : (*U)[i]) x = -x;
    if (Uinv)
      for (auto& row : *Uinv) row[i] = -row[i];
  }
  // row_i += k * row_j
  void add(ZMat& A, size_t i, size_t j, const Int& k) {
    if (k == 0) return;
    for (size_t c = 0; c < A[i].size(); ++c) A[i][c] += k * A[j][c];
    if (U)
      for (size_t c = 0; c < (*U)[i].size(); ++c) (*U)[i][c] += k * (*U)[j][c];
    if (Uinv)  // inverse picks up the opposite column op
      for (auto& row : *Uinv) row[j] -= k * row[i];
  }
};

}  // namespace

ZMat hnf(const ZMat& M, ZMat* U, ZMat* Uinv) {
  ZMat H = M;
  size_t rows = H.size();
  size_t cols = rows ? H[0].size() : 0;
  auto eye = [&](ZMat& E) {
    E.assign(rows, ZVec(rows, Int(0)));
    for (size_t i = 0; i < rows; ++i) E[i][i] = 1;
  };
  if (U) eye(*U);
  if (Uinv) eye(*Uinv);
  RowOps ops{U, Uinv};

  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    // euclidean reduction of column c below row r
    while (true) {
      size_t best = rows;
      for (size_t i = r; i < rows; ++i) {
        if (H[i][c] == 0) continue;
        if (best == rows || abs(H[i][c]) < abs(H[best][c])) best = i;
      }
      if (best == rows) break;  // column all zero
      ops.swap(H, r, best);
      if (H[r][c] < 0) ops.negate(H, r);
      bool clean = true;
      for (size_t i = r + 1; i < rows; ++i) {
        if (H[i][c] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), H[i][c].get_mpz_t(), H[r][c].get_mpz_t());
        ops.add(H, i, r, -q);
        if (H[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (H[r][c] == 0) continue;
    // reduce entries above the pivot into [0, pivot)
    for (size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), H[i][c].get_mpz_t(), H[r][c].get_mpz_t());
      ops.add(H, i, r, -q);
    }
    ++r;
  }
  return H;
}

ZMat hnf_basis(const ZMat& M) {
  ZMat H = hnf(M);
  ZMat out;
  for (auto& row : H)
    if (!is_zero(row)) out.push_back(row);
  return out;
}

ZMat z_kernel(const ZMat& A) {
  // left kernel of A^T, read off from the transform rows matching zero rows
  ZMat At = transpose(A);
  if (At.empty()) {  // A has no columns? then A must be empty; treat as map from Z^0
    ZMat id;
    size_t n = A.empty() ? 0 : A[0].size();
    (void)n;
    return id;
  }
  ZMat U;
  ZMat H = hnf(At, &U);
  ZMat out;
  for (size_t i = 0; i < H.size(); ++i)
    if (is_zero(H[i])) out.push_back(U[i]);
  return hnf_basis(out);
}

ZMat saturate_rows(const ZMat& M) {
  if (M.empty()) return {};
  size_t n = M[0].size();
  ZMat K = z_kernel(M);
  if (K.empty()) {  // full rank: saturation is Z^n
    ZMat id(n, ZVec(n, Int(0)));
    for (size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
  }
  return z_kernel(K);
}

std::optional<ZVec> z_solve(const ZMat& A, const ZVec& b) {
  // Solve x A = b in row form: with H = U A^T in HNF, put z = x U^{-1} and
  // solve z H = b by clearing pivot columns in order.
  size_t k = A.size();
  if (k == 0) return std::nullopt;
  int n = (int)A[0].size();
  ZMat At(n, ZVec(k));
  for (size_t i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) At[j][i] = A[i][j];
  ZMat U;
  ZMat H = hnf(At, &U);
  ZVec r = b;
  ZVec z(n, Int(0));
  for (int i = 0; i < n; ++i) {
    size_t piv = k;
    for (size_t j = 0; j < k; ++j)
      if (H[i][j] != 0) {
        piv = j;
        break;
      }
    if (piv == k) continue;
    if (r[piv] % H[i][piv] != 0) return std::nullopt;
    z[i] = r[piv] / H[i][piv];
    for (size_t j = 0; j < k; ++j) r[j] -= z[i] * H[i][j];
  }
  for (size_t j = 0; j < k; ++j)
    if (r[j] != 0) return std::nullopt;
  ZVec x(n, Int(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x[j] += z[i] * U[i][j];
  return x;
}

ZMat transpose(const ZMat& A) {
  if (A.empty()) return {};
  ZMat T(A[0].size(), ZVec(A.size()));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) T[j][i] = A[i][j];
  return T;
}

ZMat mat_mul(const ZMat& A, const ZMat& B) {
  if (A.empty() || B.empty()) return {};
  size_t n = A.size(), k = B.size(), m = B[0].size();
  ZMat C(n, ZVec(m, Int(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (A[i][l] == 0) continue;
      for (size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
    }
  return C;
}

Int z_det(const ZMat& A) {
  QMat Q(A.size());
  for (size_t i = 0; i < A.size(); ++i) Q[i] = to_qvec(A[i]);
  Rat d = q_det(Q);
  return d.get_num();  // denominator is 1 for integer input
}

// ---- lattices -------------------------------------------------------------

Lattice Lattice::from_rows(int ambient, const ZMat& rows) {
  Lattice L;
  L.ambient = ambient;
  L.basis = hnf_basis(rows);
  return L;
}

Lattice Lattice::standard(int n) {
  ZMat id(n, ZVec(n, Int(0)));
  for (int i = 0; i < n; ++i) id[i][i] = 1;
  return Lattice::from_rows(n, id);
}

Int lattice_index(const Lattice& sub, const Lattice& sup) {
  if (sub.ambient != sup.ambient) throw LatticeError("lattice_index: ambient mismatch");
  if (sub.rank() != sup.rank()) throw LatticeError("lattice_index: infinite index (rank mismatch)");
  size_t r = sub.rank();
  if (r == 0) return 1;
  // express each sub basis row in the sup basis; must be integral
  QMat supT(sup.ambient, QVec(r));
  for (size_t i = 0; i < r; ++i)
    for (int j = 0; j < sup.ambient; ++j) supT[j][i] = Rat(sup.basis[i][j]);
  QMat C(r, QVec(r));
  for (size_t i = 0; i < r; ++i) {
    auto x = q_solve(supT, to_qvec(sub.basis[i]));
    if (!x) throw LatticeError("lattice_index: not a sublattice (span mismatch)");
    for (size_t j = 0; j < r; ++j) {
      if ((*x)[j].get_den() != 1) throw LatticeError("lattice_index: not a sublattice");
      C[i][j] = (*x)[j];
    }
  }
  Rat d = q_det(C);
  Int idx = abs(d.get_num());
  if (idx == 0) throw LatticeError("lattice_index: degenerate basis");
  return idx;
}

Lattice saturate(const Lattice& L) { return Lattice::from_rows(L.ambient, saturate_rows(L.basis)); }

ZVec primitive_generator(const QVec& v) {
  if (is_zero(v)) throw LatticeError("primitive_generator: zero vector");
  Int lcm = 1;
  for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  ZVec w(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    Rat s = v[i] * Rat(lcm);
    w[i] = s.get_num();
  }
  Int g = 0;
  for (const auto& x : w) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  for (auto& x : w) x /= g;
  return w;
}

ZVec primitive_generator(const ZVec& v) { return primitive_generator(to_qvec(v)); }

// ---- quotient frames ------------------------------------------------------

QVec QuotientFrame::project(const QVec& x) const {
  QVec y(quotient, Rat(0));
  for (int j = 0; j < quotient; ++j)
    for (int i = 0; i < ambient; ++i) y[j] += x[i] * Rat(proj[i][j]);
  return y;
}

QVec QuotientFrame::unproject(const QVec& y) const {
  QVec x(ambient, Rat(0));
  for (int i = 0; i < ambient; ++i)
    for (int j = 0; j < quotient; ++j) x[i] += y[j] * Rat(lift[j][i]);
  return x;
}

QuotientFrame quotient_frame(int n, const QMat& span_basis) {
  ZMat rows;
  for (const auto& v : span_basis)
    if (!is_zero(v)) rows.push_back(primitive_generator(v));
  ZMat T = saturate_rows(rows);  // d x n, canonical
  size_t d = T.size();
  QuotientFrame f;
  f.ambient = n;
  f.quotient = int(n - d);
  f.tau_basis = T;
  if (d == 0) {
    ZMat id(n, ZVec(n, Int(0)));
    for (int i = 0; i < n; ++i) id[i][i] = 1;
    f.proj = id;
    f.lift = id;
    return f;
  }
  // Column-style HNF via row HNF of T^T: U * T^T = H. Then T * U^T = [L 0]
  // with L unimodular (T is saturated), so W := (U^T)^{-1} = (U^{-1})^T is a
  // unimodular matrix whose first d rows span the same lattice as T.
  ZMat U, Uinv;
  hnf(transpose(T), &U, &Uinv);
  // proj: x -> last m coords of x * U^T  => proj = (U^T restricted to last m cols)
  size_t m = n - d;
  f.proj.assign(n, ZVec(m, Int(0)));
  for (size_t i = 0; i < size_t(n); ++i)
    for (size_t j = 0; j < m; ++j) f.proj[i][j] = U[d + j][i];  // (U^T)[i][d+j]
  // lift: y -> [0 y] * W where W = (U^T)^{-1}; rows of W are columns of Uinv
  f.lift.assign(m, ZVec(n, Int(0)));
  for (size_t j = 0; j < m; ++j)
    for (size_t i = 0; i < size_t(n); ++i) f.lift[j][i] = Uinv[i][d + j];  // W[d+j][i]
  return f;
}

Lattice project_lattice(const Lattice& L, const QuotientFrame& f) {
  if (L.ambient != f.ambient) throw LatticeError("project_lattice: ambient mismatch");
  ZMat rows;
  for (const auto& b : L.basis) {
    ZVec y(f.quotient, Int(0));
    for (int j = 0; j < f.quotient; ++j)
      for (int i = 0; i < f.ambient; ++i) y[j] += b[i] * f.proj[i][j];
    if (!is_zero(y)) rows.push_back(y);
  }
  return Lattice::from_rows(f.quotient, rows);
}

}  // namespace trop
