#include "core/lp.hpp"

namespace trop {

namespace {

// Dense tableau simplex in standard form: min c.z, A z = b, z >= 0, b >= 0.
// Bland's rule throughout, so no cycling.
struct Tableau {
  size_t m, n;          // rows, structural+slack+artificial columns
  QMat a;               // m x n
  QVec b;               // m
  QVec cost;            // n, current objective row (reduced in place)
  Rat shift = 0;        // objective constant
  size_t enter_limit = 0;     // entering columns restricted to [0, enter_limit)
  std::vector<size_t> basis;  // basic column per row

  void pivot(size_t row, size_t col) {
    Rat p = a[row][col];
    for (size_t j = 0; j < n; ++j) a[row][j] /= p;
    b[row] /= p;
    for (size_t i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (size_t j = 0; j < n; ++j) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
    }
    if (cost[col] != 0) {
      Rat f = cost[col];
      for (size_t j = 0; j < n; ++j) cost[j] -= f * a[row][j];
      shift -= f * b[row];
    }
    basis[row] = col;
  }

  // returns false when unbounded
  bool solve() {
    while (true) {
      size_t col = n;
      for (size_t j = 0; j < enter_limit; ++j)
        if (cost[j] < 0) {
          col = j;
          break;
        }
      if (col == n) return true;
      size_t row = m;
      for (size_t i = 0; i < m; ++i) {
        if (a[i][col] <= 0) continue;
        if (row == m) {
          row = i;
          continue;
        }
        int c = cmp(b[i] * a[row][col], b[row] * a[i][col]);
        if (c < 0 || (c == 0 && basis[i] < basis[row])) row = i;
      }
      if (row == m) return false;
      pivot(row, col);
    }
  }
};

}  // namespace

LpResult lp_minimize(const QVec& c, const QMat& ineq_lhs, const QVec& ineq_rhs,
                     const QMat& eq_lhs, const QVec& eq_rhs) {
  size_t nfree = c.size();
  size_t n_ineq = ineq_lhs.size(), n_eq = eq_lhs.size();
  size_t m = n_ineq + n_eq;
  // columns: x+ (nfree), x- (nfree), slacks (n_ineq), artificials (m)
  size_t nx = 2 * nfree, nslack = n_ineq;
  size_t ncols = nx + nslack + m;

  Tableau t;
  t.m = m;
  t.n = ncols;
  t.a.assign(m, QVec(ncols, Rat(0)));
  t.b.assign(m, Rat(0));
  t.basis.assign(m, 0);

  auto fill_row = [&](size_t i, const QVec& lhs, const Rat& rhs, bool with_slack, size_t slack_idx) {
    for (size_t j = 0; j < nfree; ++j) {
      t.a[i][j] = lhs[j];
      t.a[i][nfree + j] = -lhs[j];
    }
    if (with_slack) t.a[i][nx + slack_idx] = -1;  // a.x - s = b  (s >= 0 surplus)
    t.b[i] = rhs;
    if (t.b[i] < 0) {
      for (size_t j = 0; j < ncols; ++j) t.a[i][j] = -t.a[i][j];
      t.b[i] = -t.b[i];
    }
    t.a[i][nx + nslack + i] = 1;  // artificial
    t.basis[i] = nx + nslack + i;
  };
  for (size_t i = 0; i < n_ineq; ++i) fill_row(i, ineq_lhs[i], ineq_rhs[i], true, i);
  for (size_t i = 0; i < n_eq; ++i) fill_row(n_ineq + i, eq_lhs[i], eq_rhs[i], false, 0);

  // phase 1: minimize sum of artificials
  t.cost.assign(ncols, Rat(0));
  for (size_t i = 0; i < m; ++i) t.cost[nx + nslack + i] = 1;
  t.shift = 0;
  t.enter_limit = ncols;
  for (size_t i = 0; i < m; ++i) {  // reduce cost over initial basis
    for (size_t j = 0; j < ncols; ++j) t.cost[j] -= t.a[i][j];
    t.shift -= t.b[i];
  }
  t.solve();  // phase 1 is always bounded below by 0
  if (t.shift != 0) return {LpStatus::Infeasible, Rat(0), {}};

  // pivot remaining artificials out, or mark their rows redundant
  for (size_t i = 0; i < m; ++i) {
    if (t.basis[i] < nx + nslack) continue;
    size_t col = ncols;
    for (size_t j = 0; j < nx + nslack; ++j)
      if (t.a[i][j] != 0) {
        col = j;
        break;
      }
    if (col != ncols) t.pivot(i, col);
    // else: zero row, harmless
  }

  // phase 2; artificials may not re-enter the basis
  t.cost.assign(ncols, Rat(0));
  for (size_t j = 0; j < nfree; ++j) {
    t.cost[j] = c[j];
    t.cost[nfree + j] = -c[j];
  }
  t.shift = 0;
  t.enter_limit = nx + nslack;
  for (size_t i = 0; i < m; ++i) {
    if (t.cost[t.basis[i]] == 0) continue;
    Rat f = t.cost[t.basis[i]];
    for (size_t j = 0; j < ncols; ++j) t.cost[j] -= f * t.a[i][j];
    t.shift -= f * t.b[i];
  }
  if (!t.solve()) return {LpStatus::Unbounded, Rat(0), {}};

  LpResult res;
  res.status = LpStatus::Optimal;
  res.value = -t.shift;
  res.x.assign(nfree, Rat(0));
  for (size_t i = 0; i < m; ++i) {
    size_t col = t.basis[i];
    if (col < nfree)
      res.x[col] += t.b[i];
    else if (col < 2 * nfree)
      res.x[col - nfree] -= t.b[i];
  }
  return res;
}

}  // namespace trop
