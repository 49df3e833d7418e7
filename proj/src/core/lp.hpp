#pragma once

#include "core/rational.hpp"

namespace trop {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;  // objective at optimum
  QVec x;     // optimizer (free variables)
};

// min c.x  subject to  ineq_lhs x >= ineq_rhs,  eq_lhs x = eq_rhs, x free.
// Exact rational simplex with Bland's rule.
LpResult lp_minimize(const QVec& c, const QMat& ineq_lhs, const QVec& ineq_rhs,
                     const QMat& eq_lhs, const QVec& eq_rhs);

inline LpResult lp_maximize(const QVec& c, const QMat& ineq_lhs, const QVec& ineq_rhs,
                            const QMat& eq_lhs, const QVec& eq_rhs) {
  QVec neg = c;
  for (auto& v : neg) v = -v;
  LpResult r = lp_minimize(neg, ineq_lhs, ineq_rhs, eq_lhs, eq_rhs);
  r.value = -r.value;
  return r;
}

inline bool lp_feasible(const QMat& ineq_lhs, const QVec& ineq_rhs, const QMat& eq_lhs,
                        const QVec& eq_rhs) {
  size_t n = !ineq_lhs.empty() ? ineq_lhs[0].size() : (!eq_lhs.empty() ? eq_lhs[0].size() : 0);
  QVec zero(n, Rat(0));
  return lp_minimize(zero, ineq_lhs, ineq_rhs, eq_lhs, eq_rhs).status == LpStatus::Optimal;
}

}  // namespace trop
