#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trop {

using Int = mpz_class;
using Rat = mpq_class;

using QVec = std::vector<Rat>;
using ZVec = std::vector<Int>;
using QMat = std::vector<QVec>;
using ZMat = std::vector<ZVec>;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p", "p/q" or a plain decimal like "-1.25" into an exact rational.
Rat parse_rat(const std::string& s);

inline std::string rat_str(const Rat& r) {
  Rat t = r;
  t.canonicalize();
  return t.get_str();
}

std::string qvec_str(const QVec& v);

inline QVec to_qvec(const ZVec& v) {
  QVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

inline Rat dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot(const ZVec& a, const QVec& b) { return dot(to_qvec(a), b); }

inline QVec add(const QVec& a, const QVec& b) {
  QVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline QVec sub(const QVec& a, const QVec& b) {
  QVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline QVec scale(const Rat& c, const QVec& v) {
  QVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

inline bool is_zero(const QVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline bool is_zero(const ZVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// Strict weak order on rational vectors, used for canonical sorting.
bool qvec_less(const QVec& a, const QVec& b);

}  // namespace trop
