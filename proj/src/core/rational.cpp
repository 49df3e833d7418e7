#include "core/rational.hpp"

#include <sstream>

namespace trop {

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto dot_pos = s.find('.');
  if (dot_pos != std::string::npos) {
    // decimal: sign + integer part + fraction digits
    std::string head = s.substr(0, dot_pos);
    std::string tail = s.substr(dot_pos + 1);
    if (tail.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad decimal literal: " + s);
    bool neg = !head.empty() && head[0] == '-';
    if (!head.empty() && (head[0] == '+' || head[0] == '-')) head = head.substr(1);
    if (head.empty()) head = "0";
    Int ip(head);
    Int frac = tail.empty() ? Int(0) : Int(tail);
    Int den = 1;
    for (size_t i = 0; i < tail.size(); ++i) den *= 10;
    Rat fpart(frac, den);
    fpart.canonicalize();
    Rat r = Rat(ip) + fpart;
    r.canonicalize();
    return neg ? Rat(-r) : r;
  }
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string qvec_str(const QVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

bool qvec_less(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace trop
