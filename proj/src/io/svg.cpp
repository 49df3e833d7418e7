#include "io/svg.hpp"

#include <algorithm>
#include <sstream>

namespace trop {

namespace {

// fixed 6-digit decimal rendering of a rational coordinate
std::string dec6(const Rat& r0) {
  Rat r = r0;
  r.canonicalize();
  Int scaled_num = r.get_num() * 1000000;
  Int q = scaled_num / r.get_den();
  Int rem = scaled_num % r.get_den();
  // round half away from zero, deterministically
  if (2 * abs(rem) >= r.get_den()) q += (r < 0 ? -1 : 1);
  bool neg = q < 0;
  Int a = abs(q);
  Int whole = a / 1000000;
  Int frac = a % 1000000;
  std::ostringstream os;
  if (neg && (whole != 0 || frac != 0)) os << "-";
  os << whole.get_str() << ".";
  std::string fs = frac.get_str();
  os << std::string(6 - fs.size(), '0') << fs;
  return os.str();
}

struct Mapper {
  Rat x0, y0, x1, y1;
  Rat sx, sy;
  std::string px(const QVec& p) const { return dec6(Rat((p[0] - x0) * sx)); }
  std::string py(const QVec& p) const { return dec6(Rat((y1 - p[1]) * sy)); }
};

}  // namespace

std::string render_svg(const std::vector<Cycle>& cycles, const QVec& bbox) {
  Rat x0 = bbox[0], y0 = bbox[1], x1 = bbox[2], y1 = bbox[3];
  if (x0 >= x1 || y0 >= y1) throw CycleError("degenerate bounding box");
  Mapper m{x0, y0, x1, y1, Rat(400) / Rat(x1 - x0), Rat(400) / Rat(y1 - y0)};
  Polyhedron box(2,
                 {{{Rat(1), Rat(0)}, x0}, {{Rat(-1), Rat(0)}, -x1},
                  {{Rat(0), Rat(1)}, y0}, {{Rat(0), Rat(-1)}, -y1}},
                 {});
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 400 400\">\n";
  os << "<style>.c0{stroke:#000}.c1{stroke:#c22}.c2{stroke:#26c}.c3{stroke:#283}"
        "line{stroke-width:2}text{font:12px monospace;fill:#444}</style>\n";
  for (size_t k = 0; k < cycles.size(); ++k) {
    const Cycle& s = cycles[k];
    if (s.ambient != 2) throw CycleError("plot needs planar cycles");
    std::string cls = "c" + std::to_string(k % 4);
    std::vector<Cell> cells = s.cells;
    std::sort(cells.begin(), cells.end(),
              [](const Cell& a, const Cell& b) { return a.poly < b.poly; });
    for (const auto& c : cells) {
      Polyhedron vis = intersect(c.poly, box);
      if (vis.is_empty()) continue;
      if (vis.dim() == 0) {
        QVec p = single_point(vis);
        os << "<circle class=\"" << cls << "\" cx=\"" << m.px(p) << "\" cy=\"" << m.py(p)
           << "\" r=\"3\"/>";
        os << "<text x=\"" << m.px(p) << "\" y=\"" << m.py(p) << "\" dx=\"5\" dy=\"-5\">"
           << rat_str(Rat(c.weight)) << "</text>\n";
        continue;
      }
      if (vis.dim() != 1) throw CycleError("plot draws zero- and one-dimensional cells only");
      QMat vs = vertices(vis);
      if (vs.size() != 2) continue;  // clipped away to a lower-dimensional sliver
      std::sort(vs.begin(), vs.end(), qvec_less);
      QVec mid = scale(Rat(1, 2), add(vs[0], vs[1]));
      os << "<line class=\"" << cls << "\" x1=\"" << m.px(vs[0]) << "\" y1=\"" << m.py(vs[0])
         << "\" x2=\"" << m.px(vs[1]) << "\" y2=\"" << m.py(vs[1]) << "\"/>";
      os << "<text x=\"" << m.px(mid) << "\" y=\"" << m.py(mid) << "\" dx=\"4\" dy=\"-4\">"
         << rat_str(Rat(c.weight)) << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace trop
