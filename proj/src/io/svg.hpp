#pragma once

#include <string>
#include <vector>

#include "core/cycle.hpp"

namespace trop {

// Deterministic SVG rendering of planar cycles: segments and rays clipped
// to the bounding box, weight labels with exact values, one stroke class
// per input cycle. bbox = (x0, y0, x1, y1).
std::string render_svg(const std::vector<Cycle>& cycles, const QVec& bbox);

}  // namespace trop
