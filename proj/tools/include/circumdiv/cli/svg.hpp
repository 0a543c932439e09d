#pragma once

#include <optional>
#include <string>
#include <vector>

#include "circumdiv/circumradius.hpp"
#include "circumdiv/geom.hpp"
#include "circumdiv/kernel.hpp"

namespace circumdiv::cli {

struct SvgLayer {
  PointSet points;
  std::optional<Circumsolution> solution;  // draws radius * K + center
  std::string label;
};

/// Planar scene: the kernel itself (dashed, at the origin) plus one color
/// per layer. Throws Error(dimension_mismatch) unless everything is 2-D.
struct SvgScene {
  Kernel kernel;
  std::vector<SvgLayer> layers;
};

/// Deterministic 600x600 document with 5% padding.
std::string render_svg(const SvgScene& scene);

/// Boundary of radius * K + center as a closed polygon (counter-clockwise).
/// Exact for polytopes; 256 support points otherwise.
std::vector<Point> outline(const Kernel& k, double radius, const Point& center);

}  // namespace circumdiv::cli
