#include "circumdiv/cli/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "circumdiv/error.hpp"

namespace circumdiv::cli {

namespace {

constexpr double kSize = 600.0;
constexpr double kPad = 0.05 * kSize;
constexpr int kSamples = 256;
constexpr std::array<const char*, 5> kColors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

Point support(const Kernel& k, const Point& u) {
  return std::visit(
      [&](const auto& s) -> Point {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, shape::Ball>) {
          return u / u.norm();
        } else if constexpr (std::is_same_v<T, shape::Parallelotope>) {
          const Eigen::VectorXd g = s.map.matrix().transpose() * u;
          return s.map(Point((g.array() > 0.0).template cast<double>()));
        } else if constexpr (std::is_same_v<T, shape::Product>) {
          const auto dl = static_cast<Eigen::Index>(s.left->dim());
          const auto dr = static_cast<Eigen::Index>(s.right->dim());
          Point out(dl + dr);
          out << support(*s.left, u.head(dl)), support(*s.right, u.tail(dr));
          return out;
        } else if constexpr (std::is_same_v<T, shape::AffineImage>) {
          return s.map(support(*s.base, s.map.matrix().transpose() * u));
        } else {
          const auto verts = polytope_vertices(k);
          return *std::max_element(verts.begin(), verts.end(), [&](const Point& a, const Point& b) {
            return a.dot(u) < b.dot(u);
          });
        }
      },
      k.shape());
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<Point> outline(const Kernel& k, double radius, const Point& center) {
  require(k.dim() == 2, ErrorCode::dimension_mismatch, "outlines are only drawn in the plane");
  std::vector<Point> pts;
  if (k.is_polytope()) {
    const auto verts = polytope_vertices(k);
    Point mid = Point::Zero(2);
    for (const auto& v : verts) mid += v;
    mid /= double(verts.size());
    pts.assign(verts.begin(), verts.end());
    std::sort(pts.begin(), pts.end(), [&](const Point& a, const Point& b) {
      return std::atan2(a(1) - mid(1), a(0) - mid(0)) < std::atan2(b(1) - mid(1), b(0) - mid(0));
    });
  } else {
    for (int i = 0; i < kSamples; ++i) {
      const double t = 2.0 * std::numbers::pi * i / kSamples;
      pts.push_back(support(k, make_point({std::cos(t), std::sin(t)})));
    }
  }
  for (auto& p : pts) p = radius * p + center;
  return pts;
}

std::string render_svg(const SvgScene& scene) {
  require(scene.kernel.dim() == 2, ErrorCode::dimension_mismatch, "render needs a planar kernel");
  const bool round = scene.kernel.as<shape::Ball>() != nullptr;

  struct Shape {
    std::vector<Point> poly;
    Point center;
    double radius;
    std::size_t layer;  // layers.size() for the reference kernel
  };
  std::vector<Shape> shapes;
  const Point origin = Point::Zero(2);
  shapes.push_back({outline(scene.kernel, 1.0, origin), origin, 1.0, scene.layers.size()});
  for (std::size_t i = 0; i < scene.layers.size(); ++i) {
    const auto& layer = scene.layers[i];
    require(layer.points.empty() || layer.points.dim() == 2, ErrorCode::dimension_mismatch,
            "render needs planar points");
    if (layer.solution)
      shapes.push_back({outline(scene.kernel, layer.solution->radius, layer.solution->center),
                        layer.solution->center, layer.solution->radius, i});
  }

  Eigen::Vector2d lo = Eigen::Vector2d::Constant(std::numeric_limits<double>::infinity());
  Eigen::Vector2d hi = -lo;
  const auto grow = [&](const Point& p) {
    lo = lo.cwiseMin(Eigen::Vector2d(p));
    hi = hi.cwiseMax(Eigen::Vector2d(p));
  };
  for (const auto& s : shapes) {
    for (const auto& p : s.poly) grow(p);
    grow(s.center);
  }
  for (const auto& layer : scene.layers)
    for (const auto& p : layer.points) grow(p);
  const double span = std::max({hi(0) - lo(0), hi(1) - lo(1), 1e-9});
  const double unit = (kSize - 2.0 * kPad) / span;
  const Eigen::Vector2d mid = 0.5 * (lo + hi);
  const auto px = [&](const Point& p) { return kSize / 2 + (p(0) - mid(0)) * unit; };
  const auto py = [&](const Point& p) { return kSize / 2 - (p(1) - mid(1)) * unit; };
  const auto sx = [&](const Point& p) { return num(px(p)); };
  const auto sy = [&](const Point& p) { return num(py(p)); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
  out << "<rect width=\"600\" height=\"600\" fill=\"#ffffff\"/>\n";
  for (const auto& s : shapes) {
    const bool ref = s.layer == scene.layers.size();
    const std::string color = ref ? "#7f7f7f" : kColors[s.layer % kColors.size()];
    const std::string style = " fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"" +
                              (ref ? " stroke-dasharray=\"6 4\"" : "");
    if (!ref && s.radius == 0.0) {
      out << "<circle cx=\"" << sx(s.center) << "\" cy=\"" << sy(s.center)
          << "\" r=\"7.000\"" << style << "/>\n";
    } else if (round) {
      out << "<circle cx=\"" << sx(s.center) << "\" cy=\"" << sy(s.center) << "\" r=\""
          << num(s.radius * unit) << "\"" << style << "/>\n";
    } else {
      out << "<polygon points=\"";
      for (std::size_t i = 0; i < s.poly.size(); ++i)
        out << (i ? " " : "") << sx(s.poly[i]) << "," << sy(s.poly[i]);
      out << "\"" << style << "/>\n";
    }
  }
  for (std::size_t i = 0; i < scene.layers.size(); ++i) {
    const auto& layer = scene.layers[i];
    const char* color = kColors[i % kColors.size()];
    for (std::size_t j = 0; j < layer.points.size(); ++j) {
      const auto& p = layer.points[j];
      out << "<circle cx=\"" << sx(p) << "\" cy=\"" << sy(p) << "\" r=\"3.500\" fill=\"" << color
          << "\"/>\n";
      if (layer.points.has_labels())
        out << "<text x=\"" << num(px(p) + 6) << "\" y=\"" << num(py(p) - 6)
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">"
            << xml_escape(layer.points.label(j)) << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace circumdiv::cli
