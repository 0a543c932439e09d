#pragma once

#include <cstddef>
#include <memory>
#include <string_view>
#include <variant>
#include <vector>

#include "circumdiv/geom.hpp"

namespace circumdiv {

class Kernel;
using KernelPtr = std::shared_ptr<const Kernel>;

namespace shape {

/// { x : normals.row(i) . x <= offsets(i) for all i }
struct HPolytope {
  Matrix normals;
  Eigen::VectorXd offsets;
};

/// Euclidean unit ball.
struct Ball {
  std::size_t dim;
};

/// Image of the unit cube [0,1]^d under a non-degenerate affine map.
struct Parallelotope {
  AffineMap map;
  AffineMap inverse;
};

/// conv(0, e_1, ..., e_d) = { x >= 0 : sum x_i <= 1 }
struct SimplexPos {
  std::size_t dim;
};

/// -conv(0, e_1, ..., e_d) = { x <= 0 : sum x_i >= -1 }
struct SimplexNeg {
  std::size_t dim;
};

/// left x right, coordinates concatenated.
struct Product {
  KernelPtr left;
  KernelPtr right;
};

/// map(base) for a non-degenerate affine map.
struct AffineImage {
  AffineMap map;
  AffineMap inverse;
  KernelPtr base;
};

}  // namespace shape

/// A convex body (compact, convex, non-empty interior) in one of the
/// supported representations. Validated at construction and immutable.
class Kernel {
 public:
  using Variant = std::variant<shape::HPolytope, shape::Ball, shape::Parallelotope,
                               shape::SimplexPos, shape::SimplexNeg, shape::Product,
                               shape::AffineImage>;

  /// Rejects unbounded, empty or lower-dimensional polytopes with
  /// Error(invalid_kernel).
  static Kernel hpolytope(Matrix normals, Eigen::VectorXd offsets);
  static Kernel ball(std::size_t dim);
  static Kernel parallelotope(AffineMap map);
  static Kernel unit_cube(std::size_t dim);
  static Kernel simplex_pos(std::size_t dim);
  static Kernel simplex_neg(std::size_t dim);
  static Kernel product(Kernel left, Kernel right);
  static Kernel affine_image(AffineMap map, Kernel base);

  /// K + offset.
  static Kernel translated(Kernel base, const Point& offset);
  /// factor * K, factor > 0.
  static Kernel scaled(Kernel base, double factor);

  /// conv(points) for points in the plane, as an HPolytope.
  static Kernel polygon(const PointSet& points);

  std::size_t dim() const noexcept { return dim_; }
  const Variant& shape() const noexcept { return shape_; }
  std::string_view type_name() const noexcept;

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&shape_);
  }

  /// True for every variant except Ball (and images/products containing one).
  bool is_polytope() const noexcept;

 private:
  Kernel(Variant v, std::size_t dim) : shape_(std::move(v)), dim_(dim) {}

  Variant shape_;
  std::size_t dim_;
};

/// True iff y lies in scale * K, up to `tol` in the natural units of the
/// variant (slack of the violated inequality).
bool contains_scaled(const Kernel& k, double scale, const Point& y, double tol);

/// A point of K (an interior point for bodies that are not just a vertex
/// description).
Point reference_point(const Kernel& k);

/// Equivalent H-representation. Throws Error(invalid_kernel) when K is not
/// a polytope.
shape::HPolytope to_hpolytope(const Kernel& k);

/// Vertices of a polytope kernel (order is deterministic). For HPolytope
/// this enumerates d-subsets of facets and is limited to 10^6 subsets.
PointSet polytope_vertices(const Kernel& k);

}  // namespace circumdiv
