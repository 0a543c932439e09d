#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace circumdiv {

/// A point of R^d. Dimension is the vector length.
using Point = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr std::size_t kMaxDimension = 4096;

/// Finite list of points of one common dimension, optionally labeled.
///
/// Immutable once built; every coordinate is finite and labels (when
/// present) are unique.
class PointSet {
 public:
  /// Empty set in dimension 0.
  PointSet() = default;

  /// Empty set of the given dimension.
  static PointSet empty(std::size_t dim);

  /// Throws Error(invalid_input) on an empty list, mixed dimensions,
  /// non-finite coordinates or duplicate labels.
  explicit PointSet(std::vector<Point> points, std::vector<std::string> labels = {});

  /// Convenience for literals: PointSet::of({{0, 0}, {1, 0}}).
  static PointSet of(std::initializer_list<std::initializer_list<double>> rows,
                     std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  std::size_t dim() const noexcept { return dim_; }

  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const noexcept { return points_; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Stored label, or "p<i>" for unlabeled sets.
  std::string label(std::size_t i) const;
  /// Stored labels, or "p0", "p1", ... for unlabeled sets.
  std::vector<std::string> labels_or_default() const;

  /// Points selected by bit i of `mask` (requires size() <= 64).
  PointSet subset(std::uint64_t mask) const;
  PointSet subset(std::span<const std::size_t> indices) const;
  /// All points except index i.
  PointSet without(std::size_t i) const;

  PointSet translated(const Point& offset) const;
  PointSet scaled(double factor) const;
  /// Concatenation with exact-duplicate removal; labels are dropped.
  PointSet united(const PointSet& other) const;

  /// Coordinate-wise projection onto [first, first + count).
  PointSet project(std::size_t first, std::size_t count) const;

  /// Row i is point i.
  Matrix as_matrix() const;

 private:
  std::vector<Point> points_;
  std::vector<std::string> labels_;
  std::size_t dim_ = 0;
};

/// x -> matrix * x + offset.
class AffineMap {
 public:
  AffineMap(Matrix matrix, Point offset);

  static AffineMap identity(std::size_t dim);
  static AffineMap translation(const Point& offset);
  static AffineMap scaling(std::size_t dim, double factor);

  const Matrix& matrix() const noexcept { return matrix_; }
  const Point& offset() const noexcept { return offset_; }
  std::size_t in_dim() const noexcept { return static_cast<std::size_t>(matrix_.cols()); }
  std::size_t out_dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

  Point operator()(const Point& x) const;

  /// Square with |det| above `tolerance`.
  bool is_nondegenerate(double tolerance = 1e-9) const;
  /// Throws Error(invalid_input) unless non-degenerate.
  AffineMap inverse() const;
  /// x -> next(this(x)).
  AffineMap then(const AffineMap& next) const;

 private:
  Matrix matrix_;
  Point offset_;
};

/// Builds a Point from a literal.
Point make_point(std::initializer_list<double> coords);

/// True iff p lies in the convex hull of s, up to the global absolute
/// tolerance (decided by an LP over convex-combination weights).
bool in_hull(const Point& p, const PointSet& s);

/// All pairwise sums a + b, exact duplicates removed (first occurrence kept).
PointSet minkowski_sum(const PointSet& a, const PointSet& b);

PointSet apply_map(const AffineMap& map, const PointSet& a);

/// Hausdorff distance between finite sets under the Euclidean norm.
double hausdorff(const PointSet& a, const PointSet& b);

}  // namespace circumdiv
