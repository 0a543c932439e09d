#include "circumdiv/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "circumdiv/error.hpp"
#include "circumdiv/linprog.hpp"
#include "circumdiv/tolerance.hpp"

namespace circumdiv {

namespace {

bool same_coords(const Point& a, const Point& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

void check_dims(const PointSet& a, const PointSet& b, const char* what) {
  require(a.dim() == b.dim(), ErrorCode::dimension_mismatch,
          std::string(what) + ": dimensions " + std::to_string(a.dim()) + " and " +
              std::to_string(b.dim()) + " differ");
}

}  // namespace

PointSet PointSet::empty(std::size_t dim) {
  PointSet s;
  s.dim_ = dim;
  return s;
}

PointSet::PointSet(std::vector<Point> points, std::vector<std::string> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
  require(!points_.empty(), ErrorCode::invalid_input,
          "point set constructor needs at least one point (use PointSet::empty)");
  dim_ = static_cast<std::size_t>(points_.front().size());
  require(dim_ > 0 && dim_ <= kMaxDimension, ErrorCode::invalid_input,
          "point dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
  for (const auto& p : points_) {
    require(static_cast<std::size_t>(p.size()) == dim_, ErrorCode::dimension_mismatch,
            "points of a set must share one dimension");
    require(p.array().isFinite().all(), ErrorCode::invalid_input,
            "point coordinates must be finite");
  }
  if (!labels_.empty()) {
    require(labels_.size() == points_.size(), ErrorCode::invalid_input,
            "label count differs from point count");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    require(seen.size() == labels_.size(), ErrorCode::invalid_input, "labels must be unique");
  }
}

PointSet PointSet::of(std::initializer_list<std::initializer_list<double>> rows,
                      std::vector<std::string> labels) {
  std::vector<Point> pts;
  pts.reserve(rows.size());
  for (const auto& r : rows) pts.push_back(make_point(r));
  return PointSet(std::move(pts), std::move(labels));
}

std::string PointSet::label(std::size_t i) const {
  return labels_.empty() ? "p" + std::to_string(i) : labels_[i];
}

std::vector<std::string> PointSet::labels_or_default() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(label(i));
  return out;
}

PointSet PointSet::subset(std::uint64_t mask) const {
  require(size() <= 64 || (mask >> 63) == 0, ErrorCode::invalid_input,
          "bitmask subsets need at most 64 points");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < size() && i < 64; ++i)
    if (mask & (std::uint64_t{1} << i)) idx.push_back(i);
  return subset(idx);
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
  if (indices.empty()) return empty(dim_);
  std::vector<Point> pts;
  std::vector<std::string> labs;
  for (std::size_t i : indices) {
    require(i < size(), ErrorCode::invalid_input, "subset index out of range");
    pts.push_back(points_[i]);
    if (has_labels()) labs.push_back(labels_[i]);
  }
  return PointSet(std::move(pts), std::move(labs));
}

PointSet PointSet::without(std::size_t i) const {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < size(); ++j)
    if (j != i) idx.push_back(j);
  return subset(idx);
}

PointSet PointSet::translated(const Point& offset) const {
  require(static_cast<std::size_t>(offset.size()) == dim_, ErrorCode::dimension_mismatch,
          "translation vector dimension differs from point set");
  if (empty()) return *this;
  std::vector<Point> pts = points_;
  for (auto& p : pts) p += offset;
  return PointSet(std::move(pts), labels_);
}

PointSet PointSet::scaled(double factor) const {
  if (empty()) return *this;
  std::vector<Point> pts = points_;
  for (auto& p : pts) p *= factor;
  return PointSet(std::move(pts), labels_);
}

PointSet PointSet::united(const PointSet& other) const {
  if (empty()) return other.empty() ? *this : PointSet(other.points_);
  if (other.empty()) return PointSet(points_);
  check_dims(*this, other, "union");
  std::vector<Point> pts;
  for (const auto* src : {&points_, &other.points_})
    for (const auto& p : *src)
      if (std::none_of(pts.begin(), pts.end(), [&](const Point& q) { return same_coords(p, q); }))
        pts.push_back(p);
  return PointSet(std::move(pts));
}

PointSet PointSet::project(std::size_t first, std::size_t count) const {
  require(first + count <= dim_ && count > 0, ErrorCode::dimension_mismatch,
          "projection range outside point dimension");
  if (empty()) return empty(count);
  std::vector<Point> pts;
  pts.reserve(size());
  for (const auto& p : points_)
    pts.push_back(p.segment(static_cast<Eigen::Index>(first), static_cast<Eigen::Index>(count)));
  return PointSet(std::move(pts), labels_);
}

Matrix PointSet::as_matrix() const {
  Matrix m(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < size(); ++i) m.row(static_cast<Eigen::Index>(i)) = points_[i];
  return m;
}

AffineMap::AffineMap(Matrix matrix, Point offset)
    : matrix_(std::move(matrix)), offset_(std::move(offset)) {
  require(matrix_.rows() == offset_.size(), ErrorCode::dimension_mismatch,
          "affine map offset length differs from matrix rows");
  require(matrix_.cols() > 0 && matrix_.rows() > 0, ErrorCode::invalid_input,
          "affine map needs a non-empty matrix");
  require(matrix_.array().isFinite().all() && offset_.array().isFinite().all(),
          ErrorCode::invalid_input, "affine map entries must be finite");
}

AffineMap AffineMap::identity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return {Matrix::Identity(d, d), Point::Zero(d)};
}

AffineMap AffineMap::translation(const Point& offset) {
  const auto d = offset.size();
  return {Matrix::Identity(d, d), offset};
}

AffineMap AffineMap::scaling(std::size_t dim, double factor) {
  const auto d = static_cast<Eigen::Index>(dim);
  return {factor * Matrix::Identity(d, d), Point::Zero(d)};
}

Point AffineMap::operator()(const Point& x) const {
  require(x.size() == matrix_.cols(), ErrorCode::dimension_mismatch,
          "affine map input dimension mismatch");
  return matrix_ * x + offset_;
}

bool AffineMap::is_nondegenerate(double tolerance) const {
  return matrix_.rows() == matrix_.cols() && std::abs(matrix_.determinant()) > tolerance;
}

AffineMap AffineMap::inverse() const {
  require(is_nondegenerate(), ErrorCode::invalid_input, "affine map is degenerate");
  Matrix inv = matrix_.fullPivLu().inverse();
  Point off = -inv * offset_;
  return {std::move(inv), std::move(off)};
}

AffineMap AffineMap::then(const AffineMap& next) const {
  require(next.in_dim() == out_dim(), ErrorCode::dimension_mismatch,
          "affine map composition dimension mismatch");
  return {next.matrix_ * matrix_, next.matrix_ * offset_ + next.offset_};
}

Point make_point(std::initializer_list<double> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) p(i++) = c;
  return p;
}

bool in_hull(const Point& p, const PointSet& s) {
  if (s.empty()) return false;
  require(static_cast<std::size_t>(p.size()) == s.dim(), ErrorCode::dimension_mismatch,
          "in_hull: point and set dimensions differ");
  // Variables (w_1..w_k, t): minimize t subject to
  //   |sum_j w_j s_j - p|_inf <= t,  sum_j w_j = 1,  w >= 0.
  const auto k = static_cast<Eigen::Index>(s.size());
  const auto d = static_cast<Eigen::Index>(s.dim());
  lp::LinearProgram prog;
  prog.objective = Eigen::VectorXd::Zero(k + 1);
  prog.objective(k) = 1.0;
  prog.constraints = Matrix::Zero(2 * d + 2, k + 1);
  prog.bounds = Eigen::VectorXd::Zero(2 * d + 2);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      prog.constraints(2 * i, j) = s[static_cast<std::size_t>(j)](i);
      prog.constraints(2 * i + 1, j) = -s[static_cast<std::size_t>(j)](i);
    }
    prog.constraints(2 * i, k) = -1.0;
    prog.constraints(2 * i + 1, k) = -1.0;
    prog.bounds(2 * i) = p(i);
    prog.bounds(2 * i + 1) = -p(i);
  }
  prog.constraints.row(2 * d).head(k).setOnes();
  prog.bounds(2 * d) = 1.0;
  prog.constraints.row(2 * d + 1).head(k).setConstant(-1.0);
  prog.bounds(2 * d + 1) = -1.0;
  prog.lower = Eigen::VectorXd::Zero(k + 1);
  const auto res = lp::solve(prog);
  require(res.optimal(), ErrorCode::internal, "in_hull LP did not reach optimality");
  return res.objective_value <= tolerances().absolute;
}

PointSet minkowski_sum(const PointSet& a, const PointSet& b) {
  check_dims(a, b, "minkowski_sum");
  if (a.empty() || b.empty()) return PointSet::empty(a.dim());
  std::vector<Point> pts;
  pts.reserve(a.size() * b.size());
  for (const auto& p : a)
    for (const auto& q : b) {
      Point s = p + q;
      if (std::none_of(pts.begin(), pts.end(), [&](const Point& r) { return same_coords(r, s); }))
        pts.push_back(std::move(s));
    }
  return PointSet(std::move(pts));
}

PointSet apply_map(const AffineMap& map, const PointSet& a) {
  require(map.in_dim() == a.dim(), ErrorCode::dimension_mismatch,
          "apply_map: map input dimension differs from point set");
  if (a.empty()) return PointSet::empty(map.out_dim());
  std::vector<Point> pts;
  pts.reserve(a.size());
  for (const auto& p : a) pts.push_back(map(p));
  return PointSet(std::move(pts), a.labels());
}

double hausdorff(const PointSet& a, const PointSet& b) {
  require(!a.empty() && !b.empty(), ErrorCode::invalid_input, "hausdorff: empty input");
  check_dims(a, b, "hausdorff");
  const auto directed = [](const PointSet& from, const PointSet& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& q : to) nearest = std::min(nearest, (p - q).norm());
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace circumdiv
