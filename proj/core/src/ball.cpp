#include "circumdiv/ball.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <list>
#include <random>
#include <vector>

#include "circumdiv/error.hpp"

namespace circumdiv {

EnclosingBall circumball(std::span<const Point> support) {
  if (support.empty()) return {};
  const Point& p0 = support.front();
  if (support.size() == 1) return {p0, 0.0};

  // center = p0 + Q lambda with 2 Q^T Q lambda = diag(Q^T Q).
  const auto k = static_cast<Eigen::Index>(support.size() - 1);
  Matrix q(p0.size(), k);
  for (Eigen::Index j = 0; j < k; ++j) q.col(j) = support[static_cast<std::size_t>(j + 1)] - p0;
  const Matrix gram = q.transpose() * q;
  const Eigen::VectorXd rhs = 0.5 * gram.diagonal();
  const Eigen::VectorXd lambda = gram.completeOrthogonalDecomposition().solve(rhs);
  Point center = p0 + q * lambda;
  double radius = 0.0;
  for (const auto& p : support) radius = std::max(radius, (p - center).norm());
  return {std::move(center), radius};
}

namespace {

class MoveToFront {
 public:
  MoveToFront(std::list<Point> pts, std::size_t dim, double eps)
      : pts_(std::move(pts)), dim_(dim), eps_(eps) {}

  EnclosingBall run() { return solve(pts_.end()); }

 private:
  bool inside(const EnclosingBall& b, const Point& p) const {
    return b.radius >= 0.0 && (p - b.center).norm() <= b.radius + eps_;
  }

  EnclosingBall solve(std::list<Point>::iterator end) {
    EnclosingBall ball = circumball(support_);
    if (support_.size() == dim_ + 1) return ball;
    for (auto it = pts_.begin(); it != end;) {
      auto next = std::next(it);
      if (!inside(ball, *it)) {
        support_.push_back(*it);
        ball = solve(it);
        support_.pop_back();
        pts_.splice(pts_.begin(), pts_, it);
      }
      it = next;
    }
    return ball;
  }

  std::list<Point> pts_;
  std::vector<Point> support_;
  std::size_t dim_;
  double eps_;
};

}  // namespace

EnclosingBall min_enclosing_ball(const PointSet& points, std::uint64_t seed) {
  require(!points.empty(), ErrorCode::invalid_input, "enclosing ball of an empty set");
  std::vector<Point> order = points.points();
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  double extent = 0.0;
  for (const auto& p : order) extent = std::max(extent, (p - order.front()).cwiseAbs().maxCoeff());
  const double eps = 1e-12 * std::max(1.0, extent);

  MoveToFront solver(std::list<Point>(order.begin(), order.end()), points.dim(), eps);
  return solver.run();
}

}  // namespace circumdiv
