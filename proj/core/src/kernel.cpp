#include "circumdiv/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "circumdiv/error.hpp"
#include "circumdiv/linprog.hpp"

namespace circumdiv {

namespace {

constexpr double kDegeneracyTolerance = 1e-9;
constexpr std::size_t kVertexBudget = 1'000'000;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Largest inscribed-ball radius (capped at 1) and its center; status
// other than optimal means the polytope is empty.
struct InteriorProbe {
  bool feasible;
  double slack;
  Point center;
};

InteriorProbe probe_interior(const Matrix& normals, const Eigen::VectorXd& offsets) {
  const auto m = normals.rows();
  const auto d = normals.cols();
  lp::LinearProgram prog;
  prog.objective = Eigen::VectorXd::Zero(d + 1);
  prog.objective(d) = -1.0;
  prog.constraints.resize(m, d + 1);
  prog.constraints.leftCols(d) = normals;
  prog.constraints.col(d) = normals.rowwise().norm();
  prog.bounds = offsets;
  prog.lower = Eigen::VectorXd::Constant(d + 1, -std::numeric_limits<double>::infinity());
  prog.upper = Eigen::VectorXd::Constant(d + 1, std::numeric_limits<double>::infinity());
  prog.upper(d) = 1.0;
  const auto res = lp::solve(prog);
  if (res.status != lp::Status::optimal) return {false, 0.0, Point()};
  return {true, res.solution(d), res.solution.head(d)};
}

void validate_hpolytope(const Matrix& normals, const Eigen::VectorXd& offsets) {
  const auto m = normals.rows();
  const auto d = normals.cols();
  require(d >= 1, ErrorCode::invalid_kernel, "hpolytope needs dimension >= 1");
  require(offsets.size() == m, ErrorCode::invalid_kernel,
          "hpolytope offsets length differs from normal count");
  require(m >= d + 1, ErrorCode::invalid_kernel,
          "hpolytope needs at least dim + 1 halfspaces to be bounded");
  require(normals.array().isFinite().all() && offsets.array().isFinite().all(),
          ErrorCode::invalid_kernel, "hpolytope entries must be finite");
  for (Eigen::Index i = 0; i < m; ++i)
    require(normals.row(i).norm() > 0.0, ErrorCode::invalid_kernel,
            "hpolytope normals must be non-zero");

  for (Eigen::Index i = 0; i < d; ++i) {
    for (double sign : {1.0, -1.0}) {
      lp::LinearProgram prog;
      prog.objective = Eigen::VectorXd::Zero(d);
      prog.objective(i) = -sign;
      prog.constraints = normals;
      prog.bounds = offsets;
      const auto res = lp::solve(prog);
      require(res.status != lp::Status::infeasible, ErrorCode::invalid_kernel,
              "hpolytope is empty");
      require(res.status != lp::Status::unbounded, ErrorCode::invalid_kernel,
              "hpolytope is unbounded");
    }
  }
  const auto probe = probe_interior(normals, offsets);
  require(probe.feasible && probe.slack > kDegeneracyTolerance, ErrorCode::invalid_kernel,
          "hpolytope has empty interior");
}

Matrix inverse_matrix(const AffineMap& map) { return map.inverse().matrix(); }

std::vector<Point> cartesian(const PointSet& left, const PointSet& right) {
  std::vector<Point> out;
  out.reserve(left.size() * right.size());
  for (const auto& a : left)
    for (const auto& b : right) {
      Point p(a.size() + b.size());
      p << a, b;
      out.push_back(std::move(p));
    }
  return out;
}

// Andrew's monotone chain; counter-clockwise, collinear points dropped.
std::vector<Point> convex_hull_2d(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point& a, const Point& b) { return (a.array() == b.array()).all(); }),
            pts.end());
  if (pts.size() < 3) return pts;
  const auto cross = [](const Point& o, const Point& a, const Point& b) {
    return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
  };
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

Kernel Kernel::hpolytope(Matrix normals, Eigen::VectorXd offsets) {
  validate_hpolytope(normals, offsets);
  const auto d = static_cast<std::size_t>(normals.cols());
  return Kernel(shape::HPolytope{std::move(normals), std::move(offsets)}, d);
}

Kernel Kernel::ball(std::size_t dim) {
  require(dim >= 1 && dim <= kMaxDimension, ErrorCode::invalid_kernel, "ball dimension out of range");
  return Kernel(shape::Ball{dim}, dim);
}

Kernel Kernel::parallelotope(AffineMap map) {
  require(map.is_nondegenerate(kDegeneracyTolerance), ErrorCode::invalid_kernel,
          "parallelotope map must be non-degenerate");
  const auto d = map.in_dim();
  auto inv = map.inverse();
  return Kernel(shape::Parallelotope{std::move(map), std::move(inv)}, d);
}

Kernel Kernel::unit_cube(std::size_t dim) {
  require(dim >= 1 && dim <= kMaxDimension, ErrorCode::invalid_kernel, "cube dimension out of range");
  return parallelotope(AffineMap::identity(dim));
}

Kernel Kernel::simplex_pos(std::size_t dim) {
  require(dim >= 1 && dim <= kMaxDimension, ErrorCode::invalid_kernel,
          "simplex dimension out of range");
  return Kernel(shape::SimplexPos{dim}, dim);
}

Kernel Kernel::simplex_neg(std::size_t dim) {
  require(dim >= 1 && dim <= kMaxDimension, ErrorCode::invalid_kernel,
          "simplex dimension out of range");
  return Kernel(shape::SimplexNeg{dim}, dim);
}

Kernel Kernel::product(Kernel left, Kernel right) {
  const auto d = left.dim() + right.dim();
  return Kernel(shape::Product{std::make_shared<const Kernel>(std::move(left)),
                               std::make_shared<const Kernel>(std::move(right))},
                d);
}

Kernel Kernel::affine_image(AffineMap map, Kernel base) {
  require(map.is_nondegenerate(kDegeneracyTolerance), ErrorCode::invalid_kernel,
          "affine image needs a non-degenerate map");
  require(map.in_dim() == base.dim(), ErrorCode::dimension_mismatch,
          "affine image map dimension differs from base kernel");
  const auto d = map.out_dim();
  auto inv = map.inverse();
  return Kernel(shape::AffineImage{std::move(map), std::move(inv),
                                   std::make_shared<const Kernel>(std::move(base))},
                d);
}

Kernel Kernel::translated(Kernel base, const Point& offset) {
  return affine_image(AffineMap::translation(offset), std::move(base));
}

Kernel Kernel::scaled(Kernel base, double factor) {
  require(factor > 0.0 && std::isfinite(factor), ErrorCode::invalid_kernel,
          "kernel scale factor must be positive");
  const auto d = base.dim();
  return affine_image(AffineMap::scaling(d, factor), std::move(base));
}

Kernel Kernel::polygon(const PointSet& points) {
  require(points.dim() == 2, ErrorCode::invalid_kernel, "polygon kernels are planar");
  const auto hull = convex_hull_2d(points.points());
  require(hull.size() >= 3, ErrorCode::invalid_kernel, "polygon hull is degenerate");
  const auto m = static_cast<Eigen::Index>(hull.size());
  Matrix normals(m, 2);
  Eigen::VectorXd offsets(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Point& p = hull[static_cast<std::size_t>(i)];
    const Point& q = hull[static_cast<std::size_t>((i + 1) % m)];
    normals(i, 0) = q(1) - p(1) + 0.0;  // + 0.0 turns -0 into 0
    normals(i, 1) = p(0) - q(0) + 0.0;
    offsets(i) = normals.row(i).dot(p) + 0.0;
  }
  return hpolytope(std::move(normals), std::move(offsets));
}

std::string_view Kernel::type_name() const noexcept {
  return std::visit(overloaded{
                        [](const shape::HPolytope&) { return std::string_view("hpolytope"); },
                        [](const shape::Ball&) { return std::string_view("ball"); },
                        [](const shape::Parallelotope&) { return std::string_view("parallelotope"); },
                        [](const shape::SimplexPos&) { return std::string_view("simplex_pos"); },
                        [](const shape::SimplexNeg&) { return std::string_view("simplex_neg"); },
                        [](const shape::Product&) { return std::string_view("product"); },
                        [](const shape::AffineImage&) { return std::string_view("affine_image"); },
                    },
                    shape_);
}

bool Kernel::is_polytope() const noexcept {
  return std::visit(overloaded{
                        [](const shape::Ball&) { return false; },
                        [](const shape::Product& p) {
                          return p.left->is_polytope() && p.right->is_polytope();
                        },
                        [](const shape::AffineImage& a) { return a.base->is_polytope(); },
                        [](const auto&) { return true; },
                    },
                    shape_);
}

bool contains_scaled(const Kernel& k, double scale, const Point& y, double tol) {
  require(static_cast<std::size_t>(y.size()) == k.dim(), ErrorCode::dimension_mismatch,
          "containment test dimension mismatch");
  return std::visit(
      overloaded{
          [&](const shape::HPolytope& h) {
            return ((h.normals * y - scale * h.offsets).array() <= tol).all();
          },
          [&](const shape::Ball&) { return y.norm() <= scale + tol; },
          [&](const shape::Parallelotope& p) {
            // scale * map(cube) = { M u + scale * b : u in scale * cube }
            const Point u = p.inverse.matrix() * (y - scale * p.map.offset());
            return (u.array() >= -tol).all() && (u.array() <= scale + tol).all();
          },
          [&](const shape::SimplexPos&) {
            return (y.array() >= -tol).all() && y.sum() <= scale + tol;
          },
          [&](const shape::SimplexNeg&) {
            return (y.array() <= tol).all() && y.sum() >= -scale - tol;
          },
          [&](const shape::Product& p) {
            const auto dl = static_cast<Eigen::Index>(p.left->dim());
            const auto dr = static_cast<Eigen::Index>(p.right->dim());
            return contains_scaled(*p.left, scale, y.head(dl), tol) &&
                   contains_scaled(*p.right, scale, y.tail(dr), tol);
          },
          [&](const shape::AffineImage& a) {
            const Point pulled = a.inverse.matrix() * (y - scale * a.map.offset());
            return contains_scaled(*a.base, scale, pulled, tol);
          },
      },
      k.shape());
}

Point reference_point(const Kernel& k) {
  return std::visit(
      overloaded{
          [&](const shape::HPolytope& h) {
            const auto probe = probe_interior(h.normals, h.offsets);
            require(probe.feasible, ErrorCode::internal, "validated polytope lost its interior");
            return probe.center;
          },
          [&](const shape::Ball& b) { return Point(Point::Zero(static_cast<Eigen::Index>(b.dim))); },
          [&](const shape::Parallelotope& p) {
            return p.map(Point::Constant(static_cast<Eigen::Index>(k.dim()), 0.5));
          },
          [&](const shape::SimplexPos& s) {
            return Point(Point::Constant(static_cast<Eigen::Index>(s.dim), 1.0 / double(s.dim + 1)));
          },
          [&](const shape::SimplexNeg& s) {
            return Point(Point::Constant(static_cast<Eigen::Index>(s.dim), -1.0 / double(s.dim + 1)));
          },
          [&](const shape::Product& p) {
            Point out(static_cast<Eigen::Index>(k.dim()));
            out << reference_point(*p.left), reference_point(*p.right);
            return out;
          },
          [&](const shape::AffineImage& a) { return a.map(reference_point(*a.base)); },
      },
      k.shape());
}

shape::HPolytope to_hpolytope(const Kernel& k) {
  const auto d = static_cast<Eigen::Index>(k.dim());
  return std::visit(
      overloaded{
          [&](const shape::HPolytope& h) { return h; },
          [&](const shape::Ball&) -> shape::HPolytope {
            fail(ErrorCode::invalid_kernel, "the Euclidean ball has no H-representation");
          },
          [&](const shape::Parallelotope& p) {
            // u = W (x - b) in [0,1]^d, W = M^-1.
            const Matrix w = inverse_matrix(p.map);
            const Eigen::VectorXd wb = w * p.map.offset();
            shape::HPolytope h{Matrix(2 * d, d), Eigen::VectorXd(2 * d)};
            h.normals.topRows(d) = w;
            h.offsets.head(d) = Eigen::VectorXd::Ones(d) + wb;
            h.normals.bottomRows(d) = -w;
            h.offsets.tail(d) = -wb;
            return h;
          },
          [&](const shape::SimplexPos&) {
            shape::HPolytope h{Matrix::Zero(d + 1, d), Eigen::VectorXd::Zero(d + 1)};
            h.normals.topRows(d) = -Matrix::Identity(d, d);
            h.normals.row(d).setOnes();
            h.offsets(d) = 1.0;
            return h;
          },
          [&](const shape::SimplexNeg&) {
            shape::HPolytope h{Matrix::Zero(d + 1, d), Eigen::VectorXd::Zero(d + 1)};
            h.normals.topRows(d) = Matrix::Identity(d, d);
            h.normals.row(d).setConstant(-1.0);
            h.offsets(d) = 1.0;
            return h;
          },
          [&](const shape::Product& p) {
            const auto l = to_hpolytope(*p.left);
            const auto r = to_hpolytope(*p.right);
            const auto ml = l.normals.rows();
            const auto mr = r.normals.rows();
            const auto dl = l.normals.cols();
            shape::HPolytope h{Matrix::Zero(ml + mr, d), Eigen::VectorXd(ml + mr)};
            h.normals.topLeftCorner(ml, dl) = l.normals;
            h.normals.bottomRightCorner(mr, d - dl) = r.normals;
            h.offsets << l.offsets, r.offsets;
            return h;
          },
          [&](const shape::AffineImage& a) {
            // base: n . k <= c with k = W (x - b)  =>  (W^T n) . x <= c + n . W b
            const auto base = to_hpolytope(*a.base);
            const Matrix w = a.inverse.matrix();
            shape::HPolytope h{base.normals * w,
                               base.offsets + base.normals * (w * a.map.offset())};
            return h;
          },
      },
      k.shape());
}

PointSet polytope_vertices(const Kernel& k) {
  const auto d = static_cast<Eigen::Index>(k.dim());
  return std::visit(
      overloaded{
          [&](const shape::HPolytope& h) {
            const auto m = static_cast<std::size_t>(h.normals.rows());
            // Budget check on C(m, d).
            double combos = 1.0;
            for (Eigen::Index i = 0; i < d; ++i)
              combos = combos * double(m - static_cast<std::size_t>(i)) / double(i + 1);
            require(combos <= double(kVertexBudget), ErrorCode::budget_exceeded,
                    "vertex enumeration exceeds the subset budget");
            const double scale = 1.0 + h.offsets.cwiseAbs().maxCoeff();
            std::vector<Point> verts;
            std::vector<std::size_t> pick(static_cast<std::size_t>(d));
            std::iota(pick.begin(), pick.end(), 0);
            for (;;) {
              Matrix a(d, d);
              Eigen::VectorXd b(d);
              for (Eigen::Index r = 0; r < d; ++r) {
                a.row(r) = h.normals.row(static_cast<Eigen::Index>(pick[static_cast<std::size_t>(r)]));
                b(r) = h.offsets(static_cast<Eigen::Index>(pick[static_cast<std::size_t>(r)]));
              }
              Eigen::FullPivLU<Matrix> lu(a);
              if (lu.isInvertible()) {
                const Point x = lu.solve(b);
                const bool feasible = ((h.normals * x - h.offsets).array() <= 1e-9 * scale).all();
                const bool fresh = std::none_of(verts.begin(), verts.end(), [&](const Point& v) {
                  return (v - x).cwiseAbs().maxCoeff() <= 1e-9 * scale;
                });
                if (feasible && fresh) verts.push_back(x);
              }
              // next combination
              std::size_t i = pick.size();
              while (i > 0 && pick[i - 1] == m - pick.size() + i - 1) --i;
              if (i == 0) break;
              ++pick[i - 1];
              for (std::size_t j = i; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
            }
            return PointSet(std::move(verts));
          },
          [&](const shape::Ball&) -> PointSet {
            fail(ErrorCode::invalid_kernel, "the Euclidean ball has no vertices");
          },
          [&](const shape::Parallelotope& p) {
            require(d <= 20, ErrorCode::budget_exceeded, "too many parallelotope vertices");
            std::vector<Point> verts;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
              Point u(d);
              for (Eigen::Index i = 0; i < d; ++i) u(i) = (mask >> i) & 1 ? 1.0 : 0.0;
              verts.push_back(p.map(u));
            }
            return PointSet(std::move(verts));
          },
          [&](const shape::SimplexPos&) {
            std::vector<Point> verts{Point::Zero(d)};
            for (Eigen::Index i = 0; i < d; ++i) verts.push_back(Point::Unit(d, i));
            return PointSet(std::move(verts));
          },
          [&](const shape::SimplexNeg&) {
            std::vector<Point> verts{Point::Zero(d)};
            for (Eigen::Index i = 0; i < d; ++i) verts.push_back(-Point::Unit(d, i));
            return PointSet(std::move(verts));
          },
          [&](const shape::Product& p) {
            return PointSet(cartesian(polytope_vertices(*p.left), polytope_vertices(*p.right)));
          },
          [&](const shape::AffineImage& a) { return apply_map(a.map, polytope_vertices(*a.base)); },
      },
      k.shape());
}

}  // namespace circumdiv
