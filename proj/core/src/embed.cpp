#include "circumdiv/embed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "circumdiv/ball.hpp"
#include "circumdiv/error.hpp"
#include "circumdiv/parallel.hpp"

namespace circumdiv {

namespace {

constexpr std::size_t kChunks = 64;

Mask bit(std::size_t i) { return Mask{1} << i; }

bool close(double expected, double got, double tol) {
  return std::abs(expected - got) <= tol * std::max(1.0, std::abs(expected));
}

Point concat(const std::vector<Point>& parts) {
  Eigen::Index total = 0;
  for (const auto& p : parts) total += p.size();
  Point out(total);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    out.segment(at, p.size()) = p;
    at += p.size();
  }
  return out;
}

// First subset (in mask order) where value(mask) disagrees with the table.
template <class Fn>
std::optional<SubsetMismatch> first_mismatch(const FiniteDiversity& d, std::size_t max_size,
                                             double tol, Fn value) {
  const std::size_t total = std::size_t{1} << d.size();
  const std::size_t chunks = std::min(total, kChunks);
  std::vector<std::optional<SubsetMismatch>> found(chunks);
  parallel_chunks(total, chunks, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      const Mask m = static_cast<Mask>(s);
      const auto k = static_cast<std::size_t>(popcount(m));
      if (k < 2 || (max_size != 0 && k > max_size)) continue;
      const double got = value(m);
      if (!close(d[m], got, tol)) {
        found[c] = SubsetMismatch{m, d[m], got};
        return;
      }
    }
  });
  for (auto& f : found)
    if (f) return f;
  return std::nullopt;
}

}  // namespace

FiniteDiversity Embedding::diversity(const SolveOptions& opt) const {
  return kernel_diversity(points, kernel, opt);
}

Embedding Embedding::verified(PointSet points, Kernel kernel, const FiniteDiversity& target,
                              std::size_t max_size, double tol) {
  require(points.size() == target.size(), ErrorCode::internal,
          "embedding point count differs from the ground set");
  require(points.dim() == kernel.dim(), ErrorCode::internal,
          "embedding points and kernel dimensions differ");
  if (points.labels() != target.labels()) {
    std::vector<Point> raw(points.begin(), points.end());
    points = PointSet(std::move(raw), target.labels());
  }
  const auto bad = first_mismatch(target, max_size, tol, [&](Mask m) {
    return circumradius(points.subset(std::uint64_t{m}), kernel).radius;
  });
  if (bad)
    fail(ErrorCode::internal, "embedding check failed on {" + target.name(bad->subset) +
                                  "}: expected " + std::to_string(bad->expected) + ", got " +
                                  std::to_string(bad->got));
  return {std::move(points), std::move(kernel)};
}

SymmetricCheck symmetric_embeddable(const FiniteDiversity& d) {
  const auto f = symmetric_profile(d).f;
  SymmetricCheck out;
  for (std::size_t k = 3; k <= f.size(); ++k) {
    const double lo = f[k - 2], hi = f[k - 1];
    const double bound = double(k - 2) / double(k - 1);
    if (hi < lo) return {false, k, hi > 0.0 ? lo / hi : std::numeric_limits<double>::infinity(), bound, "not_monotone"};
    if (hi == 0.0) continue;
    const double ratio = lo / hi;
    if (ratio < bound - 1e-12) return {false, k, ratio, bound, "criterion"};
  }
  if (f.size() >= 2 && f[1] < f[0]) return {false, 2, 0.0, 0.0, "not_monotone"};
  return out;
}

std::size_t symmetric_embed_dim(std::size_t n) {
  std::size_t dim = 1;
  for (std::size_t m = 3; m <= n; ++m) dim = (m - 1) * dim + (m - 1);
  return dim;
}

Embedding symmetric_embed(const FiniteDiversity& d, const SymmetricEmbedOptions& opt) {
  const std::size_t n = d.size();
  require(n >= 1, ErrorCode::invalid_input, "symmetric_embed needs a non-empty ground set");
  const auto check = symmetric_embeddable(d);
  if (!check.embeddable)
    fail(ErrorCode::criterion_failed,
         "symmetric criterion fails at k = " + std::to_string(check.k) + " (" + check.reason + ")");
  const std::size_t dim = symmetric_embed_dim(n);
  require(dim <= opt.max_dim, ErrorCode::budget_exceeded,
          "symmetric embedding of " + std::to_string(n) + " labels needs dimension " +
              std::to_string(dim) + " > " + std::to_string(opt.max_dim));
  const auto f = symmetric_profile(d).f;

  std::vector<Point> pts{Point::Zero(1)};
  if (n >= 2) pts.push_back(Point::Constant(1, f[1]));
  Kernel k = Kernel::simplex_pos(1);

  for (std::size_t m = 3; m <= n; ++m) {
    // m - 1 copies of the previous stage, copy i sending the new label to
    // label i, then the scaled vertices of the negative simplex.
    const double s = f[m - 1] / double(m - 1);
    const auto sd = static_cast<Eigen::Index>(m - 1);
    Kernel next = Kernel::simplex_pos(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) next = Kernel::product(k, next);
    std::vector<Point> grown;
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Point> parts;
      for (std::size_t i = 0; i + 1 < m; ++i) parts.push_back(j + 1 == m ? pts[i] : pts[j]);
      Point tail = Point::Zero(sd);
      if (j > 0) tail(static_cast<Eigen::Index>(j - 1)) = -s;
      parts.push_back(tail);
      grown.push_back(concat(parts));
    }
    pts = std::move(grown);
    k = std::move(next);
  }
  return Embedding::verified(PointSet(std::move(pts), d.labels()), std::move(k), d);
}

Embedding three_point_embed(const FiniteDiversity& d) {
  require(d.size() == 3, ErrorCode::invalid_input, "three_point_embed needs exactly 3 labels");
  const double p = d[0b011];
  require(p > 0.0 && close(p, d[0b101], 1e-9) && close(p, d[0b110], 1e-9),
          ErrorCode::invalid_input, "three_point_embed needs three equal positive pair values");
  const double x = d[0b111] / p;
  require(x >= 1.0 - 1e-9 && x <= 2.0 + 1e-9, ErrorCode::invalid_input,
          "triple value must lie between 1 and 2 times the pair value");
  // Unit simplex vertices against the simplex (all values 1), times the
  // negated vertices scaled by x/2 (values (x/2)(|A|-1)), scaled by p.
  const Matrix e = Matrix::Identity(2, 2);
  std::vector<Point> pts;
  for (Eigen::Index j = 0; j < 3; ++j) {
    const Point first = j == 0 ? Point::Zero(2) : Point(e.col(j - 1));
    const Point second = j == 0 ? Point::Zero(2) : Point(-(x / 2.0) * e.col(j - 1));
    pts.push_back(p * concat({first, second}));
  }
  return Embedding::verified(PointSet(std::move(pts), d.labels()),
                             Kernel::product(Kernel::simplex_pos(2), Kernel::simplex_pos(2)), d);
}

Embedding diameter_embed(const FiniteDiversity& d) {
  require(d.size() >= 1, ErrorCode::invalid_input, "diameter_embed needs a non-empty ground set");
  const Mask w = diameter_witness(d);
  if (w != 0)
    fail(ErrorCode::not_diameter, "value on {" + d.name(w) +
                                      "} is not the largest pair value; no parallelotope embedding");
  const Matrix m = induced_metric(d);
  std::vector<Point> pts;
  for (Eigen::Index j = 0; j < m.cols(); ++j) pts.push_back(m.col(j));
  return Embedding::verified(PointSet(std::move(pts), d.labels()), Kernel::unit_cube(d.size()), d);
}

double delta_neg(const PointSet& a) {
  if (a.size() <= 1) return 0.0;
  const Matrix m = a.as_matrix();
  return m.colwise().maxCoeff().sum() - m.rowwise().sum().minCoeff();
}

FiniteDiversity simplex_embed_verify(const PointSet& p) {
  require(p.size() <= kMaxGroundSet, ErrorCode::invalid_input,
          "finite diversities are limited to 16 points");
  const auto table = FiniteDiversity::from_function(
      p.labels_or_default(), [&](Mask m) { return delta_neg(p.subset(std::uint64_t{m})); });
  const auto h = to_hpolytope(Kernel::simplex_neg(p.dim()));
  const auto bad = first_mismatch(table, 0, 1e-6, [&](Mask m) {
    return circumradius_lp(p.subset(std::uint64_t{m}), h).radius;
  });
  if (bad)
    fail(ErrorCode::internal, "negative simplex LP disagrees with the closed form on {" +
                                  table.name(bad->subset) + "}");
  return table;
}

double negative_type_form(const FiniteDiversity& d, const std::vector<double>& x) {
  const std::size_t total = d.values().size();
  require(x.size() + 1 == total, ErrorCode::invalid_input,
          "quadratic form vector needs one entry per non-empty subset");
  double sum = 0.0;
  for (std::size_t a = 1; a < total; ++a)
    for (std::size_t b = 1; b < total; ++b)
      sum += x[a - 1] * x[b - 1] * d[static_cast<Mask>(a | b)];
  return sum;
}

NegTypeReport negative_type_check(const FiniteDiversity& d) {
  require(d.size() <= kMaxNegTypeLabels, ErrorCode::invalid_input,
          "negative type check is limited to 6 labels");
  NegTypeReport rep;
  const auto n = static_cast<Eigen::Index>(d.values().size()) - 1;
  if (n <= 1) return rep;
  Matrix m(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) m(a, b) = d[static_cast<Mask>((a + 1) | (b + 1))];

  // Orthonormal basis of the zero-sum subspace from {e_j - e_0}.
  Matrix basis = Matrix::Zero(n, n - 1);
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    basis(0, j) = -1.0;
    basis(j + 1, j) = 1.0;
  }
  const Eigen::HouseholderQR<Matrix> qr(basis);
  const Matrix u = qr.householderQ() * Matrix::Identity(n, n - 1);
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(u.transpose() * m * u);
  require(eig.info() == Eigen::Success, ErrorCode::numerical, "eigen decomposition failed");

  rep.max_eigenvalue = eig.eigenvalues()(n - 2);
  rep.threshold = 1e-8 * (1.0 + m.cwiseAbs().maxCoeff());
  if (rep.max_eigenvalue <= rep.threshold) return rep;

  rep.is_negative_type = false;
  Eigen::VectorXd w = u * eig.eigenvectors().col(n - 2);
  w /= w.cwiseAbs().maxCoeff();
  rep.witness.assign(w.data(), w.data() + w.size());
  rep.witness_value = negative_type_form(d, rep.witness);
  return rep;
}

double subset_bound_excess(const FiniteDiversity& d) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 1; s < d.values().size(); ++s) {
    const Mask m = static_cast<Mask>(s);
    const int size = popcount(m);
    if (size < 3) continue;
    const double k = size - 1;
    double sum = 0.0;
    for (Mask q = m; q != 0; q &= q - 1) sum += d[m & ~(q & -q)];
    worst = std::max(worst, d[m] - k / ((k + 1.0) * (k - 1.0)) * sum);
  }
  return worst;
}

std::string_view to_string(BallReason r) noexcept {
  switch (r) {
    case BallReason::ok: return "Ok";
    case BallReason::metric_not_euclidean: return "MetricNotEuclidean";
    case BallReason::rank_exceeds_d: return "RankExceedsD";
    case BallReason::subset_mismatch: return "SubsetMismatch";
  }
  return "Ok";
}

BallDecision ball_embed_decide(const FiniteDiversity& d, std::size_t dim, const SolveOptions& opt) {
  const std::size_t n = d.size();
  require(n >= 1, ErrorCode::invalid_input, "ball_embed_decide needs a non-empty ground set");
  require(dim >= 1 && dim <= kMaxDimension, ErrorCode::invalid_input, "dimension out of range");

  // Precondition: every value is the max over its subsets of size <= dim+1.
  std::vector<double> g(d.values().size(), 0.0);
  for (std::size_t s = 1; s < g.size(); ++s) {
    const Mask m = static_cast<Mask>(s);
    if (static_cast<std::size_t>(popcount(m)) <= dim + 1) {
      g[s] = d[m];
      continue;
    }
    for (Mask q = m; q != 0; q &= q - 1) g[s] = std::max(g[s], g[m & ~(q & -q)]);
    if (!close(d[m], g[s], 1e-6))
      fail(ErrorCode::precondition_unmet,
           "value on {" + d.name(m) + "} is not the max over its subsets of size <= " +
               std::to_string(dim + 1));
  }

  BallDecision out;
  const auto& labels = d.labels();
  const auto anchor = static_cast<std::size_t>(
      std::min_element(labels.begin(), labels.end()) - labels.begin());
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < n; ++i)
    if (i != anchor) others.push_back(i);
  const auto sq = [&](std::size_t i, std::size_t j) {
    const double dist = i == j ? 0.0 : 2.0 * d[bit(i) | bit(j)];
    return dist * dist;
  };

  const auto k = static_cast<Eigen::Index>(others.size());
  std::vector<Point> pts(n, Point::Zero(static_cast<Eigen::Index>(dim)));
  if (k > 0) {
    Matrix gram(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) {
        const auto oi = others[static_cast<std::size_t>(i)], oj = others[static_cast<std::size_t>(j)];
        gram(i, j) = 0.5 * (sq(anchor, oi) + sq(anchor, oj) - sq(oi, oj));
      }
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
    require(eig.info() == Eigen::Success, ErrorCode::numerical, "eigen decomposition failed");
    const Eigen::VectorXd ev = eig.eigenvalues().reverse();
    const Matrix vecs = eig.eigenvectors().rowwise().reverse();
    out.eigenvalues.assign(ev.data(), ev.data() + ev.size());

    const double trace = gram.trace();
    const double scale = trace > 0.0 ? trace : gram.cwiseAbs().maxCoeff();
    if (ev(k - 1) < -1e-8 * scale) {
      out.reason = BallReason::metric_not_euclidean;
      return out;
    }
    for (Eigen::Index i = 0; i < k; ++i) {
      if (ev(i) > 1e-6 * scale) {
        ++out.rank;
      } else if (ev(i) > 1e-10 * scale) {
        out.warnings.push_back("eigenvalue " + std::to_string(ev(i)) +
                               " is between 1e-10 and 1e-6 of the trace; treated as zero");
      }
    }
    if (out.rank > dim) {
      out.reason = BallReason::rank_exceeds_d;
      return out;
    }
    // small eigenvalues still carry geometry; keep every coordinate that fits
    const auto cols = std::min(k, static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index col = 0; col < cols; ++col)
        pts[others[static_cast<std::size_t>(i)]](col) = vecs(i, col) * std::sqrt(std::max(ev(col), 0.0));
  }

  const PointSet psi(pts, labels);
  const auto bad = first_mismatch(d, dim + 1, 1e-6, [&](Mask m) {
    return min_enclosing_ball(psi.subset(std::uint64_t{m}), opt.seed).radius;
  });
  if (bad) {
    out.reason = BallReason::subset_mismatch;
    out.mismatch = bad;
    return out;
  }
  out.embeddable = true;
  out.embedding = Embedding::verified(psi, Kernel::ball(dim), d, dim + 1);
  return out;
}

}  // namespace circumdiv
