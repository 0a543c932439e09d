#include "circumdiv/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "circumdiv/parallel.hpp"
#include "circumdiv/tolerance.hpp"

namespace circumdiv {

namespace {

constexpr std::size_t kChunks = 64;

Mask bit(std::size_t i) { return Mask{1} << i; }

int lowest(Mask m) { return __builtin_ctz(m); }

double slack(const AxiomOptions& opt, double scale) {
  if (opt.tolerance >= 0.0) return opt.tolerance;
  const auto t = tolerances();
  return t.absolute + t.relative * std::abs(scale);
}

void same_ground(const FiniteDiversity& a, const FiniteDiversity& b) {
  require(a.labels() == b.labels(), ErrorCode::invalid_input,
          "diversities are defined on different label lists");
}

}  // namespace

FiniteDiversity::FiniteDiversity(std::vector<std::string> labels, std::vector<double> values)
    : labels_(std::move(labels)), values_(std::move(values)) {
  require(labels_.size() <= kMaxGroundSet, ErrorCode::invalid_input,
          "ground sets are limited to 16 labels");
  require(std::set<std::string>(labels_.begin(), labels_.end()).size() == labels_.size(),
          ErrorCode::invalid_input, "diversity labels must be unique");
  require(values_.size() == (std::size_t{1} << labels_.size()), ErrorCode::invalid_input,
          "diversity table needs 2^n values");
  for (std::size_t m = 0; m < values_.size(); ++m) {
    const double v = values_[m];
    require(std::isfinite(v) && v >= 0.0, ErrorCode::invalid_input,
            "diversity values must be finite and non-negative (subset " +
                name(static_cast<Mask>(m)) + ")");
    if (popcount(static_cast<Mask>(m)) <= 1)
      require(v == 0.0, ErrorCode::invalid_input,
              "empty set and singletons must have value 0 (subset {" +
                  name(static_cast<Mask>(m)) + "})");
  }
}

FiniteDiversity FiniteDiversity::from_function(std::vector<std::string> labels,
                                               const std::function<double(Mask)>& fn) {
  require(labels.size() <= kMaxGroundSet, ErrorCode::invalid_input,
          "ground sets are limited to 16 labels");
  std::vector<double> values(std::size_t{1} << labels.size(), 0.0);
  for (std::size_t m = 0; m < values.size(); ++m)
    if (popcount(static_cast<Mask>(m)) >= 2) values[m] = fn(static_cast<Mask>(m));
  return {std::move(labels), std::move(values)};
}

double FiniteDiversity::value(Mask m) const {
  require(m <= full_mask(), ErrorCode::invalid_input, "subset mask outside the ground set");
  return values_[m];
}

std::size_t FiniteDiversity::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  require(it != labels_.end(), ErrorCode::invalid_input, "unknown label '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

Mask FiniteDiversity::mask_of(const std::vector<std::string>& labels) const {
  Mask m = 0;
  for (const auto& l : labels) m |= bit(index_of(l));
  return m;
}

std::vector<std::string> FiniteDiversity::members(Mask m) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (m & bit(i)) out.push_back(labels_[i]);
  return out;
}

std::string FiniteDiversity::name(Mask m) const {
  std::string out;
  for (const auto& l : members(m)) {
    if (!out.empty()) out += ',';
    out += l;
  }
  return out;
}

std::vector<std::string> default_labels(std::size_t n) {
  require(n <= kMaxGroundSet, ErrorCode::invalid_input, "ground sets are limited to 16 labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(1, static_cast<char>('a' + i));
  return out;
}

FiniteDiversity count_diversity(std::vector<std::string> labels) {
  return FiniteDiversity::from_function(std::move(labels),
                                        [](Mask m) { return double(popcount(m) - 1); });
}

FiniteDiversity constant_diversity(std::vector<std::string> labels, double c) {
  return FiniteDiversity::from_function(std::move(labels), [c](Mask) { return c; });
}

FiniteDiversity symmetric_diversity(std::vector<std::string> labels, const std::vector<double>& f) {
  require(f.size() == labels.size(), ErrorCode::invalid_input,
          "symmetric profile needs one value per cardinality 1..n");
  require(f.empty() || f[0] == 0.0, ErrorCode::invalid_input, "profile value for singletons must be 0");
  return FiniteDiversity::from_function(std::move(labels),
                                        [&](Mask m) { return f[static_cast<std::size_t>(popcount(m) - 1)]; });
}

AxiomReport check_axioms(const FiniteDiversity& d, const AxiomOptions& opt) {
  AxiomReport rep;
  const std::size_t n = d.size();
  const Mask full = d.full_mask();
  const auto room = [&] { return rep.violations.size() < opt.max_violations; };

  for (Mask m = 0; m <= full && n > 0; ++m) {
    if (popcount(m) >= 2 && !(d[m] > 0.0)) {
      rep.is_diversity = false;
      if (room()) rep.violations.push_back({"D1", {m}, -d[m]});
      if (!opt.full_report) break;
    }
    if (m == full) break;
  }

  bool stop = false;
  for (Mask m = 0; m <= full && n > 0 && !stop; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      if (m & bit(i)) continue;
      const Mask up = m | bit(i);
      const double deficit = d[m] - d[up];
      if (deficit > slack(opt, d[m])) {
        if (rep.is_monotone && room()) rep.violations.push_back({"D2", {m, bit(i), 0}, deficit});
        rep.is_monotone = false;
        if (room()) rep.violations.push_back({"monotone", {m, up}, deficit});
        if (!opt.full_report) {
          stop = true;
          break;
        }
      }
    }
    if (m == full) break;
  }

  // Reduced (D2) family, one chunk of U values per task.
  const std::size_t total = std::size_t{1} << n;
  const std::size_t chunks = std::min(total, kChunks);
  std::vector<std::vector<Violation>> found(chunks);
  parallel_chunks(total, chunks, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    auto& out = found[c];
    for (std::size_t u = lo; u < hi; ++u) {
      const Mask U = static_cast<Mask>(u);
      if (popcount(U) < 3) continue;
      const double top = d[U];
      const double tol = slack(opt, top);
      for (Mask P = (U - 1) & U; P != 0; P = (P - 1) & U) {
        if (popcount(P) < 2 || top <= d[P] + tol) continue;
        const Mask rest = U & ~P;
        double best = std::numeric_limits<double>::infinity();
        Mask best_b = 0;
        for (Mask q = P; q != 0; q &= q - 1) {
          const Mask b = bit(static_cast<std::size_t>(lowest(q)));
          if (d[rest | b] < best) {
            best = d[rest | b];
            best_b = b;
          }
        }
        const double deficit = top - d[P] - best;
        if (deficit > tol) {
          if (out.size() < opt.max_violations) out.push_back({"D2", {P, best_b, rest}, deficit});
          if (!opt.full_report) return;
        }
      }
    }
  });
  for (auto& chunk : found) {
    if (chunk.empty()) continue;
    rep.is_semidiversity = false;
    for (auto& v : chunk) {
      if (!room()) break;
      rep.violations.push_back(std::move(v));
    }
    if (!opt.full_report) break;
  }
  if (!rep.is_monotone) rep.is_semidiversity = false;
  if (!rep.is_semidiversity) rep.is_diversity = false;
  return rep;
}

Matrix induced_metric(const FiniteDiversity& d) {
  const auto n = static_cast<Eigen::Index>(d.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) m(i, j) = d[bit(static_cast<std::size_t>(i)) | bit(static_cast<std::size_t>(j))];
  return m;
}

FiniteDiversity diameter_diversity(const Matrix& m, std::vector<std::string> labels) {
  const auto n = m.rows();
  require(m.cols() == n, ErrorCode::invalid_input, "metric matrix must be square");
  if (labels.empty()) labels = default_labels(static_cast<std::size_t>(n));
  require(labels.size() == static_cast<std::size_t>(n), ErrorCode::invalid_input,
          "metric size differs from label count");
  require(m.array().isFinite().all(), ErrorCode::invalid_input, "metric entries must be finite");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i) {
    require(m(i, i) == 0.0, ErrorCode::invalid_input, "metric diagonal must be zero");
    for (Eigen::Index j = 0; j < n; ++j) {
      require(m(i, j) >= 0.0 && m(i, j) == m(j, i), ErrorCode::invalid_input,
              "metric must be symmetric and non-negative");
      for (Eigen::Index k = 0; k < n; ++k)
        require(m(i, k) <= m(i, j) + m(j, k) + 1e-9 * scale, ErrorCode::invalid_input,
                "metric violates the triangle inequality");
    }
  }
  std::vector<double> values(std::size_t{1} << n, 0.0);
  for (std::size_t s = 1; s < values.size(); ++s) {
    const auto hi = static_cast<Eigen::Index>(31 - __builtin_clz(static_cast<Mask>(s)));
    const Mask rest = static_cast<Mask>(s) & ~bit(static_cast<std::size_t>(hi));
    double v = values[rest];
    for (Mask q = rest; q != 0; q &= q - 1) v = std::max(v, m(hi, lowest(q)));
    values[s] = v;
  }
  return {std::move(labels), std::move(values)};
}

Mask diameter_witness(const FiniteDiversity& d, double tol) {
  const auto diam = diameter_diversity(induced_metric(d), d.labels());
  for (Mask m = 1; m <= d.full_mask() && m != 0; ++m) {
    if (std::abs(d[m] - diam[m]) > tol * std::max(1.0, d[m])) return m;
    if (m == d.full_mask()) break;
  }
  return 0;
}

bool is_diameter(const FiniteDiversity& d, double tol) { return diameter_witness(d, tol) == 0; }

double l1_value(const PointSet& a) {
  if (a.size() <= 1) return 0.0;
  const Matrix m = a.as_matrix();
  return (m.colwise().maxCoeff() - m.colwise().minCoeff()).sum();
}

DiversityOracle l1_oracle() {
  return [](const PointSet& a) { return l1_value(a); };
}

FiniteDiversity l1_diversity(const PointSet& p) {
  require(p.size() <= kMaxGroundSet, ErrorCode::invalid_input,
          "finite diversities are limited to 16 points");
  return FiniteDiversity::from_function(p.labels_or_default(),
                                        [&](Mask m) { return l1_value(p.subset(m)); });
}

FiniteDiversity kernel_diversity(const PointSet& p, const Kernel& k, const SolveOptions& opt) {
  require(p.size() <= kMaxGroundSet, ErrorCode::invalid_input,
          "finite diversities are limited to 16 points");
  require(p.dim() == k.dim(), ErrorCode::dimension_mismatch,
          "kernel_diversity: point and kernel dimensions differ");
  const std::size_t total = std::size_t{1} << p.size();
  std::vector<double> values(total, 0.0);
  parallel_chunks(total, std::min(total, kChunks), [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t m = lo; m < hi; ++m)
      if (popcount(static_cast<Mask>(m)) >= 2)
        values[m] = std::max(0.0, circumradius(p.subset(static_cast<std::uint64_t>(m)), k, opt).radius);
  });
  return {p.labels_or_default(), std::move(values)};
}

FiniteDiversity max_combine(const FiniteDiversity& a, const FiniteDiversity& b) {
  same_ground(a, b);
  std::vector<double> v(a.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::max(a.values()[i], b.values()[i]);
  return {a.labels(), std::move(v)};
}

FiniteDiversity scale(double factor, const FiniteDiversity& d) {
  require(factor > 0.0 && std::isfinite(factor), ErrorCode::invalid_input,
          "scale factor must be finite and positive");
  std::vector<double> v = d.values();
  for (auto& x : v) x *= factor;
  return {d.labels(), std::move(v)};
}

SymmetricProfile symmetric_profile(const FiniteDiversity& d, double tol) {
  const std::size_t n = d.size();
  SymmetricProfile out;
  out.f.assign(n, 0.0);
  std::vector<Mask> seen(n + 1, 0);
  std::vector<bool> have(n + 1, false);
  for (std::size_t s = 1; s < d.values().size(); ++s) {
    const Mask m = static_cast<Mask>(s);
    const auto k = static_cast<std::size_t>(popcount(m));
    if (!have[k]) {
      have[k] = true;
      seen[k] = m;
      out.f[k - 1] = d[m];
      continue;
    }
    const double x = d[seen[k]], y = d[m];
    if (std::abs(x - y) > tol * std::max({1.0, std::abs(x), std::abs(y)}))
      throw NotSymmetric(seen[k], m,
                         "subsets {" + d.name(seen[k]) + "} and {" + d.name(m) +
                             "} have equal size but different values");
  }
  return out;
}

}  // namespace circumdiv
