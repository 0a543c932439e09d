#include "circumdiv/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "circumdiv/error.hpp"

namespace circumdiv::json {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::parse_error, what); }

const Json& field(const Json& j, const char* key, const char* where) {
  if (!j.is_object()) bad(std::string(where) + " must be a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string(where) + " is missing \"" + key + "\"");
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) bad(where + " must be a number");
  return j.get<double>();
}

std::size_t count(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 1) bad(where + " must be a positive integer");
  return j.get<std::size_t>();
}

std::vector<std::string> strings(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) bad(where + " must be an array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::string trim(std::string s) {
  const auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

// subset keys join labels with commas and trim spaces
const std::string& check_label(const std::string& l) {
  if (l.empty() || l.find(',') != std::string::npos || trim(l) != l)
    bad("label \"" + l + "\" must be non-empty, without commas or surrounding spaces");
  return l;
}

}  // namespace

Json parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const Error& e) {
    bad(path.string() + ": " + e.what());
  }
}

Json to_json(const Point& p) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) out.push_back(p(i));
  return out;
}

Point point_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) bad("a point must be a non-empty array of numbers");
  Point p(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    p(static_cast<Eigen::Index>(i)) = number(j[i], "point coordinate");
  return p;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(to_json(Point(m.row(r).transpose())));
  return out;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) bad("a matrix must be a non-empty array of rows");
  const auto cols = point_from_json(j[0]).size();
  Matrix m(static_cast<Eigen::Index>(j.size()), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Point row = point_from_json(j[r]);
    if (row.size() != cols) bad("matrix rows must have equal length");
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

Json to_json(const PointSet& s) {
  Json pts = Json::array();
  for (const auto& p : s) pts.push_back(to_json(p));
  Json out{{"points", std::move(pts)}};
  if (s.has_labels()) out["labels"] = s.labels();
  return out;
}

PointSet point_set_from_json(const Json& j) {
  const Json& pts = j.is_array() ? j : field(j, "points", "point set");
  if (!pts.is_array() || pts.empty()) bad("\"points\" must be a non-empty array");
  std::vector<Point> points;
  for (const auto& p : pts) points.push_back(point_from_json(p));
  std::vector<std::string> labels;
  if (j.is_object() && j.contains("labels")) labels = strings(j["labels"], "\"labels\"");
  for (const auto& l : labels) check_label(l);
  return PointSet(std::move(points), std::move(labels));
}

Json to_json(const AffineMap& m) {
  return Json{{"matrix", to_json(m.matrix())}, {"offset", to_json(m.offset())}};
}

AffineMap affine_map_from_json(const Json& j) {
  Matrix m = matrix_from_json(field(j, "matrix", "affine map"));
  Point off = j.contains("offset") ? point_from_json(j["offset"]) : Point(Point::Zero(m.rows()));
  if (off.size() != m.rows()) fail(ErrorCode::dimension_mismatch, "affine map offset length differs from matrix rows");
  return {std::move(m), std::move(off)};
}

Json to_json(const Kernel& k) {
  Json out{{"type", std::string(k.type_name())}};
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, shape::HPolytope>) {
          out["normals"] = to_json(s.normals);
          out["offsets"] = to_json(Point(s.offsets));
        } else if constexpr (std::is_same_v<T, shape::Ball> || std::is_same_v<T, shape::SimplexPos> ||
                             std::is_same_v<T, shape::SimplexNeg>) {
          out["dim"] = s.dim;
        } else if constexpr (std::is_same_v<T, shape::Parallelotope>) {
          out["map"] = to_json(s.map);
        } else if constexpr (std::is_same_v<T, shape::Product>) {
          out["left"] = to_json(*s.left);
          out["right"] = to_json(*s.right);
        } else {
          out["map"] = to_json(s.map);
          out["base"] = to_json(*s.base);
        }
      },
      k.shape());
  return out;
}

Kernel kernel_from_json(const Json& j) {
  const Json& t = field(j, "type", "kernel");
  if (!t.is_string()) bad("kernel \"type\" must be a string");
  const auto type = t.get<std::string>();
  if (type == "hpolytope") {
    const Matrix normals = matrix_from_json(field(j, "normals", "hpolytope"));
    const Point offsets = point_from_json(field(j, "offsets", "hpolytope"));
    return Kernel::hpolytope(normals, offsets);
  }
  if (type == "ball") return Kernel::ball(count(field(j, "dim", "ball"), "ball \"dim\""));
  if (type == "simplex_pos")
    return Kernel::simplex_pos(count(field(j, "dim", "simplex_pos"), "simplex_pos \"dim\""));
  if (type == "simplex_neg")
    return Kernel::simplex_neg(count(field(j, "dim", "simplex_neg"), "simplex_neg \"dim\""));
  if (type == "parallelotope") {
    if (j.contains("map")) return Kernel::parallelotope(affine_map_from_json(j["map"]));
    return Kernel::unit_cube(count(field(j, "dim", "parallelotope"), "parallelotope \"dim\""));
  }
  if (type == "product")
    return Kernel::product(kernel_from_json(field(j, "left", "product")),
                           kernel_from_json(field(j, "right", "product")));
  if (type == "affine_image")
    return Kernel::affine_image(affine_map_from_json(field(j, "map", "affine_image")),
                                kernel_from_json(field(j, "base", "affine_image")));
  bad("unknown kernel type \"" + type + "\"");
}

std::string subset_key(const FiniteDiversity& d, Mask m) {
  auto members = d.members(m);
  std::sort(members.begin(), members.end());
  std::string out;
  for (const auto& l : members) {
    if (!out.empty()) out += ',';
    out += l;
  }
  return out;
}

Json to_json(const FiniteDiversity& d) {
  Json values = Json::object();
  for (std::size_t s = 0; s < d.values().size(); ++s) {
    const Mask m = static_cast<Mask>(s);
    if (popcount(m) >= 2) values[subset_key(d, m)] = d[m];
  }
  return Json{{"labels", d.labels()}, {"values", std::move(values)}};
}

FiniteDiversity diversity_from_json(const Json& j, bool complete) {
  auto labels = strings(field(j, "labels", "diversity"), "\"labels\"");
  if (labels.size() > kMaxGroundSet) bad("diversity ground sets are limited to 16 labels");
  const Json& vals = field(j, "values", "diversity");
  if (!vals.is_object()) bad("\"values\" must be an object keyed by comma-joined labels");

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& l = check_label(labels[i]);
    if (!index.emplace(l, i).second) bad("duplicate label \"" + l + "\"");
  }

  const std::size_t total = std::size_t{1} << labels.size();
  std::vector<double> values(total, 0.0);
  std::vector<bool> given(total, false);
  for (const auto& [key, v] : vals.items()) {
    Mask m = 0;
    std::stringstream parts(key);
    std::string part;
    while (std::getline(parts, part, ',')) {
      part = trim(part);
      if (part.empty()) continue;
      const auto it = index.find(part);
      if (it == index.end()) bad("value key \"" + key + "\" names unknown label \"" + part + "\"");
      const Mask b = Mask{1} << it->second;
      if (m & b) bad("value key \"" + key + "\" repeats a label");
      m |= b;
    }
    if (given[m]) bad("value key \"" + key + "\" duplicates another key");
    given[m] = true;
    values[m] = number(v, "value of \"" + key + "\"");
  }

  // best[m] = max over given subsets of m
  std::vector<double> best(total, 0.0);
  for (std::size_t s = 0; s < total; ++s) {
    const Mask m = static_cast<Mask>(s);
    if (popcount(m) < 2) continue;
    if (given[s]) best[s] = values[s];
    for (Mask q = m; q != 0; q &= q - 1) best[s] = std::max(best[s], best[m & ~(q & (~q + 1))]);
    if (given[s]) continue;
    if (!complete) {
      FiniteDiversity names(labels, std::vector<double>(total, 0.0));
      bad("missing value for {" + subset_key(names, m) + "} (use completion mode to fill gaps)");
    }
    values[s] = best[s];
  }
  return {std::move(labels), std::move(values)};
}

Json to_json(const Embedding& e) {
  Json assignment = Json::object();
  const auto labels = e.points.labels_or_default();
  for (std::size_t i = 0; i < e.points.size(); ++i) assignment[labels[i]] = to_json(e.points[i]);
  return Json{{"assignment", std::move(assignment)}, {"kernel", to_json(e.kernel)}};
}

Embedding embedding_from_json(const Json& j) {
  const Json& a = field(j, "assignment", "embedding");
  if (!a.is_object() || a.empty()) bad("\"assignment\" must be a non-empty object");
  std::vector<Point> pts;
  std::vector<std::string> labels;
  for (const auto& [label, p] : a.items()) {
    labels.push_back(check_label(label));
    pts.push_back(point_from_json(p));
  }
  Kernel k = kernel_from_json(field(j, "kernel", "embedding"));
  PointSet set(std::move(pts), std::move(labels));
  if (set.dim() != k.dim()) fail(ErrorCode::dimension_mismatch, "embedding points and kernel dimensions differ");
  return {std::move(set), std::move(k)};
}

Json to_json(const Circumsolution& s) {
  return Json{{"radius", s.radius}, {"center", to_json(s.center)}};
}

}  // namespace circumdiv::json
