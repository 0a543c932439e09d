#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "circumdiv/circumradius.hpp"
#include "circumdiv/diversity.hpp"
#include "circumdiv/embed.hpp"
#include "circumdiv/geom.hpp"
#include "circumdiv/kernel.hpp"

namespace circumdiv::json {

/// Key order is preserved, so documents serialize deterministically.
using Json = nlohmann::ordered_json;

/// Both throw Error(parse_error) with the parser's message.
Json parse(std::string_view text);
Json read_file(const std::filesystem::path& path);

// Every *_from_json throws Error(parse_error) on shape or type problems and
// lets validation errors from the constructors through unchanged.

Json to_json(const Point& p);
Point point_from_json(const Json& j);

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"points": [[...], ...], "labels": [...]}; a bare array of points is
/// also accepted on input.
Json to_json(const PointSet& s);
PointSet point_set_from_json(const Json& j);

/// {"matrix": [[...]], "offset": [...]}
Json to_json(const AffineMap& m);
AffineMap affine_map_from_json(const Json& j);

/// {"type": "hpolytope" | "ball" | "parallelotope" | "simplex_pos" |
///  "simplex_neg" | "product" | "affine_image", ...}
Json to_json(const Kernel& k);
Kernel kernel_from_json(const Json& j);

/// {"labels": [...], "values": {"a,b": 1.0, ...}}. Keys may list labels in
/// any order; empty and singleton keys may be given (value 0) or omitted.
/// Without `complete`, every subset of size >= 2 must be present. With it,
/// a missing value is the max over the given subsets it contains.
Json to_json(const FiniteDiversity& d);
FiniteDiversity diversity_from_json(const Json& j, bool complete = false);

/// Comma-joined member labels in sorted order.
std::string subset_key(const FiniteDiversity& d, Mask m);

/// {"assignment": {label: point, ...}, "kernel": {...}}
Json to_json(const Embedding& e);
Embedding embedding_from_json(const Json& j);

/// {"radius": r, "center": [...]}
Json to_json(const Circumsolution& s);

}  // namespace circumdiv::json
