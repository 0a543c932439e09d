#include "circumdiv/cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

#include "circumdiv/circumradius.hpp"
#include "circumdiv/cli/demos.hpp"
#include "circumdiv/cli/svg.hpp"
#include "circumdiv/diversity.hpp"
#include "circumdiv/embed.hpp"
#include "circumdiv/error.hpp"
#include "circumdiv/json_io.hpp"
#include "circumdiv/tolerance.hpp"

namespace circumdiv::cli {

namespace {

using json::Json;

enum Exit { kOk = 0, kError = 1, kNegative = 2 };

struct Options {
  std::string points;
  std::string kernel;
  std::string diversity;
  std::string out;
  std::string format = "json";
  std::string demo;
  double epsilon = -1.0;
  std::size_t dim = 0;
  double tolerance = -1.0;
  std::uint64_t seed = kDefaultSeed;
  bool complete = false;
  bool ball_bound = false;
  bool full = false;
};

// an Error plus extra fields for the "error" object
struct DetailedError : Error {
  DetailedError(const Error& e, Json extra) : Error(e.code(), e.what()), extra(std::move(extra)) {}
  Json extra;
};

struct Result {
  Json doc;
  int code = kOk;
  std::optional<std::string> svg;
};

Json error_doc(std::string_view code, const std::string& message) {
  return Json{{"error", {{"code", std::string(code)}, {"message", message}}}};
}

void need(const std::string& value, const char* flag) {
  require(!value.empty(), ErrorCode::invalid_input, std::string(flag) + " is required");
}

PointSet load_points(const Options& o) {
  need(o.points, "--points");
  return json::point_set_from_json(json::read_file(o.points));
}

Kernel load_kernel(const Options& o) {
  need(o.kernel, "--kernel");
  return json::kernel_from_json(json::read_file(o.kernel));
}

FiniteDiversity load_diversity(const Options& o) {
  need(o.diversity, "--diversity");
  return json::diversity_from_json(json::read_file(o.diversity), o.complete);
}

Json header(const char* command, const Options& o) {
  return Json{{"command", command}, {"seed", o.seed}};
}

Result start(const char* command, const Options& o) {
  Result r;
  r.doc = header(command, o);
  return r;
}

Json subset_labels(const FiniteDiversity& d, Mask m) { return d.members(m); }

Result cmd_radius(const Options& o) {
  const auto pts = load_points(o);
  const auto k = load_kernel(o);
  const auto sol = circumradius(pts, k, {o.seed});
  Result r = start("radius", o);
  r.doc["kernel"] = std::string(k.type_name());
  r.doc["radius"] = sol.radius;
  r.doc["center"] = json::to_json(sol.center);
  r.doc["covers"] = covers(k, sol, pts);
  if (o.format == "svg") r.svg = render_svg({k, {{pts, sol, "A"}}});
  return r;
}

Result cmd_coreset(const Options& o) {
  require(o.epsilon >= 0.0, ErrorCode::invalid_input, "--epsilon is required");
  const auto pts = load_points(o);
  const auto res = o.ball_bound ? ball_core_set(pts, o.epsilon, {o.seed})
                                : core_set(pts, load_kernel(o), o.epsilon, {o.seed});
  Result r = start("coreset", o);
  r.doc["epsilon"] = res.epsilon;
  r.doc["size_bound"] = res.size_bound;
  r.doc["indices"] = res.indices;
  r.doc["subset"] = json::to_json(res.subset);
  r.doc["full_radius"] = res.full_radius;
  r.doc["subset_radius"] = res.subset_radius;
  r.doc["radius_ratio"] = res.radius_ratio;
  return r;
}

Result cmd_axioms(const Options& o) {
  const auto d = load_diversity(o);
  AxiomOptions opt;
  opt.full_report = o.full;
  const auto rep = check_axioms(d, opt);
  Result r = start("axioms", o);
  r.doc["labels"] = d.labels();
  r.doc["is_semidiversity"] = rep.is_semidiversity;
  r.doc["is_diversity"] = rep.is_diversity;
  r.doc["is_monotone"] = rep.is_monotone;
  Json vs = Json::array();
  for (const auto& v : rep.violations) {
    Json sets = Json::array();
    for (Mask m : v.sets) sets.push_back(subset_labels(d, m));
    vs.push_back(Json{{"axiom", v.axiom}, {"sets", std::move(sets)}, {"deficit", v.deficit}});
  }
  r.doc["violations"] = std::move(vs);
  r.code = rep.is_diversity ? kOk : kNegative;
  return r;
}

Result cmd_embed_symmetric(const Options& o) {
  const auto d = load_diversity(o);
  const auto check = [&] {
    try {
      return symmetric_embeddable(d);
    } catch (const NotSymmetric& e) {
      Json extra = Json::object();
      extra["subsets"] = Json::array({subset_labels(d, e.first()), subset_labels(d, e.second())});
      throw DetailedError(e, std::move(extra));
    }
  }();
  Result r = start("embed-symmetric", o);
  r.doc["embeddable"] = check.embeddable;
  if (!check.embeddable) {
    r.doc["witness"] = Json{{"k", check.k}, {"ratio", check.ratio}, {"bound", check.bound},
                            {"reason", check.reason}};
    r.code = kNegative;
    return r;
  }
  SymmetricEmbedOptions opt;
  opt.solve.seed = o.seed;
  if (o.dim > 0) opt.max_dim = o.dim;
  const auto e = symmetric_embed(d, opt);
  r.doc["dimension"] = e.kernel.dim();
  r.doc["embedding"] = json::to_json(e);
  return r;
}

Result cmd_embed_diameter(const Options& o) {
  const auto d = load_diversity(o);
  Result r = start("embed-diameter", o);
  const Mask w = diameter_witness(d);
  r.doc["embeddable"] = w == 0;
  if (w != 0) {
    const auto diam = diameter_diversity(induced_metric(d), d.labels());
    r.doc["witness"] = Json{{"reason", "NotDiameter"},
                            {"subset", subset_labels(d, w)},
                            {"value", d[w]},
                            {"diameter", diam[w]}};
    r.code = kNegative;
    return r;
  }
  const auto e = diameter_embed(d);
  r.doc["dimension"] = e.kernel.dim();
  r.doc["embedding"] = json::to_json(e);
  return r;
}

Result cmd_embed_ball(const Options& o) {
  require(o.dim > 0, ErrorCode::invalid_input, "--dim is required");
  const auto d = load_diversity(o);
  const auto dec = ball_embed_decide(d, o.dim, {o.seed});
  Result r = start("embed-ball", o);
  r.doc["dim"] = o.dim;
  r.doc["embeddable"] = dec.embeddable;
  r.doc["reason"] = std::string(to_string(dec.reason));
  r.doc["rank"] = dec.rank;
  r.doc["eigenvalues"] = dec.eigenvalues;
  r.doc["warnings"] = dec.warnings;
  if (dec.mismatch)
    r.doc["mismatch"] = Json{{"subset", subset_labels(d, dec.mismatch->subset)},
                             {"expected", dec.mismatch->expected},
                             {"got", dec.mismatch->got}};
  if (dec.embedding) r.doc["embedding"] = json::to_json(*dec.embedding);
  r.code = dec.embeddable ? kOk : kNegative;
  return r;
}

Result cmd_negtype(const Options& o) {
  const auto d = load_diversity(o);
  const auto rep = negative_type_check(d);
  Result r = start("negtype", o);
  r.doc["is_negative_type"] = rep.is_negative_type;
  r.doc["max_eigenvalue"] = rep.max_eigenvalue;
  r.doc["threshold"] = rep.threshold;
  if (!rep.is_negative_type) {
    Json w = Json::object();
    for (std::size_t i = 0; i < rep.witness.size(); ++i)
      w[json::subset_key(d, static_cast<Mask>(i + 1))] = rep.witness[i];
    r.doc["witness"] = std::move(w);
    r.doc["witness_value"] = rep.witness_value;
    r.code = kNegative;
  }
  return r;
}

Result cmd_demo(const Options& o) {
  Result r;
  if (o.demo == "l1-counterexample") {
    r.doc = to_json(demo_l1_counterexample(o.seed));
  } else if (o.demo == "nonconvex") {
    r.doc = to_json(demo_nonconvex(o.seed));
  } else {
    const auto scene = demo_figure(o.seed);
    r.doc = to_json(scene);
    if (o.format == "svg") {
      SvgScene svg{scene.kernel, {}};
      for (const auto& g : scene.groups) svg.layers.push_back({g.points, g.solution, g.name});
      r.svg = render_svg(svg);
    }
  }
  Json doc = header("demo", o);
  doc.update(r.doc);
  r.doc = std::move(doc);
  return r;
}

Result cmd_render(const Options& o) {
  const auto pts = load_points(o);
  const auto k = load_kernel(o);
  const auto sol = circumradius(pts, k, {o.seed});
  Result r = start("render", o);
  r.svg = render_svg({k, {{pts, sol, "A"}}});
  return r;
}

std::string as_text(const Json& doc) {
  std::string out;
  for (const auto& [key, value] : doc.items())
    out += key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
  return out;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--tolerance", o.tolerance, "Absolute comparison tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "RNG seed for randomized steps")->capture_default_str();
  sub->add_option("--out", o.out, "Write the result here instead of stdout");
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "svg", "text"}))
      ->capture_default_str();
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Generalized circumradius and finite diversity tools", "circumdiv"};
  app.require_subcommand(1, 1);

  auto* radius = app.add_subcommand("radius", "Circumradius R(A,K) with a witness center");
  radius->add_option("--points", o.points, "Point set JSON")->required();
  radius->add_option("--kernel", o.kernel, "Kernel JSON")->required();

  auto* coreset = app.add_subcommand("coreset", "Exhaustive core-set search");
  coreset->add_option("--points", o.points, "Point set JSON")->required();
  coreset->add_option("--kernel", o.kernel, "Kernel JSON");
  coreset->add_option("--epsilon", o.epsilon, "Approximation slack")->required();
  coreset->add_flag("--ball-bound", o.ball_bound, "Euclidean ball with the dimension-free bound");

  auto* axioms = app.add_subcommand("axioms", "Check (D1), (D2) and monotonicity");
  axioms->add_flag("--full", o.full, "List every violation instead of the first per check");

  auto* esym = app.add_subcommand("embed-symmetric", "Embed a symmetric diversity");
  auto* ediam = app.add_subcommand("embed-diameter", "Embed a diameter diversity into the cube");
  auto* eball = app.add_subcommand("embed-ball", "Decide embeddability into the Euclidean ball");
  auto* negtype = app.add_subcommand("negtype", "Negative-type test");
  for (auto* sub : {axioms, esym, ediam, eball, negtype}) {
    sub->add_option("--diversity", o.diversity, "Diversity table JSON")->required();
    sub->add_flag("--complete", o.complete, "Fill omitted subsets by max over given subsets");
  }
  esym->add_option("--dim", o.dim, "Dimension budget (default 64)");
  eball->add_option("--dim", o.dim, "Ball dimension d")->required()->check(CLI::PositiveNumber);

  auto* demo = app.add_subcommand("demo", "Reproduce a worked example");
  demo->add_option("name", o.demo, "Which demo")
      ->required()
      ->check(CLI::IsMember({"l1-counterexample", "nonconvex", "figure"}));

  auto* render = app.add_subcommand("render", "SVG of a planar point set and its scaled kernel");
  render->add_option("--points", o.points, "Point set JSON")->required();
  render->add_option("--kernel", o.kernel, "Kernel JSON")->required();

  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) add_common(sub, o);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << error_doc("USAGE", e.what()).dump() << "\n";
    return kError;
  }

  try {
    std::optional<ScopedTolerances> tol;
    if (o.tolerance > 0.0) {
      auto t = tolerances();
      t.absolute = o.tolerance;
      tol.emplace(t);
    }
    if (o.format == "svg")
      require(radius->parsed() || demo->parsed() || render->parsed(), ErrorCode::invalid_input,
              "svg output is available for radius, render and demo figure");

    Result r;
    if (radius->parsed()) r = cmd_radius(o);
    else if (coreset->parsed()) r = cmd_coreset(o);
    else if (axioms->parsed()) r = cmd_axioms(o);
    else if (esym->parsed()) r = cmd_embed_symmetric(o);
    else if (ediam->parsed()) r = cmd_embed_diameter(o);
    else if (eball->parsed()) r = cmd_embed_ball(o);
    else if (negtype->parsed()) r = cmd_negtype(o);
    else if (demo->parsed()) r = cmd_demo(o);
    else r = cmd_render(o);

    std::string text;
    if (r.svg && (o.format == "svg" || render->parsed())) text = *r.svg;
    else if (o.format == "text") text = as_text(r.doc);
    else text = r.doc.dump(2) + "\n";

    if (o.out.empty()) {
      out << text;
    } else {
      std::ofstream file(o.out, std::ios::binary);
      require(static_cast<bool>(file), ErrorCode::invalid_input, "cannot write " + o.out);
      file << text;
    }
    return r.code;
  } catch (const DetailedError& e) {
    Json doc = error_doc(to_string(e.code()), e.what());
    doc["error"].update(e.extra);
    err << doc.dump() << "\n";
  } catch (const Error& e) {
    err << error_doc(to_string(e.code()), e.what()).dump() << "\n";
  } catch (const std::exception& e) {
    err << error_doc("INTERNAL", e.what()).dump() << "\n";
  }
  return kError;
}

}  // namespace circumdiv::cli
