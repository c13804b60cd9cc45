#include "ghr/io.hpp"

#include <fstream>
#include <sstream>

#include "ghr/error.hpp"

namespace ghr::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    bad(std::string(what) + ": " + e.what());
  }
}

std::vector<std::vector<double>> matrix_rows(const Json& j) {
  if (!j.is_array()) bad("\"matrix\" must be an array of rows");
  return j.get<std::vector<std::vector<double>>>();
}

Json matrix_json(const DistanceMatrix& m) { return Json(m.rows()); }

}  // namespace

FiniteMetricSpace parse_space(std::string_view text, double tol, std::string fallback_name) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) bad("empty space description");

  if (text[first] == '{') {
    return guarded("space JSON", [&] {
      const Json j = Json::parse(text);
      auto rows = matrix_rows(j.at("matrix"));
      std::vector<std::string> labels;
      if (j.contains("points")) labels = j.at("points").get<std::vector<std::string>>();
      std::string name = j.value("name", fallback_name);
      return validate_metric(DistanceMatrix::from_rows(rows), MetricKind::Pseudometric, tol,
                             std::move(labels), std::move(name));
    });
  }

  std::vector<double> values;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) bad("not a number: \"" + token + "\"");
    values.push_back(v);
  }
  std::size_t n = 0;
  while (n * n < values.size()) ++n;
  if (n * n != values.size())
    bad(std::to_string(values.size()) + " entries do not form a square matrix");
  std::vector<std::vector<double>> rows(n);
  for (std::size_t i = 0; i < n; ++i)
    rows[i].assign(values.begin() + static_cast<std::ptrdiff_t>(i * n),
                   values.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
  return validate_metric(DistanceMatrix::from_rows(rows), MetricKind::Pseudometric, tol, {},
                         std::move(fallback_name));
}

FiniteMetricSpace read_space(const std::filesystem::path& path, double tol) {
  return parse_space(read_text_file(path), tol, path.stem().string());
}

Json to_json(const FiniteMetricSpace& space) {
  Json j;
  j["name"] = space.name();
  j["points"] = space.labels();
  j["matrix"] = matrix_json(space.matrix());
  return j;
}

Correspondence correspondence_from_json(const Json& j) {
  return guarded("correspondence JSON", [&] {
    const auto m = j.at("m").get<std::size_t>();
    const auto n = j.at("n").get<std::size_t>();
    std::vector<IndexPair> pairs;
    for (const auto& p : j.at("pairs")) {
      if (!p.is_array() || p.size() != 2) bad("each pair must be [i, j]");
      pairs.push_back({p[0].get<std::size_t>(), p[1].get<std::size_t>()});
    }
    return Correspondence(m, n, std::move(pairs));
  });
}

Correspondence read_correspondence(const std::filesystem::path& path) {
  return correspondence_from_json(read_json_file(path));
}

Json to_json(const Correspondence& corr) {
  Json pairs = Json::array();
  for (const auto& p : corr.pairs()) pairs.push_back({p.x, p.y});
  Json j;
  j["m"] = corr.source_size();
  j["n"] = corr.target_size();
  j["pairs"] = std::move(pairs);
  return j;
}

Json to_json(const GHResult& result) {
  Json j;
  j["value"] = result.value;
  j["method"] = to_string(result.method);
  j["certified"] = result.is_certified_optimal;
  j["witness"] = to_json(result.witness);
  return j;
}

Json to_json(const ProductSpace& product) {
  Json points = Json::array();
  for (const auto& p : product.points)
    points.push_back(Json{{"z", p.z}, {"label", product.family.labels()[p.z]}, {"t", p.t}});
  Json j;
  j["c"] = product.c;
  j["grid"] = product.grid.values();
  j["points"] = std::move(points);
  j["matrix"] = matrix_json(product.dist);
  return j;
}

ProductSpace product_from_json(const Json& j, double tol) {
  return guarded("product JSON", [&] {
    const double c = j.at("c").get<double>();
    ParamGrid grid(j.at("grid").get<std::vector<double>>());
    const Json& pts = j.at("points");
    if (!pts.is_array() || pts.empty() || pts.size() % grid.size() != 0)
      bad("point count is not a multiple of the grid size");
    const std::size_t n = pts.size() / grid.size();

    std::vector<ProductPoint> points;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const ProductPoint p{pts[i].at("z").get<std::size_t>(), pts[i].at("t").get<double>()};
      if (p.z != i % n || p.t != grid[i / n])
        bad("points must be listed slice by slice in grid order");
      if (i < n) labels.push_back(pts[i].value("label", "p" + std::to_string(i)));
      points.push_back(p);
    }

    DistanceMatrix dist = DistanceMatrix::from_rows(matrix_rows(j.at("matrix")));
    if (dist.size() != points.size()) bad("matrix size differs from the point count");

    std::vector<DistanceMatrix> slices;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      DistanceMatrix s(n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) s(a, b) = dist(k * n + a, k * n + b);
      slices.push_back(std::move(s));
    }
    auto family = InterpolationFamily::tabulated(grid.values(), std::move(slices), labels);
    if (!(c > 0.0)) throw Error(ErrorCode::NonpositiveC, "stored c must be positive");
    ConditionReport conditions = check_conditions(family, c, grid, tol);
    const bool forced = !conditions.ok();
    return ProductSpace{std::move(family), c,           std::move(grid), std::move(points),
                        std::move(dist),   std::move(conditions), forced};
  });
}

ProductSpace read_product(const std::filesystem::path& path, double tol) {
  return product_from_json(read_json_file(path), tol);
}

Json to_json(const MonotoneCheck& check) {
  return Json{{"ok", check.ok},
              {"violation", check.violation},
              {"pair", {check.z1, check.z2}},
              {"t", check.t},
              {"s", check.s}};
}

Json to_json(const LipschitzCheck& check) {
  return Json{{"ok", check.ok},
              {"deficit", check.deficit},
              {"max_slope", check.max_slope},
              {"pair", {check.z1, check.z2}},
              {"t", check.t},
              {"s", check.s}};
}

Json to_json(const ConditionReport& report) {
  Json j;
  j["monotone_ok"] = report.monotone_ok();
  j["lipschitz_ok"] = report.lipschitz_ok();
  j["monotone"] = to_json(report.monotone);
  j["lipschitz"] = to_json(report.lipschitz);
  j["monotone_closed_form"] =
      report.monotone_closed_form ? to_json(*report.monotone_closed_form) : Json(nullptr);
  j["lipschitz_closed_form"] =
      report.lipschitz_closed_form ? to_json(*report.lipschitz_closed_form) : Json(nullptr);
  return j;
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["passed"] = r.passed();
  j["tol"] = r.tol;
  j["kind"] = to_string(r.kind);
  j["symmetric"] = r.symmetric;
  j["zero_diagonal"] = r.zero_diagonal;
  j["hypotheses_forced"] = r.forced;
  j["monotone_ok"] = r.monotone_ok();
  j["lipschitz_ok"] = r.lipschitz_ok();
  j["conditions"] = to_json(r.conditions);
  j["triangle_ok"] = r.triangle_ok();
  j["max_triangle_violation"] = r.max_triangle_violation;
  j["triangle_witness"] = {r.triangle_i, r.triangle_j, r.triangle_k};
  j["hausdorff_ok"] = r.hausdorff_ok();
  j["slice_hausdorff_max_error"] = r.slice_hausdorff_max_error;
  j["slice_min_distance_max_error"] = r.slice_min_distance_max_error;
  j["restriction_ok"] = r.restriction_ok();
  j["restriction_max_error"] = r.restriction_max_error;
  j["fiber_ok"] = r.fiber_ok();
  j["fiber_max_error"] = r.fiber_max_error;
  if (r.corollary) {
    j["corollary"] = Json{{"applicable", r.corollary->applicable},
                          {"ok", r.corollary_ok()},
                          {"gh_distance", r.corollary->gh_distance},
                          {"max_error", r.corollary->max_error}};
  } else {
    j["corollary"] = nullptr;
  }
  j["slice_hausdorff"] = r.slice_hausdorff;
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  return guarded(path.string().c_str(), [&] { return Json::parse(text); });
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot write " + path.string());
  out << text;
  if (!out) bad("failed writing " + path.string());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ghr::io
