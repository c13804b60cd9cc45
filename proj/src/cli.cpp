#include "ghr/cli.hpp"

#include <CLI11.hpp>
#include <optional>
#include <ostream>

#include "ghr/correspondence.hpp"
#include "ghr/error.hpp"
#include "ghr/geodesic.hpp"
#include "ghr/io.hpp"
#include "ghr/realization.hpp"

namespace ghr::cli {

namespace {

struct Options {
  double tol = kDefaultTolerance;
  std::uint64_t seed = 0;
  std::size_t iterations = 1000;
  std::size_t restarts = 32;
  std::size_t grid = kDefaultGridSize;
  std::optional<double> c;
  std::optional<double> t;
  bool force = false;
  bool metric = false;
  bool exact = false;
  bool heuristic = false;
  std::string space, x, y, corr, product, output, report;
  std::vector<std::size_t> a, b;
};

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::SearchSpaceTooLarge: return kSearchSpaceTooLarge;
    case ErrorCode::ConditionFailed: return kVerificationFailed;
    default: return kInputError;
  }
}

void emit(std::ostream& out, const std::string& path, const io::Json& j) {
  if (path.empty() || path == "-")
    out << io::dump(j);
  else
    io::write_text_file(path, io::dump(j));
}

int cmd_validate(const Options& o, std::ostream& out) {
  const FiniteMetricSpace space = io::read_space(o.space, o.tol);
  if (o.metric && space.kind() != MetricKind::Metric)
    throw Error(ErrorCode::ZeroOffDiagonal, "distinct points at distance 0");
  const TriangleDeficit worst = worst_triangle_deficit(space.matrix());
  io::Json j;
  j["name"] = space.name();
  j["n"] = space.size();
  j["kind"] = to_string(space.kind());
  j["worst_triangle_deficit"] = worst.deficit;
  j["witness"] = {worst.i, worst.j, worst.k};
  out << io::dump(j);
  return kSuccess;
}

int cmd_hausdorff(const Options& o, std::ostream& out) {
  const FiniteMetricSpace space = io::read_space(o.space, o.tol);
  const PointSubset a(space, o.a), b(space, o.b);
  io::Json j;
  j["value"] = hausdorff_distance(space, a, b);
  out << io::dump(j);
  return kSuccess;
}

int cmd_dist(const Options& o, std::ostream& out) {
  const FiniteMetricSpace x = io::read_space(o.x, o.tol);
  const FiniteMetricSpace y = io::read_space(o.y, o.tol);
  const GHResult result = o.heuristic
                              ? gh_distance_heuristic(x, y, {o.iterations, o.seed, o.restarts})
                              : gh_distance_exact(x, y);
  emit(out, o.output, io::to_json(result));
  return kSuccess;
}

Correspondence chosen_correspondence(const Options& o, const FiniteMetricSpace& x,
                                     const FiniteMetricSpace& y) {
  if (!o.corr.empty()) return io::read_correspondence(o.corr);
  return gh_distance_exact(x, y).witness;
}

int cmd_geodesic(const Options& o, std::ostream& out) {
  const FiniteMetricSpace x = io::read_space(o.x, o.tol);
  const FiniteMetricSpace y = io::read_space(o.y, o.tol);
  const Correspondence corr = chosen_correspondence(o, x, y);
  const GeodesicSlice slice = geodesic_slice(corr, x, y, *o.t);
  emit(out, o.output, io::to_json(slice.to_space(o.tol)));
  return kSuccess;
}

int cmd_realize(const Options& o, std::ostream& out) {
  const FiniteMetricSpace x = io::read_space(o.x, o.tol);
  const FiniteMetricSpace y = io::read_space(o.y, o.tol);
  const Correspondence corr = chosen_correspondence(o, x, y);
  const ParamGrid grid = ParamGrid::uniform(0.0, 1.0, o.grid);
  try {
    const Realization r = realize_geodesic(x, y, corr, grid, o.c, {o.tol, o.force});
    io::write_text_file(o.output, io::dump(io::to_json(r.product)));
    const io::Json report = io::to_json(r.report);
    out << io::dump(report);
    if (!o.report.empty()) io::write_text_file(o.report, io::dump(report));
    return r.report.passed() ? kSuccess : kVerificationFailed;
  } catch (const ConditionFailedError& e) {
    io::Json report;
    report["passed"] = false;
    report["error"] = to_string(e.code());
    report["message"] = e.what();
    report["conditions"] = io::to_json(e.report());
    out << io::dump(report);
    if (!o.report.empty()) io::write_text_file(o.report, io::dump(report));
    return kVerificationFailed;
  }
}

int cmd_verify(const Options& o, std::ostream& out) {
  const ProductSpace product = io::read_product(o.product, o.tol);
  const VerificationReport report = verify_product(product, o.tol);
  out << io::dump(io::to_json(report));
  return report.passed() ? kSuccess : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Gromov-Hausdorff distances, rectilinear geodesics and their Hausdorff realization",
               "ghr"};
  app.require_subcommand(1);

  auto positive_tol = [&](CLI::App* cmd) {
    cmd->add_option("--tol", o.tol, "absolute tolerance")->check(CLI::PositiveNumber);
  };

  auto* validate = app.add_subcommand("validate", "check the metric axioms of a space");
  validate->add_option("space", o.space)->required();
  validate->add_flag("--metric", o.metric, "reject pseudometrics");
  positive_tol(validate);

  auto* hausdorff = app.add_subcommand("hausdorff", "Hausdorff distance between two subsets");
  hausdorff->add_option("space", o.space)->required();
  hausdorff->add_option("--a", o.a, "comma-separated indices")->required()->delimiter(',');
  hausdorff->add_option("--b", o.b, "comma-separated indices")->required()->delimiter(',');
  positive_tol(hausdorff);

  auto* dist = app.add_subcommand("dist", "Gromov-Hausdorff distance with a witness");
  dist->add_option("X", o.x)->required();
  dist->add_option("Y", o.y)->required();
  auto* exact = dist->add_flag("--exact", o.exact, "exhaustive branch and bound (default)");
  dist->add_flag("--heuristic", o.heuristic, "local search upper bound")->excludes(exact);
  dist->add_option("--seed", o.seed);
  dist->add_option("--iterations", o.iterations)->check(CLI::PositiveNumber);
  dist->add_option("--restarts", o.restarts);
  dist->add_option("-o,--output", o.output);
  positive_tol(dist);

  auto* geodesic = app.add_subcommand("geodesic", "slice of the rectilinear geodesic at t");
  geodesic->add_option("X", o.x)->required();
  geodesic->add_option("Y", o.y)->required();
  geodesic->add_option("--t", o.t)->required();
  geodesic->add_option("--corr", o.corr, "correspondence JSON (default: exact optimum)");
  geodesic->add_option("-o,--output", o.output);
  positive_tol(geodesic);

  auto* realize = app.add_subcommand("realize", "build and certify the product realization");
  realize->add_option("X", o.x)->required();
  realize->add_option("Y", o.y)->required();
  realize->add_option("--corr", o.corr, "correspondence JSON (default: exact optimum)");
  realize->add_option("--grid", o.grid, "number of uniform t values")->check(CLI::Range(2, 100000));
  realize->add_option("--c", o.c, "vertical scale (default: half the distortion)");
  realize->add_flag("--force", o.force, "build even if a hypothesis fails");
  realize->add_option("-o,--output", o.output, "product JSON")->required();
  realize->add_option("--report", o.report, "also write the report here");
  positive_tol(realize);

  auto* verify = app.add_subcommand("verify", "re-certify a saved product");
  verify->add_option("product", o.product)->required();
  positive_tol(verify);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("ghr");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*hausdorff) return cmd_hausdorff(o, out);
    if (*dist) return cmd_dist(o, out);
    if (*geodesic) return cmd_geodesic(o, out);
    if (*realize) return cmd_realize(o, out);
    if (*verify) return cmd_verify(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace ghr::cli
