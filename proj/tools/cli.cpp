#include "cli.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wqcm/catalog.hpp"
#include "wqcm/report.hpp"

namespace wqcm::cli {

namespace {

struct Config {
  std::string source;
  std::string suite;
  std::string at;
  double t = 0.0;
  int points = 32;
  std::uint64_t seed = 7;
  int threads = 0;
  Tolerances tol;
  std::string format = "text";
  std::string output;
  std::string strategy = "halton";
  bool no_timestamp = false;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("WQCM_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw SchemaError("WQCM_SEED is not an unsigned integer");
  }
  return 7;
}

void add_common(CLI::App* sub, Config& c, bool sampling) {
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  sub->add_option("--output", c.output, "Write the report to this file instead of stdout");
  if (!sampling) return;
  sub->add_option("--points", c.points, "Number of sample points")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--seed", c.seed, "Sampling and direction seed (env WQCM_SEED)")
      ->capture_default_str();
  sub->add_option("--strategy", c.strategy, "Sampling strategy")
      ->check(CLI::IsMember({"halton", "grid"}))
      ->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--tol-algebraic", c.tol.algebraic, "Algebraic identity tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--tol-deriv", c.tol.deriv, "First-derivative identity tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--tol-curv", c.tol.curv, "Curvature identity tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

StructureDef load_source(const std::string& source) {
  if (is_builtin(source)) return parse_builtin(source);
  return load_structure_file(source);
}

Point parse_point(const std::string& text) {
  std::vector<double> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw SchemaError("invalid coordinate '" + item + "' in --at");
    coords.push_back(v);
  }
  return Point(coords);
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

SamplePlan plan_of(const Config& c) {
  SamplePlan p;
  p.count = c.points;
  p.seed = c.seed;
  p.strategy = parse_strategy(c.strategy);
  return p;
}

void emit(const Config& c, const std::string& text, std::ostream& out) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw Error("cannot open output file '" + c.output + "'");
  f << text;
}

std::string list_text(Format format) {
  const std::vector<CatalogEntry> entries = catalog_entries();
  if (format == Format::json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const CatalogEntry& e : entries) {
      j.push_back({{"key", e.key}, {"params", e.params}, {"description", e.description}});
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  for (const CatalogEntry& e : entries) {
    os << "builtin:" << e.key;
    if (!e.params.empty()) os << "  [" << e.params << "]";
    os << "\n    " << e.description << "\n";
  }
  return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  try {
    c.seed = default_seed();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Verification engine for weak almost-contact metric structures", "wqcm"};
  app.require_subcommand(1, 1);

  CLI::App* validate = app.add_subcommand("validate", "Check the weak a.c.m. axioms");
  validate->add_option("source", c.source, "Structure file or builtin:<key>[?n=..,s=..]")->required();
  add_common(validate, c, true);

  CLI::App* classify = app.add_subcommand("classify", "Report class-membership residuals");
  classify->add_option("source", c.source, "Structure file or builtin key")->required();
  add_common(classify, c, true);

  CLI::App* check = app.add_subcommand("check", "Run an identity or theorem suite");
  check->add_option("suite", c.suite, "Suite to run")
      ->required()
      ->check(CLI::IsMember({"identity", "curvature", "theorems", "all"}));
  check->add_option("source", c.source, "Structure file or builtin key")->required();
  check->add_flag("--no-timestamp", c.no_timestamp, "Omit the timestamp field");
  add_common(check, c, true);

  CLI::App* fbasis = app.add_subcommand("fbasis", "Build the f-basis at a point");
  fbasis->add_option("source", c.source, "Structure file or builtin key")->required();
  fbasis->add_option("--at", c.at, "Point as comma-separated coordinates")->required();
  add_common(fbasis, c, false);

  CLI::App* cone = app.add_subcommand("cone", "Evaluate the almost-Hermitian cone at (p, t)");
  cone->add_option("source", c.source, "Structure file or builtin key")->required();
  cone->add_option("--at", c.at, "Point as comma-separated coordinates")->required();
  cone->add_option("--t", c.t, "Cone coordinate t")->capture_default_str();
  add_common(cone, c, false);

  CLI::App* list = app.add_subcommand("list", "List built-in catalog entries");
  add_common(list, c, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    const Format format = parse_format(c.format);
    if (list->parsed()) {
      emit(c, list_text(format), out);
      return 0;
    }

    const WeakACM s(load_source(c.source));
    const Tolerances& tol = c.tol;

    if (validate->parsed()) {
      const AxiomReport r = validate_axioms(s, sample_points(plan_of(c), s.def().domain), tol, c.seed);
      emit(c, emit_axioms(r, format), out);
      return r.pass() ? 0 : 1;
    }
    if (classify->parsed()) {
      const std::vector<Point> points = sample_points(plan_of(c), s.def().domain);
      const ClassReport r = class_residuals(s, points, tol, c.seed);
      const PointEval e = s.evaluate(points.front());
      const FBasis b = f_basis(e);
      emit(c, emit_classes(r, contact_volume(e, b), b, format), out);
      return 0;
    }
    if (check->parsed()) {
      SuiteOptions opts;
      opts.plan = plan_of(c);
      opts.tol = tol;
      opts.threads = c.threads;
      CheckReport r = run_suite(c.suite, s, opts);
      if (!c.no_timestamp) r.timestamp = utc_timestamp();
      emit(c, emit_report(r, format), out);
      return r.failed() ? 1 : 0;
    }
    if (fbasis->parsed()) {
      const PointEval e = s.evaluate(parse_point(c.at));
      const FBasis b = f_basis(e);
      const FBasisCheck chk = check_f_basis(e, b);
      emit(c, emit_fbasis(b, chk, format), out);
      return chk.max() <= tol.deriv ? 0 : 1;
    }
    if (cone->parsed()) {
      const Point p = parse_point(c.at);
      const ConeEval ce = build_cone(s.evaluate(p), c.t);
      emit(c, emit_cone(ce, p, c.t, format), out);
      return ce.j2_plus_p < 1e-12 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace wqcm::cli
