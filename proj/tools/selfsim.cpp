// selfsim: singularity structure, core matrix representation and ideal
// classification for affine self-similar maps.
//
//   selfsim analyze <system>
//   selfsim ideals  <system> --max-level L
//   selfsim trace   <system> --kind discrete:b,n|hutchinson:m --element spec.toml
//   selfsim verify  <system> --suite all|singularity|bimodule|core-rep|ideals
//   selfsim plot    <system> --what attractor|orbits [--base P --level k] [--csv out.csv]
//
// <system> is a built-in name (tent, sierpinski, cantor) or a TOML file.

#include "selfsim/io_plot.hpp"
#include "selfsim/io_report.hpp"
#include "selfsim/io_toml.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace selfsim;

namespace {

struct Options {
  std::string system;
  int grid_depth = 8;
  int max_level = 2;
  int max_ideal_level = 3;
  int postcritical_depth = 8;
  std::string format = "text";
  std::string out_path;
  double tolerance = 1e-9;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + opt.out_path);
    out << text;
  }
}

// "1/2" (1-D) or "(1/4;0/1+1/4*sqrt3)" (d >= 2); built-in point names for
// the sierpinski example are accepted too.
QVec parse_point(const SelfSimilarSystem& sys, const std::string& text) {
  if (sys.name == "sierpinski" && text.size() == 1) {
    auto q = [](long n, long d) { return Quad(Rational(n, d)); };
    auto qs = [](long n, long d) { return Quad(Rational(0), Rational(n, d)); };
    switch (text[0]) {
      case 'P': return {q(1, 2), qs(1, 2)};
      case 'Q': return {q(0, 1), q(0, 1)};
      case 'R': return {q(1, 1), q(0, 1)};
      case 'S': return {q(1, 4), qs(1, 4)};
      case 'T': return {q(1, 2), q(0, 1)};
      case 'U': return {q(3, 4), qs(1, 4)};
      default: break;
    }
  }
  std::string body = text;
  if (!body.empty() && body.front() == '(' && body.back() == ')')
    body = body.substr(1, body.size() - 2);
  QVec p;
  size_t start = 0;
  while (true) {
    size_t semi = body.find(';', start);
    p.push_back(quad_from_string(body.substr(start, semi - start)));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  if (static_cast<int>(p.size()) != sys.dimension)
    throw std::runtime_error("point has wrong dimension: " + text);
  return p;
}

TraceSpec parse_trace_kind(const SelfSimilarSystem& sys, const std::string& kind) {
  if (kind.rfind("hutchinson:", 0) == 0)
    return TraceSpec::hutchinson(std::stoi(kind.substr(11)));
  if (kind.rfind("discrete:", 0) == 0) {
    std::string body = kind.substr(9);
    size_t comma = body.rfind(',');
    if (comma == std::string::npos)
      throw std::runtime_error("discrete trace needs \"discrete:<point>,<n>\"");
    QVec b = parse_point(sys, body.substr(0, comma));
    int n = std::stoi(body.substr(comma + 1));
    return TraceSpec::discrete(std::move(b), n);
  }
  throw std::runtime_error("unknown trace kind: " + kind);
}

int cmd_analyze(const Options& opt) {
  SelfSimilarSystem sys = load_system(opt.system);
  MembershipOracle oracle(sys);
  SingularityReport rep = check_assumption_b(sys, oracle, opt.postcritical_depth,
                                             std::min(opt.grid_depth, 8));
  if (opt.format == "json")
    emit(opt, analyze_report_json(sys, rep).dump());
  else
    emit(opt, analyze_report_text(sys, rep));
  return rep.assumption_b.pass ? 0 : 2;
}

int cmd_ideals(const Options& opt) {
  SelfSimilarSystem sys = load_system(opt.system);
  MembershipOracle oracle(sys);
  SingularityReport rep = check_assumption_b(sys, oracle, opt.postcritical_depth,
                                             std::min(opt.grid_depth, 8));
  if (!rep.assumption_b.pass) {
    std::cerr << "assumption B fails; ideals are classified only under it\n";
    return 2;
  }
  auto rows = ideals_table(sys, oracle, rep, opt.max_ideal_level);
  if (opt.format == "json")
    emit(opt, ideals_report_json(sys, oracle, rows, opt.max_ideal_level).dump());
  else
    emit(opt, ideals_report_text(sys, rows));
  return 0;
}

int cmd_trace(const Options& opt, const std::string& kind, const std::string& element_path) {
  SelfSimilarSystem sys = load_system(opt.system);
  MembershipOracle oracle(sys);
  TraceSpec spec = parse_trace_kind(sys, kind);
  if (spec.kind == TraceSpec::Discrete) {
    SingularityReport rep = check_assumption_b(sys, oracle, opt.postcritical_depth, 4);
    bool is_branch = false;
    for (const auto& bd : rep.branches) is_branch = is_branch || qvec_eq(bd.point, spec.b);
    if (!is_branch)
      throw std::runtime_error("discrete trace base " + qvec_to_string(spec.b) +
                               " is not a branch point");
  }
  GradedCoreElement t = load_element(sys, oracle, element_path);
  Cplx value = trace_eval(sys, spec, t);
  if (opt.format == "json") {
    emit(opt, trace_report_json(sys, spec, value).dump());
  } else {
    std::ostringstream os;
    os << "trace value: " << format_real(value.real());
    if (std::abs(value.imag()) > 1e-15) os << " + " << format_real(value.imag()) << " i";
    os << "\n";
    emit(opt, os.str());
  }
  return 0;
}

int cmd_verify(const Options& opt, const std::string& suite) {
  SelfSimilarSystem sys = load_system(opt.system);
  VerifyConfig cfg;
  cfg.grid_depth = opt.grid_depth;
  cfg.max_level = opt.max_level;
  cfg.max_ideal_level = opt.max_ideal_level;
  cfg.postcritical_depth = opt.postcritical_depth;
  cfg.tol_alg = opt.tolerance;
  std::vector<PropertyResult> results = run_suite(sys, suite, cfg);
  if (opt.format == "json")
    emit(opt, verify_report_json(sys, suite, results).dump());
  else
    emit(opt, verify_report_text(suite, results));
  for (const auto& r : results)
    if (!r.pass) return 2;
  return 0;
}

int cmd_plot(const Options& opt, const std::string& what, const std::string& base, int level,
             const std::string& csv_path) {
  SelfSimilarSystem sys = load_system(opt.system);
  MembershipOracle oracle(sys);
  AttractorGrid grid = generate_grid(sys, opt.grid_depth);
  DiscreteMeasure mu = hutchinson_measure(sys, opt.grid_depth);
  std::vector<std::vector<QVec>> overlays;
  if (what == "orbits") {
    if (base.empty()) throw std::runtime_error("--what orbits needs --base");
    QVec b = parse_point(sys, base);
    for (int k = 0; k <= level; ++k) overlays.push_back(orbit_set(sys, oracle, b, k).points);
  } else if (what != "attractor") {
    throw std::runtime_error("--what must be attractor or orbits");
  }
  emit(opt, plot_svg(sys, grid, mu, overlays));
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + csv_path);
    out << grid_csv(sys, grid, mu);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"core ideal structure of C*-algebras of self-similar maps"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--grid-depth", opt.grid_depth, "attractor grid depth")->capture_default_str();
  app.add_option("--max-level", opt.max_level, "max core filtration level")->capture_default_str();
  app.add_option("--max-ideal-level", opt.max_ideal_level, "primitive ideal level cutoff")
      ->capture_default_str();
  app.add_option("--postcritical-depth", opt.postcritical_depth, "postcritical search depth")
      ->capture_default_str();
  app.add_option("--format", opt.format, "json|text")->capture_default_str();
  app.add_option("--out,-o", opt.out_path, "write the report to a file");
  app.add_option("--tolerance", opt.tolerance, "algebraic-identity tolerance")
      ->capture_default_str();

  auto* analyze = app.add_subcommand("analyze", "singularity structure and Assumption B");
  analyze->add_option("system", opt.system, "built-in name or TOML file")->required();

  auto* ideals = app.add_subcommand("ideals", "primitive ideal table of the core");
  ideals->add_option("system", opt.system)->required();

  std::string kind, element_path;
  auto* trace = app.add_subcommand("trace", "evaluate a trace on a graded element");
  trace->add_option("system", opt.system)->required();
  trace->add_option("--kind", kind, "discrete:<b>,<n> or hutchinson:<depth>")->required();
  trace->add_option("--element", element_path, "element spec TOML")->required();

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run property batteries");
  verify->add_option("system", opt.system)->required();
  verify->add_option("--suite", suite, "all|singularity|bimodule|core-rep|ideals")
      ->capture_default_str();

  std::string what = "attractor", base;
  int orbit_level = 1;
  std::string csv_path;
  auto* plot = app.add_subcommand("plot", "SVG of the attractor / orbit overlays");
  plot->add_option("system", opt.system)->required();
  plot->add_option("--what", what, "attractor|orbits")->capture_default_str();
  plot->add_option("--base", base, "orbit base point (e.g. 1/2, or S for sierpinski)");
  plot->add_option("--level", orbit_level, "max orbit level to overlay")->capture_default_str();
  plot->add_option("--csv", csv_path, "also export (word, point, weight) CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(analyze)) return cmd_analyze(opt);
    if (app.got_subcommand(ideals)) return cmd_ideals(opt);
    if (app.got_subcommand(trace)) return cmd_trace(opt, kind, element_path);
    if (app.got_subcommand(verify)) return cmd_verify(opt, suite);
    if (app.got_subcommand(plot)) return cmd_plot(opt, what, base, orbit_level, csv_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
