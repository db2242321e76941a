#include "selfsim/io_report.hpp"

#include <sstream>

namespace selfsim {

JsonValue point_json(const QVec& p) {
  JsonValue a = JsonValue::array();
  for (const auto& c : p) a.push(JsonValue::str(quad_to_string(c)));
  return a;
}

static JsonValue points_json(const std::vector<QVec>& pts) {
  JsonValue a = JsonValue::array();
  for (const auto& p : pts) a.push(point_json(p));
  return a;
}

static JsonValue clause_json(const ClauseVerdict& c) {
  JsonValue o = JsonValue::object();
  o.set("pass", JsonValue::boolean(c.pass));
  o.set("detail", JsonValue::str(c.detail));
  return o;
}

JsonValue analyze_report_json(const SelfSimilarSystem& sys, const SingularityReport& rep) {
  JsonValue o = JsonValue::object();
  o.set("system", JsonValue::str(sys.name));
  o.set("dimension", JsonValue::integer(sys.dimension));
  o.set("scalar", JsonValue::str(sys.quadratic ? "quadratic-sqrt3" : "rational"));
  o.set("branch_count", JsonValue::integer(sys.branch_count()));
  o.set("contraction_upper", JsonValue::str(quad_to_string(sys.contraction_upper)));
  o.set("contraction_lower", JsonValue::str(quad_to_string(sys.contraction_lower)));
  o.set("branch_values", points_json(rep.branch_values));
  JsonValue branches = JsonValue::array();
  for (const auto& bd : rep.branches) {
    JsonValue b = JsonValue::object();
    b.set("point", point_json(bd.point));
    b.set("value", point_json(bd.value));
    b.set("index", JsonValue::integer(static_cast<long>(bd.labels.size())));
    JsonValue labels = JsonValue::array();
    for (int j : bd.labels) labels.push(JsonValue::integer(j));
    b.set("labels", std::move(labels));
    branches.push(std::move(b));
  }
  o.set("branch_points", std::move(branches));
  JsonValue post = JsonValue::object();
  post.set("depth_checked", JsonValue::integer(rep.postcritical_depth));
  post.set("stable", JsonValue::boolean(rep.postcritical_stable));
  post.set("points", points_json(rep.postcritical));
  o.set("postcritical", std::move(post));
  JsonValue ab = JsonValue::object();
  ab.set("left_inverse", clause_json(rep.assumption_b.left_inverse));
  ab.set("branch_set_finite", clause_json(rep.assumption_b.finite_branch_set));
  ab.set("postcritical_disjoint", clause_json(rep.assumption_b.postcritical_disjoint));
  ab.set("unique_collision_slot", clause_json(rep.assumption_b.unique_collision_slot));
  ab.set("pass", JsonValue::boolean(rep.assumption_b.pass));
  o.set("assumption_b", std::move(ab));
  return o;
}

static std::string points_text(const std::vector<QVec>& pts) {
  if (pts.empty()) return "{}";
  std::string s = "{ ";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ", ";
    s += qvec_to_string(pts[i]);
  }
  return s + " }";
}

std::string analyze_report_text(const SelfSimilarSystem& sys, const SingularityReport& rep) {
  std::ostringstream out;
  out << "system " << sys.name << "  (dimension " << sys.dimension << ", scalar "
      << (sys.quadratic ? "Q(sqrt3)" : "Q") << ", N = " << sys.branch_count() << ")\n";
  out << "contraction: c <= " << quad_to_string(sys.contraction_upper)
      << ", c' >= " << quad_to_string(sys.contraction_lower) << "\n";
  out << "branch values C = " << points_text(rep.branch_values) << "\n";
  out << "branch points B = " << points_text(rep.branch_points()) << "\n";
  for (const auto& bd : rep.branches) {
    out << "  b = " << qvec_to_string(bd.point) << "  over c = " << qvec_to_string(bd.value)
        << "  e_b = " << bd.labels.size() << "  labels (";
    for (size_t i = 0; i < bd.labels.size(); ++i) out << (i ? "," : "") << bd.labels[i];
    out << ")\n";
  }
  out << "postcritical P^{<=" << rep.postcritical_depth << "} = " << points_text(rep.postcritical)
      << (rep.postcritical_stable ? "  (stable)" : "  (depth-capped)") << "\n";
  auto clause = [&](const char* name, const ClauseVerdict& c) {
    out << "  " << (c.pass ? "[pass] " : "[FAIL] ") << name << ": " << c.detail << "\n";
  };
  out << "assumption B: " << (rep.assumption_b.pass ? "PASS" : "FAIL") << "\n";
  clause("left inverse", rep.assumption_b.left_inverse);
  clause("finite branch set", rep.assumption_b.finite_branch_set);
  clause("B disjoint from P", rep.assumption_b.postcritical_disjoint);
  clause("unique collision slot", rep.assumption_b.unique_collision_slot);
  return out.str();
}

std::vector<IdealsRow> ideals_table(const SelfSimilarSystem& sys, const MembershipOracle& oracle,
                                    const SingularityReport& rep, int max_level) {
  std::vector<IdealsRow> rows;
  for (const auto& d : primitive_ideals(sys, oracle, rep, max_level)) {
    IdealsRow row;
    row.descriptor = d;
    row.set = closed_set(sys, oracle, d);
    if (d.kind == IdealDescriptor::OrbitUnion) {
      row.quotient_dim = quotient_dimension(sys, d);
      GradedCoreElement unit = GradedCoreElement::unit(sys, std::min(d.tags[0].n, 2));
      row.trace_normalization =
          std::abs(trace_eval(sys, TraceSpec::discrete(d.tags[0].b, d.tags[0].n), unit));
    } else {
      row.quotient_dim = -1;
      GradedCoreElement unit = GradedCoreElement::unit(sys, 1);
      row.trace_normalization = std::abs(trace_eval(sys, TraceSpec::hutchinson(8), unit));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

JsonValue ideals_report_json(const SelfSimilarSystem& sys, const MembershipOracle& oracle,
                             const std::vector<IdealsRow>& rows, int max_level) {
  JsonValue o = JsonValue::object();
  o.set("system", JsonValue::str(sys.name));
  o.set("max_level", JsonValue::integer(max_level));
  JsonValue prims = JsonValue::array();
  for (const auto& row : rows) {
    JsonValue r = JsonValue::object();
    if (row.descriptor.kind == IdealDescriptor::Zero) {
      r.set("ideal", JsonValue::str("zero"));
      r.set("closed_set", JsonValue::str("K"));
      r.set("quotient", JsonValue::str("the core itself (infinite dimensional)"));
    } else {
      JsonValue tag = JsonValue::object();
      tag.set("b", point_json(row.descriptor.tags[0].b));
      tag.set("n", JsonValue::integer(row.descriptor.tags[0].n));
      r.set("ideal", std::move(tag));
      JsonValue pts = JsonValue::array();
      for (const auto& p : row.set.points) pts.push(point_json(p));
      r.set("closed_set", std::move(pts));
      r.set("quotient_dimension", JsonValue::integer(row.quotient_dim));
    }
    r.set("trace_normalization", JsonValue::real(row.trace_normalization));
    if (row.descriptor.kind == IdealDescriptor::OrbitUnion) {
      auto warnings = tag_overlap_warnings(sys, oracle, row.descriptor);
      if (!warnings.empty()) {
        JsonValue w = JsonValue::array();
        for (const auto& s : warnings) w.push(JsonValue::str(s));
        r.set("warnings", std::move(w));
      }
    }
    prims.push(std::move(r));
  }
  o.set("primitive_ideals", std::move(prims));
  return o;
}

std::string ideals_report_text(const SelfSimilarSystem& sys, const std::vector<IdealsRow>& rows) {
  std::ostringstream out;
  out << "primitive ideals of the core for " << sys.name << "\n";
  for (const auto& row : rows) {
    if (row.descriptor.kind == IdealDescriptor::Zero) {
      out << "  0 ideal            closed set K     quotient: the core itself"
          << "   tau_inf(1) = " << format_real(row.trace_normalization) << "\n";
    } else {
      const IdealTag& tag = row.descriptor.tags[0];
      out << "  J(b=" << qvec_to_string(tag.b) << ", n=" << tag.n << ")  closed set "
          << points_text(row.set.points) << "  quotient dim " << row.quotient_dim
          << "  tau(1) = " << format_real(row.trace_normalization) << "\n";
    }
  }
  return out.str();
}

JsonValue verify_report_json(const SelfSimilarSystem& sys, const std::string& suite,
                             const std::vector<PropertyResult>& results) {
  JsonValue o = JsonValue::object();
  o.set("system", JsonValue::str(sys.name));
  o.set("suite", JsonValue::str(suite));
  bool all = true;
  JsonValue arr = JsonValue::array();
  for (const auto& r : results) {
    all = all && r.pass;
    JsonValue p = JsonValue::object();
    p.set("property", JsonValue::str(r.name));
    p.set("max_defect", JsonValue::real(r.max_defect));
    p.set("tolerance", JsonValue::real(r.tolerance));
    p.set("pass", JsonValue::boolean(r.pass));
    if (!r.note.empty()) p.set("note", JsonValue::str(r.note));
    arr.push(std::move(p));
  }
  o.set("properties", std::move(arr));
  o.set("pass", JsonValue::boolean(all));
  return o;
}

std::string verify_report_text(const std::string& suite,
                               const std::vector<PropertyResult>& results) {
  std::ostringstream out;
  out << "verify suite: " << suite << "\n";
  for (const auto& r : results) {
    out << "  " << (r.pass ? "[pass] " : "[FAIL] ") << r.name << "  defect "
        << format_real(r.max_defect) << "  tol " << format_real(r.tolerance);
    if (!r.note.empty()) out << "  (" << r.note << ")";
    out << "\n";
  }
  return out.str();
}

JsonValue trace_report_json(const SelfSimilarSystem& sys, const TraceSpec& spec, Cplx value) {
  JsonValue o = JsonValue::object();
  o.set("system", JsonValue::str(sys.name));
  if (spec.kind == TraceSpec::Discrete) {
    o.set("kind", JsonValue::str("discrete"));
    o.set("b", point_json(spec.b));
    o.set("n", JsonValue::integer(spec.n));
  } else {
    o.set("kind", JsonValue::str("hutchinson"));
    o.set("depth", JsonValue::integer(spec.depth));
  }
  o.set("value_re", JsonValue::real(value.real()));
  o.set("value_im", JsonValue::real(value.imag()));
  return o;
}

}  // namespace selfsim
