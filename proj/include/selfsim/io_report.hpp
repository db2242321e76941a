#pragma once

// Report rendering shared by the CLI and the golden tests.

#include "selfsim/ideals_traces.hpp"
#include "selfsim/io_json.hpp"
#include "selfsim/verify.hpp"

namespace selfsim {

JsonValue point_json(const QVec& p);

JsonValue analyze_report_json(const SelfSimilarSystem& sys, const SingularityReport& rep);
std::string analyze_report_text(const SelfSimilarSystem& sys, const SingularityReport& rep);

struct IdealsRow {
  IdealDescriptor descriptor;
  ClosedSet set;
  long quotient_dim = -1;  // -1: infinite-dimensional (the zero ideal)
  double trace_normalization = 0;
};
std::vector<IdealsRow> ideals_table(const SelfSimilarSystem& sys, const MembershipOracle& oracle,
                                    const SingularityReport& rep, int max_level);
JsonValue ideals_report_json(const SelfSimilarSystem& sys, const MembershipOracle& oracle,
                             const std::vector<IdealsRow>& rows, int max_level);
std::string ideals_report_text(const SelfSimilarSystem& sys, const std::vector<IdealsRow>& rows);

JsonValue verify_report_json(const SelfSimilarSystem& sys, const std::string& suite,
                             const std::vector<PropertyResult>& results);
std::string verify_report_text(const std::string& suite,
                               const std::vector<PropertyResult>& results);

JsonValue trace_report_json(const SelfSimilarSystem& sys, const TraceSpec& spec, Cplx value);

}  // namespace selfsim
