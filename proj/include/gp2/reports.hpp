#ifndef GP2_REPORTS_HPP
#define GP2_REPORTS_HPP

#include <string>

#include "gp2/bigstep.hpp"
#include "gp2/explorer.hpp"
#include "gp2/smallstep.hpp"

namespace gp2 {

/// Structured documents with stable field names, pretty-printed JSON.
/// OutcomeSet: { graphs: [canonical text...], fail, bottom, exhausted }.
std::string outcome_set_json(const OutcomeSet& os);
std::string comparison_report_json(const ComparisonReport& report);
std::string audit_report_json(const AuditReport& report);

/// Machine-readable trace: one record per step with the applied rule
/// chain, the command rendering, and the stack as canonical graph keys.
std::string trace_json(const Trace& trace);

/// Fig. 5-style line-oriented text: the start configuration, then one
/// `-> [label] <configuration>` line per step.
std::string trace_text(const Trace& trace);

std::string lasso_json(const Lasso& lasso);

} // namespace gp2

#endif
