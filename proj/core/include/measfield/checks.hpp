#ifndef MEASFIELD_CHECKS_HPP
#define MEASFIELD_CHECKS_HPP

#include <string>
#include <vector>

#include "measfield/workspace.hpp"

namespace measfield {

/// One law of one module, rendered as a numeric check.
struct LawResult {
  std::string id;      // stable identifier, e.g. "MEAS-RN-CHAIN"
  std::string anchor;  // content slug naming the law it instantiates
  bool pass;
  double residual;     // max observed residual (0 for exact laws that hold)
  double tol;          // 0 for exact laws
};

struct CheckReport {
  std::string suite;
  std::vector<LawResult> laws;
};

/// Suites, in report order.
std::vector<std::string> suite_names();

/// Runs one suite over deterministic generated instances plus whatever
/// matching entities the workspace supplies.  `tol` is the tolerance for
/// the non-strict float laws.
CheckReport run_suite(const std::string& name, const Workspace& ws,
                      double tol);

/// Renders reports in the line format `LAW <id> <anchor> PASS|FAIL
/// residual=<r> tol=<t>`.
std::string format_reports(const std::vector<CheckReport>& reports);

bool all_pass(const std::vector<CheckReport>& reports);

}  // namespace measfield

#endif  // MEASFIELD_CHECKS_HPP
