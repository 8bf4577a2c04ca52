#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sierp/verify.hpp"

namespace sierp {

/// Top-level report: {version, config, constants:{cms}, instances:[...]}.
/// Every quantity that feeds a verdict is serialized as an exact "num/den"
/// string; decimals appear only in CSV convenience columns.
struct ReportFile {
  int version = 1;
  nlohmann::json config;
  Rational cms;
  std::vector<InequalityReport> instances;
};

nlohmann::json report_to_json(const ReportFile& report);
ReportFile report_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const InequalityReport& rep);
InequalityReport instance_from_json(const nlohmann::json& j);

/// Re-verifies a serialized report using only its rationals:
/// rhs_lower must equal coef_gamma*gamma_term + coef_mass*mass_lower, and
/// each verdict must match lhs_upper <= rhs_lower.
struct RecheckResult {
  int checked = 0;
  int inconsistent = 0;
  int failed_verdicts = 0;  // instances whose recorded verdict is "fail"
  std::vector<std::string> messages;

  bool consistent() const { return inconsistent == 0; }
  bool all_pass() const { return consistent() && failed_verdicts == 0; }
};

RecheckResult recheck_report(const nlohmann::json& j);

/// Deterministic CSV for sweep output. Exact columns carry "num/den"
/// strings; *_dec columns are truncated decimals (lossy).
std::string sweep_csv(const std::vector<InequalityReport>& reports);

/// PHFunction file format:
/// {"window": N, "support": ["word", ...], "m_def": m,
///  "values": {"a/b,c/d": "num/den", ...}}.
nlohmann::json phfunction_to_json(const PHFunction& f);
PHFunction phfunction_from_json(const nlohmann::json& j);

}  // namespace sierp
