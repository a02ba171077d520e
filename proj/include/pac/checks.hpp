#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pac {

/// One identity evaluated on one zoo entry. A skipped check has no residual
/// and no verdict; `note` says why (text output only).
struct CheckReport {
  std::string check_id;
  std::string paper_ref;  // the identity, as a formula
  std::string manifold;
  std::optional<double> max_abs_residual;
  double tolerance = 0;
  int points = 0;
  std::uint64_t seed = 0;
  std::optional<bool> pass;
  std::string note;
};

struct RunOptions {
  int points = 64;
  std::uint64_t seed = 42;
  std::optional<double> tol;  // backend default when absent
};

const std::vector<std::string>& suite_names();

/// Runs a suite ("axioms", "curvature", "connections", "transforms" or "all")
/// on a zoo entry. Reports come back sorted by check_id. Throws UsageError
/// for an unknown suite and LookupError for an unknown entry.
std::vector<CheckReport> run_suite(const std::string& manifold, const std::string& suite, const RunOptions& options);

enum class ReportFormat { Text, Json };

/// JSON: an array of objects with exactly the CheckReport fields except
/// `note`. Text: aligned columns, failing rows start with FAIL.
std::string emit_report(const std::vector<CheckReport>& reports, ReportFormat format);

/// 0 when every non-skipped check passes, 1 otherwise.
int exit_code(const std::vector<CheckReport>& reports);

}  // namespace pac
