#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mtsp/document.hpp"
#include "mtsp/pipeline.hpp"

namespace mtsp {

enum class ReportFormat { kText, kJson };

ReportFormat parse_report_format(std::string_view text);

/// One difference (or agreement) between a published reference value and
/// the value recomputed from the instance data.
struct LedgerEntry {
  std::string claim;
  std::string source;
  std::string computed;
  std::string delta;
};

/// Brute-force checks of each pipeline stage on the plan's own inputs.
struct StageChecks {
  struct TourCheck {
    int vehicle = 0;
    Tour oracle;
    bool agrees = false;
  };
  std::optional<AssignmentSolution> assignment_oracle;  // nullopt when skipped
  std::string assignment_skipped;                       // reason, when skipped
  bool assignment_agrees = false;
  std::vector<TourCheck> tours;
};

StageChecks run_stage_checks(const Plan& plan);

std::vector<LedgerEntry> build_ledger(const Plan& plan, const PublishedResult* published, const Plan* monolithic);

struct ReportInput {
  const Plan* plan = nullptr;
  const PublishedResult* published = nullptr;  // ledger source; null -> empty ledger
  const StageChecks* stage_checks = nullptr;
  const Plan* monolithic = nullptr;
  bool dump_partition = false;
};

/// Renders a deterministic report. JSON rationals are {num, den, decimal}.
std::string emit_report(const ReportInput& input, ReportFormat format);

}  // namespace mtsp
