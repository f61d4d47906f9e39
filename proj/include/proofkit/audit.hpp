#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "proofkit/rule_analysis.hpp"

namespace proofkit {

struct AuditOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 200;
  std::size_t extension_samples = 10;
};

// Aggregated law audit over seeded random systems and explicit rules.
struct AuditReport {
  AuditOptions options;
  std::size_t samples = 0;
  std::size_t law_i_checked = 0;     // admissible iff correct, both decided
  std::size_t law_ii_checked = 0;    // derivable implies admissible
  std::size_t derivable_yes = 0;
  std::size_t admissible_yes = 0;
  std::size_t undecided = 0;         // some verdict stayed unknown
  std::size_t stability_extensions = 0;  // extensions where witnesses re-checked
  std::size_t refutation_sought = 0;     // rules that were not derivable
  std::size_t refutation_found = 0;
  std::size_t admissible_not_derivable = 0;
  std::size_t admissible_not_derivable_refuted = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

AuditReport run_audit(const AuditOptions& options);

std::string audit_report_text(const AuditReport& report);

}  // namespace proofkit
