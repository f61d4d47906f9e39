#include "proofkit/audit.hpp"

#include <sstream>

#include "proofkit/sampler.hpp"

namespace proofkit {

AuditReport run_audit(const AuditOptions& options) {
  AuditReport report;
  report.options = options;
  Rng rng(options.seed);
  for (std::size_t k = 0; k < options.samples; ++k) {
    SampledSystem sample = sample_system(rng);
    UnnamedRule rule = sample_explicit_rule(rng, sample.universe);
    PropositionAudit audit = proposition_audit(sample.system, rule, sample.budget,
                                               options.extension_samples, rng.next());
    report.samples++;
    const RuleStatus& st = audit.status;
    if (audit.checked_i) report.law_i_checked++;
    if (audit.checked_ii) report.law_ii_checked++;
    if (st.derivable == Verdict::Yes) report.derivable_yes++;
    if (st.admissible == Verdict::Yes) report.admissible_yes++;
    if (st.derivable == Verdict::Unknown || st.correct == Verdict::Unknown ||
        st.admissible == Verdict::Unknown)
      report.undecided++;
    report.stability_extensions += audit.extensions_sampled;
    if (audit.sought_refutation) {
      report.refutation_sought++;
      if (audit.refutation_found) report.refutation_found++;
    }
    if (st.admissible == Verdict::Yes && st.derivable == Verdict::No) {
      report.admissible_not_derivable++;
      if (audit.refutation_found) report.admissible_not_derivable_refuted++;
    }
    for (const std::string& v : audit.violations)
      report.violations.push_back("sample " + std::to_string(k) + ": " + v);
  }
  return report;
}

std::string audit_report_text(const AuditReport& r) {
  std::ostringstream os;
  os << "audit seed=" << r.options.seed << " samples=" << r.samples << "\n";
  os << "  admissible-iff-correct checked on " << r.law_i_checked << " decided pairs\n";
  os << "  derivable-implies-admissible checked on " << r.law_ii_checked << " rules\n";
  os << "  derivable=yes " << r.derivable_yes << ", admissible=yes " << r.admissible_yes
     << ", undecided " << r.undecided << "\n";
  os << "  witness stability re-checked in " << r.stability_extensions << " extensions\n";
  os << "  admissibility refutations found for " << r.refutation_found << "/"
     << r.refutation_sought << " non-derivable rules\n";
  os << "  admissible-but-not-derivable rules: " << r.admissible_not_derivable
     << " (refuting extension found for " << r.admissible_not_derivable_refuted << ")\n";
  if (r.violations.empty()) {
    os << "  violations: none\n";
  } else {
    os << "  violations (" << r.violations.size() << "):\n";
    for (const std::string& v : r.violations) os << "    " << v << "\n";
  }
  return os.str();
}

}  // namespace proofkit
