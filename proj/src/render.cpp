#include "sdsc/render.hpp"

#include <iomanip>
#include <sstream>

namespace sdsc {

namespace {

std::string fixed2(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << v;
  return out.str();
}

void hline(std::ostringstream& out, int width) {
  out << std::string(width, '-') << '\n';
}

}  // namespace

std::string format_p_value(double p) {
  if (p < 0.01) return "<0.01";
  return fixed2(p);
}

std::string render_validation(const ValidationReport& report) {
  std::ostringstream out;
  if (report.passed()) {
    out << "dataset valid\n";
    return out.str();
  }
  out << report.issues.size() << " validation issue(s)\n";
  for (const auto& issue : report.issues) {
    out << "  [" << issue.code << "] " << issue.location << ": "
        << issue.message << '\n';
  }
  return out.str();
}

std::string render_conditions(const ConditionReport& report,
                              const SdscDataset& dataset) {
  std::ostringstream out;
  out << std::left;
  out << "NIS inequalities (rows: prizes of i against the attention revealed in j)\n";
  hline(out, 66);
  out << std::setw(10) << "i" << std::setw(10) << "j" << std::setw(12)
      << "LHS" << std::setw(12) << "RHS" << std::setw(12) << "slack"
      << "fails?\n";
  hline(out, 66);
  for (const auto& row : report.nis_rows) {
    out << std::setw(10) << dataset.problems[row.problem_i].id << std::setw(10)
        << dataset.problems[row.problem_j].id << std::setw(12)
        << fixed2(row.lhs) << std::setw(12) << fixed2(row.rhs) << std::setw(12)
        << fixed2(row.slack) << (row.pass ? "No" : "Yes") << '\n';
  }
  hline(out, 66);

  int nias_failures = 0;
  for (const auto& row : report.nias_rows) {
    if (!row.pass) ++nias_failures;
  }
  out << "NIAS: " << (report.nias_pass ? "pass" : "FAIL");
  if (nias_failures > 0) out << " (" << nias_failures << " action switch(es))";
  out << "\nNIAC: " << (report.niac.pass ? "pass" : "FAIL");
  if (report.niac.witness) {
    out << " (cycle";
    for (int p : report.niac.witness->problems) {
      out << ' ' << dataset.problems[p].id;
    }
    out << ", weight " << fixed2(report.niac.witness->weight) << ")";
  }
  int nis_failures = 0;
  for (const auto& row : report.nis_rows) {
    if (!row.pass) ++nis_failures;
  }
  out << "\nNIS:  " << (report.nis_pass ? "pass" : "FAIL");
  if (nis_failures > 0) {
    out << " (" << nis_failures << " of " << report.nis_rows.size()
        << " inequalities)";
  }
  out << '\n';
  out << "IDI (full-information normalization): "
      << fixed2(report.idi_full_information) << '\n';
  out << "IDI (no-information normalization):   "
      << fixed2(report.idi_no_information) << '\n';
  out << "IEI: " << fixed2(report.iei) << '\n';
  if (report.worst_violation < 0.0) {
    out << "Worst violation: " << fixed2(report.worst_violation) << '\n';
  }
  if (!report.nias_divergent_problems.empty()) {
    out << "Note: NIAS fails in";
    for (int p : report.nias_divergent_problems) {
      out << ' ' << dataset.problems[p].id;
    }
    out << "; NIAC edge values use the action-optimized (G-based) form,\n"
           "which diverges from the realized expected utility there.\n";
  }
  return out.str();
}

std::string render_inference(const InferenceReport& report,
                             const SdscDataset& dataset) {
  std::ostringstream out;
  out << std::left;
  out << "Pairwise one-sided switch tests (H0: no improving switch)\n";
  hline(out, 78);
  out << std::setw(10) << "i" << std::setw(10) << "j" << std::setw(10) << "LHS"
      << std::setw(10) << "RHS" << std::setw(10) << "z" << std::setw(9)
      << "p" << std::setw(12) << "reject?" << "notes\n";
  hline(out, 78);
  for (const auto& test : report.pairwise) {
    out << std::setw(10) << dataset.problems[test.problem_i].id << std::setw(10)
        << dataset.problems[test.problem_j].id << std::setw(10)
        << fixed2(test.lhs) << std::setw(10) << fixed2(test.rhs)
        << std::setw(10) << fixed2(test.z) << std::setw(9)
        << format_p_value(test.p_value) << std::setw(12)
        << (test.p_value <= report.alpha ? "Yes" : "No");
    if (test.degenerate) out << "degenerate ";
    if (test.near_tie) out << "near-tie";
    out << '\n';
  }
  hline(out, 78);
  out << "Joint equal-accuracy Wald test"
      << (report.joint.generalized ? " (generalized)" : "") << ": W = "
      << fixed2(report.joint.statistic) << ", df = "
      << report.joint.degrees_of_freedom << ", p = "
      << format_p_value(report.joint.p_value) << " -> "
      << (report.joint.p_value <= report.alpha ? "reject equal accuracy"
                                               : "no rejection")
      << '\n';
  if (report.bootstrap) {
    const auto& boot = *report.bootstrap;
    out << "Bootstrap NIAS (" << boot.replications << " replications, seed "
        << boot.seed << ", threshold " << fixed2(boot.threshold) << "): "
        << (boot.rejected ? "REJECTED" : "not rejected") << '\n';
    for (const auto& row : boot.rows) {
      const auto& problem = dataset.problems[row.problem];
      out << "  " << std::setw(10) << problem.id << std::setw(10)
          << dataset.action_labels[problem.actions[row.action]]
          << "failure fraction " << std::fixed << std::setprecision(3)
          << row.failure_fraction << '\n';
    }
  }
  return out.str();
}

}  // namespace sdsc
