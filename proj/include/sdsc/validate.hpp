#ifndef SDSC_VALIDATE_HPP_
#define SDSC_VALIDATE_HPP_

#include <string>
#include <vector>

#include "sdsc/dataset.hpp"

namespace sdsc {

struct ValidationIssue {
  std::string code;      // stable machine identifier, e.g. "joint-mass"
  std::string location;  // where it happened, e.g. "problem p40"
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool passed() const { return issues.empty(); }
};

// Checks every structural invariant of a dataset and reports all
// violations instead of throwing.  The marginal of each joint is compared
// against the per-problem empirical state frequencies when trial counts
// are present, and against the dataset prior otherwise.  Published
// aggregate tables are rounded to two decimals, hence the loose default.
ValidationReport validate_dataset(const SdscDataset& dataset,
                                  double marginal_tolerance = 0.02);

// Builds the estimator P-hat from raw trials: P(a, w) = count(a, w) / total,
// with per-state trial counts recorded on each problem.  `definitions`
// supplies the state space, action labels and per-problem prizes; any
// joints it carries are ignored.  The dataset prior is kept when the
// definitions provide one, otherwise the pooled empirical state
// frequencies are used.  Throws std::invalid_argument on unknown labels
// or an empty record set.
SdscDataset aggregate_trials(const std::vector<TrialRecord>& records,
                             const SdscDataset& definitions);

}  // namespace sdsc

#endif  // SDSC_VALIDATE_HPP_
