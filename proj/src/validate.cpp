#include "sdsc/validate.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sdsc {

namespace {

constexpr double kProbabilityTolerance = 1e-12;
constexpr double kMassTolerance = 1e-9;

void add_issue(ValidationReport& report, const std::string& code,
               const std::string& location, const std::string& message) {
  report.issues.push_back({code, location, message});
}

std::string num(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

}  // namespace

ValidationReport validate_dataset(const SdscDataset& dataset,
                                  double marginal_tolerance) {
  ValidationReport report;
  const int n_states = dataset.states.size();

  if (n_states < 2) {
    add_issue(report, "state-count", "states", "fewer than 2 states");
  }
  std::set<std::string> seen_states(dataset.states.labels.begin(),
                                    dataset.states.labels.end());
  if (static_cast<int>(seen_states.size()) != n_states) {
    add_issue(report, "state-labels", "states", "duplicate state labels");
  }
  if (dataset.states.prior.size() != n_states) {
    add_issue(report, "prior-shape", "states",
              "prior length does not match state count");
  } else {
    if ((dataset.states.prior.array() < 0.0).any()) {
      add_issue(report, "prior-negative", "states", "negative prior entry");
    }
    const double mass = dataset.states.prior.sum();
    if (std::abs(mass - 1.0) > kProbabilityTolerance) {
      add_issue(report, "prior-mass", "states",
                "prior mass " + num(mass) + " != 1");
    }
  }

  std::set<std::string> seen_actions(dataset.action_labels.begin(),
                                     dataset.action_labels.end());
  if (seen_actions.size() != dataset.action_labels.size()) {
    add_issue(report, "action-labels", "actions", "duplicate action labels");
  }
  if (dataset.action_labels.size() < 2) {
    add_issue(report, "action-count", "actions",
              "global action set has fewer than 2 actions");
  }

  if (dataset.problems.empty()) {
    add_issue(report, "no-problems", "dataset", "no decision problems");
  }
  std::set<std::string> ids;
  for (const auto& problem : dataset.problems) {
    if (!ids.insert(problem.id).second) {
      add_issue(report, "problem-id", "problem " + problem.id,
                "duplicate problem id");
    }
  }

  for (const auto& problem : dataset.problems) {
    const std::string where = "problem " + problem.id;
    const int n_actions = problem.action_count();

    if (n_actions < 2) {
      add_issue(report, "singleton-actions", where,
                "action set has fewer than 2 actions");
    }
    std::set<int> action_set;
    for (int a : problem.actions) {
      if (a < 0 || a >= static_cast<int>(dataset.action_labels.size())) {
        add_issue(report, "action-index", where,
                  "action index out of range of the global action set");
      } else if (!action_set.insert(a).second) {
        add_issue(report, "action-repeat", where, "repeated action");
      }
    }

    if (problem.prizes.points.rows() != n_actions ||
        problem.prizes.points.cols() != n_states) {
      add_issue(report, "prize-shape", where,
                "prize matrix shape does not match actions x states");
    } else if (!problem.prizes.points.allFinite()) {
      add_issue(report, "prize-finite", where, "non-finite prize entry");
    } else if ((problem.prizes.points.array() < 0.0).any()) {
      add_issue(report, "prize-negative", where, "negative prize entry");
    }

    if (problem.has_counts()) {
      if (problem.state_counts.size() != n_states) {
        add_issue(report, "counts-shape", where,
                  "counts_per_state length does not match state count");
      } else if ((problem.state_counts.array() < 0.0).any() ||
                 !problem.state_counts.allFinite()) {
        add_issue(report, "counts-invalid", where, "invalid trial count");
      }
    }

    if (!problem.has_joint()) {
      add_issue(report, "missing-joint", where,
                "no joint distribution (supply one or aggregate trials)");
      continue;
    }
    if (problem.joint.rows() != n_actions || problem.joint.cols() != n_states) {
      add_issue(report, "joint-shape", where,
                "joint shape does not match actions x states");
      continue;
    }
    for (int a = 0; a < n_actions; ++a) {
      for (int w = 0; w < n_states; ++w) {
        const double cell = problem.joint(a, w);
        if (!std::isfinite(cell) || cell < 0.0) {
          add_issue(report, "joint-cell", where,
                    "negative or non-finite cell at action " +
                        std::to_string(a) + ", state " + std::to_string(w));
        }
      }
    }
    const double mass = problem.joint.sum();
    if (std::abs(mass - 1.0) > kMassTolerance) {
      add_issue(report, "joint-mass", where,
                "total mass " + num(mass) + " != 1");
    }

    // Reference marginal: realized state frequencies when counts are
    // known (exact for aggregated data), the dataset prior otherwise.
    Vector reference = dataset.states.prior;
    if (problem.has_counts() && problem.state_counts.size() == n_states &&
        problem.state_counts.sum() > 0.0) {
      reference = problem.state_counts / problem.state_counts.sum();
    }
    if (reference.size() == n_states) {
      const Vector marginal = problem.state_marginal();
      for (int w = 0; w < n_states; ++w) {
        if (std::abs(marginal(w) - reference(w)) > marginal_tolerance) {
          add_issue(report, "marginal-mismatch", where,
                    "state " + dataset.states.labels[w] + " marginal " +
                        num(marginal(w)) + " != " + num(reference(w)));
        }
      }
    }
  }
  return report;
}

SdscDataset aggregate_trials(const std::vector<TrialRecord>& records,
                             const SdscDataset& definitions) {
  if (records.empty()) {
    throw std::invalid_argument("aggregate_trials: empty record set");
  }

  std::map<std::string, int> state_index;
  for (int w = 0; w < definitions.states.size(); ++w) {
    state_index[definitions.states.labels[w]] = w;
  }
  std::map<std::string, int> action_index;
  for (int a = 0; a < static_cast<int>(definitions.action_labels.size()); ++a) {
    action_index[definitions.action_labels[a]] = a;
  }

  SdscDataset result = definitions;
  std::vector<Matrix> counts(result.problems.size());
  for (size_t i = 0; i < result.problems.size(); ++i) {
    counts[i] = Matrix::Zero(result.problems[i].action_count(),
                             definitions.states.size());
    // Row position of each global action within this problem.
    result.problems[i].joint.resize(0, 0);
    result.problems[i].state_counts.resize(0);
  }

  for (const auto& record : records) {
    const int p = result.find_problem(record.problem_id);
    if (p < 0) {
      throw std::invalid_argument("aggregate_trials: unknown problem id '" +
                                  record.problem_id + "'");
    }
    const auto state_it = state_index.find(record.state);
    if (state_it == state_index.end()) {
      throw std::invalid_argument("aggregate_trials: unknown state '" +
                                  record.state + "'");
    }
    const auto action_it = action_index.find(record.action);
    if (action_it == action_index.end()) {
      throw std::invalid_argument("aggregate_trials: unknown action '" +
                                  record.action + "'");
    }
    const auto& actions = result.problems[p].actions;
    int row = -1;
    for (size_t r = 0; r < actions.size(); ++r) {
      if (actions[r] == action_it->second) {
        row = static_cast<int>(r);
        break;
      }
    }
    if (row < 0) {
      throw std::invalid_argument("aggregate_trials: action '" +
                                  record.action +
                                  "' is not available in problem '" +
                                  record.problem_id + "'");
    }
    counts[p](row, state_it->second) += 1.0;
  }

  Vector pooled = Vector::Zero(definitions.states.size());
  for (size_t i = 0; i < result.problems.size(); ++i) {
    const double total = counts[i].sum();
    if (total > 0.0) {
      result.problems[i].joint = counts[i] / total;
    } else {
      result.problems[i].joint = counts[i];  // all-zero; flagged by validation
    }
    result.problems[i].state_counts = counts[i].colwise().sum().transpose();
    pooled += result.problems[i].state_counts;
  }

  if (result.states.prior.size() != definitions.states.size() ||
      definitions.states.prior.size() == 0) {
    result.states.prior = pooled / pooled.sum();
  }
  return result;
}

}  // namespace sdsc
