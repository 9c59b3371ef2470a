#ifndef SDSC_DATASET_HPP_
#define SDSC_DATASET_HPP_

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace sdsc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Finite state space with its objective prior.
struct StateSpace {
  std::vector<std::string> labels;
  Vector prior;

  int size() const { return static_cast<int>(labels.size()); }
};

// Prizes in probability points, one row per action, one column per state.
// Utility is linear in probability points (u(p) = p, with u(100) = 100 and
// u(0) = 0), so the matrix doubles as the utility matrix.
struct PrizeSpec {
  Matrix points;
  double cash_amount = 0.0;  // informational only
};

// One decision problem: an action subset, its prizes, and the joint
// distribution P(a, w) of chosen actions and realized states.
struct DecisionProblem {
  std::string id;
  std::vector<int> actions;  // indices into SdscDataset::action_labels
  PrizeSpec prizes;          // actions.size() x n_states
  Matrix joint;              // actions.size() x n_states; empty if unobserved
  Vector state_counts;       // trials per state; empty when unknown

  int action_count() const { return static_cast<int>(actions.size()); }
  bool has_joint() const { return joint.size() > 0; }
  bool has_counts() const { return state_counts.size() > 0; }

  // Marginal choice probability P(a) and Bayesian conditionals.
  Vector action_marginal() const { return joint.rowwise().sum(); }
  Vector state_marginal() const { return joint.colwise().sum().transpose(); }

  // P(a | w), column-stochastic in each state column.  States with zero
  // marginal get a zero column.
  Matrix conditionals() const;
};

// A collection of decision problems over a common state space and a
// common global action set.
struct SdscDataset {
  std::string name;
  StateSpace states;
  std::vector<std::string> action_labels;
  std::vector<DecisionProblem> problems;
  std::string metadata_json;  // free-form provenance block, preserved on round trip

  int problem_count() const { return static_cast<int>(problems.size()); }
  int find_problem(const std::string& id) const;  // -1 when absent
};

// One raw experimental row, before aggregation into joint distributions.
struct TrialRecord {
  std::string problem_id;
  std::string subject_id;
  std::string state;
  std::string action;
};

// Realized expected utility of the data in a problem:
//   sum_a sum_w P(a, w) u(x(a, w)).
double expected_utility(const DecisionProblem& problem);

}  // namespace sdsc

#endif  // SDSC_DATASET_HPP_
