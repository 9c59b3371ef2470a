#include "sdsc/revealed.hpp"

#include <stdexcept>

namespace sdsc {

bool is_bayes_plausible(const Experiment& experiment, const Vector& prior,
                        double tolerance) {
  if (experiment.support.cols() != prior.size()) return false;
  if ((experiment.weights.array() <= 0.0).any()) return false;
  if (std::abs(experiment.weights.sum() - 1.0) > 1e-12) return false;
  return (experiment.mean_posterior() - prior).cwiseAbs().maxCoeff() <=
         tolerance;
}

std::vector<RevealedPosterior> revealed_posteriors(
    const DecisionProblem& problem) {
  std::vector<RevealedPosterior> result;
  const Vector mass = problem.action_marginal();
  for (int a = 0; a < problem.joint.rows(); ++a) {
    if (mass(a) > 0.0) {
      result.push_back({a, mass(a), problem.joint.row(a).transpose() / mass(a)});
    }
  }
  return result;
}

RevealedStrategy revealed_experiment(const DecisionProblem& problem,
                                     double merge_tolerance) {
  const auto posteriors = revealed_posteriors(problem);
  const int n_actions = static_cast<int>(problem.joint.rows());
  const int n_states = static_cast<int>(problem.joint.cols());

  // Group actions whose revealed posteriors coincide cellwise.
  std::vector<Vector> support;
  std::vector<double> weights;
  std::vector<std::vector<int>> members;
  for (const auto& rp : posteriors) {
    int slot = -1;
    for (size_t g = 0; g < support.size(); ++g) {
      if ((support[g] - rp.posterior).cwiseAbs().maxCoeff() <=
          merge_tolerance) {
        slot = static_cast<int>(g);
        break;
      }
    }
    if (slot < 0) {
      support.push_back(rp.posterior);
      weights.push_back(rp.mass);
      members.push_back({rp.action});
    } else {
      weights[slot] += rp.mass;
      members[slot].push_back(rp.action);
    }
  }

  RevealedStrategy result;
  result.experiment.support.resize(static_cast<int>(support.size()), n_states);
  result.experiment.weights.resize(static_cast<int>(support.size()));
  result.strategy.choice =
      Matrix::Zero(static_cast<int>(support.size()), n_actions);
  const Vector mass = problem.action_marginal();
  for (size_t g = 0; g < support.size(); ++g) {
    result.experiment.support.row(g) = support[g].transpose();
    result.experiment.weights(g) = weights[g];
    for (int a : members[g]) {
      result.strategy.choice(static_cast<int>(g), a) = mass(a) / weights[g];
    }
  }
  return result;
}

Matrix generate_sdsc(const Experiment& experiment,
                     const ActionStrategy& strategy) {
  if (strategy.choice.rows() != experiment.support_size()) {
    throw std::invalid_argument(
        "generate_sdsc: strategy is not defined on the experiment's support");
  }
  return strategy.choice.transpose() * experiment.weights.asDiagonal() *
         experiment.support;
}

double posterior_expected_utility(int action, const Vector& posterior,
                                  const PrizeSpec& prizes) {
  if (action < 0 || action >= prizes.points.rows()) {
    throw std::out_of_range("posterior_expected_utility: unknown action row");
  }
  return prizes.points.row(action).dot(posterior);
}

IndirectUtility indirect_utility(const Experiment& experiment,
                                 const PrizeSpec& prizes) {
  // utilities(g, a) = U(a | gamma_g, x)
  const Matrix utilities = experiment.support * prizes.points.transpose();
  IndirectUtility result;
  result.actions.resize(experiment.support_size());
  for (int g = 0; g < experiment.support_size(); ++g) {
    int best = 0;
    utilities.row(g).maxCoeff(&best);  // first maximizer on ties
    result.actions[g] = best;
    result.value += experiment.weights(g) * utilities(g, best);
  }
  return result;
}

Experiment merge_support(const Experiment& experiment, int first, int second) {
  if (first == second || first < 0 || second < 0 ||
      first >= experiment.support_size() ||
      second >= experiment.support_size()) {
    throw std::out_of_range("merge_support: bad support indices");
  }
  if (first > second) std::swap(first, second);
  const double mass =
      experiment.weights(first) + experiment.weights(second);
  const Vector merged =
      (experiment.weights(first) * experiment.support.row(first) +
       experiment.weights(second) * experiment.support.row(second))
          .transpose() /
      mass;

  Experiment result;
  const int n = experiment.support_size() - 1;
  result.support.resize(n, experiment.support.cols());
  result.weights.resize(n);
  int out = 0;
  for (int g = 0; g < experiment.support_size(); ++g) {
    if (g == second) continue;
    if (g == first) {
      result.support.row(out) = merged.transpose();
      result.weights(out) = mass;
    } else {
      result.support.row(out) = experiment.support.row(g);
      result.weights(out) = experiment.weights(g);
    }
    ++out;
  }
  return result;
}

}  // namespace sdsc
