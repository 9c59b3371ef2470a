#ifndef SDSC_REVEALED_HPP_
#define SDSC_REVEALED_HPP_

#include <vector>

#include "sdsc/dataset.hpp"

namespace sdsc {

// A Bayes-plausible information structure: a finite-support distribution
// over posteriors.  Row g of `support` is the posterior gamma_g; weights
// hold Q(gamma_g) > 0.
struct Experiment {
  Matrix support;  // n_posteriors x n_states
  Vector weights;  // n_posteriors

  int support_size() const { return static_cast<int>(weights.size()); }
  // The weight-averaged posterior; equals the prior when Bayes-plausible.
  Vector mean_posterior() const { return support.transpose() * weights; }
};

// Mixed action strategy q(a | gamma) attached to an experiment's support.
// Rows index support posteriors, columns index the actions of the decision
// problem the strategy is for (in the problem's declaration order).
struct ActionStrategy {
  Matrix choice;  // n_posteriors x n_actions, rows sum to 1
};

bool is_bayes_plausible(const Experiment& experiment, const Vector& prior,
                        double tolerance = 1e-9);

// Revealed posterior of one chosen action: gamma^a(w) = P(a, w) / P(a).
struct RevealedPosterior {
  int action;        // row in the problem's joint
  double mass;       // P(a)
  Vector posterior;  // gamma^a
};

// One revealed posterior per action with P(a) > 0; unchosen actions are
// omitted.
std::vector<RevealedPosterior> revealed_posteriors(
    const DecisionProblem& problem);

struct RevealedStrategy {
  Experiment experiment;
  ActionStrategy strategy;
};

// The revealed experiment Q^P and action strategy q^P: actions whose
// posteriors coincide within `merge_tolerance` cellwise share a support
// point whose weight is the sum of their choice probabilities.
RevealedStrategy revealed_experiment(const DecisionProblem& problem,
                                     double merge_tolerance = 1e-9);

// Forward map from a strategy to the SDSC it would generate:
//   P(a, w) = sum_g q(a | gamma_g) Q(gamma_g) gamma_g(w).
Matrix generate_sdsc(const Experiment& experiment,
                     const ActionStrategy& strategy);

// U(a | gamma, x) = sum_w gamma(w) u(x(a, w)).
double posterior_expected_utility(int action, const Vector& posterior,
                                  const PrizeSpec& prizes);

struct IndirectUtility {
  double value = 0.0;
  // Optimal pure action per support posterior; ties broken by declaration
  // order.  A pure optimum of the inner linear program always exists.
  std::vector<int> actions;
};

// Indirect expected utility G(Q | A, x) = sum_g Q(gamma_g) max_a U(a | gamma_g, x),
// where the available actions are the rows of `prizes`.
IndirectUtility indirect_utility(const Experiment& experiment,
                                 const PrizeSpec& prizes);

// Garbles an experiment by merging two support points into their
// Q-weighted average.  Blackwell monotonicity: this never increases
// indirect utility.
Experiment merge_support(const Experiment& experiment, int first, int second);

}  // namespace sdsc

#endif  // SDSC_REVEALED_HPP_
