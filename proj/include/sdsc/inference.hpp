#ifndef SDSC_INFERENCE_HPP_
#define SDSC_INFERENCE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdsc/dataset.hpp"

namespace sdsc {

// Covariance of the estimated conditionals P-hat(a | w) within one state
// of one problem: a multinomial block
//   Var      = P(a|w) (1 - P(a|w)) / n_w
//   Cov(a,a') = -P(a|w) P(a'|w) / n_w.
// Blocks are independent across states and across problems.  Each block
// is symmetric PSD with zero row sums.
Matrix conditional_covariance(const DecisionProblem& problem, int state);

// Exact Delta-method variance of a functional linear in the conditionals:
// coefficients[k](a, w) multiplies P-hat_k(a | w).  Problems without trial
// counts make the variance undefined; throws std::invalid_argument.
double delta_variance(const SdscDataset& dataset,
                      const std::vector<Matrix>& coefficients);

// One-sided test of a single NIS inequality.  H0: Delta = RHS_ij - LHS_i
// <= 0 (NIS holds for the pair).  Delta-hat is linear in the estimated
// conditionals once the RHS argmax is frozen at its point estimate, so the
// Delta method is exact; z = Delta-hat / se and p = 1 - Phi(z).
struct PairwiseTest {
  int problem_i = -1;
  int problem_j = -1;
  double lhs = 0.0;
  double rhs = 0.0;
  double delta = 0.0;
  double variance = 0.0;
  double z = 0.0;
  double p_value = 1.0;
  bool degenerate = false;  // zero variance; p is the exact comparison
  // The RHS argmax in some row of problem j is within two standard errors
  // of its runner-up, so the frozen-argmax approximation is fragile there.
  bool near_tie = false;
};

PairwiseTest pairwise_switch_test(const SdscDataset& dataset, int problem_i,
                                  int problem_j);

// Joint Wald test of the NIS equality implication "accuracy is independent
// of incentives".  For binary-action binary-state problems the tested
// functional is theta_i = P_i(a1|w1) + P_i(a2|w2) (the binary reduction);
// otherwise the problem-level switch-value functional with frozen argmax
// is used and the prize matrices must be proportional across problems
// (generalized equality test).  W = d' (R Sigma R')^-1 d against
// chi-square with N - 1 degrees of freedom.
struct JointWaldTest {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
  std::vector<double> theta;  // tested functional per problem
  bool generalized = false;   // true when the non-binary path was taken
};

JointWaldTest joint_accuracy_wald(const SdscDataset& dataset);

// Bootstrap test of NIAS on raw trials: resample each problem's trials
// with replacement, re-evaluate every NIAS inequality per replicate, and
// report per-action failure fractions.  NIAS is not rejected when every
// fraction stays at or below the threshold.
struct BootstrapActionRow {
  int problem = -1;
  int action = -1;  // row in the problem's joint
  double failure_fraction = 0.0;
};

struct BootstrapNiasReport {
  int replications = 0;
  std::uint64_t seed = 0;
  double threshold = 0.05;
  bool rejected = false;
  std::vector<BootstrapActionRow> rows;
};

BootstrapNiasReport bootstrap_nias(const std::vector<TrialRecord>& records,
                                   const SdscDataset& definitions,
                                   int replications, std::uint64_t seed,
                                   double threshold = 0.05);

// Everything cmd_infer renders: the pairwise grid plus the joint test.
struct InferenceReport {
  std::vector<PairwiseTest> pairwise;
  JointWaldTest joint;
  std::optional<BootstrapNiasReport> bootstrap;
  double alpha = 0.05;
};

InferenceReport run_inference(const SdscDataset& dataset, double alpha = 0.05);

}  // namespace sdsc

#endif  // SDSC_INFERENCE_HPP_
