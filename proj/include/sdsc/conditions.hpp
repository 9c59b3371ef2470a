#ifndef SDSC_CONDITIONS_HPP_
#define SDSC_CONDITIONS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "sdsc/dataset.hpp"

namespace sdsc {

enum class InequalityKind { kNias, kNisWithin, kNisCross };

// One tested inequality: LHS >= RHS, pass iff slack = LHS - RHS >= -tau.
struct InequalityResult {
  InequalityKind kind;
  int problem_i = -1;     // problem whose prizes are used
  int problem_j = -1;     // problem whose choice probabilities are used
  int action = -1;        // NIAS rows: chosen action (row index)
  int alt_action = -1;    // NIAS rows: candidate replacement
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = true;
};

struct CycleWitness {
  std::vector<int> problems;  // visiting order; the cycle closes on front()
  double weight = 0.0;        // total G(i|i) - G(sigma(i)|i) along the cycle
};

struct NiacResult {
  bool pass = true;
  std::optional<CycleWitness> witness;  // a most-negative cycle on failure
  Matrix values;  // values(i, j) = G(Q_j^P | A_i, x_i)
};

// Expected utility the data in problem j would earn under problem i's
// prizes after an optimal wholesale action switch:
//   sum_{a in A_j} max_{a' in A_i} sum_w P_j(a, w) u(x_i(a', w)).
// With data = prizes (j = i) this is the NIAS-maxed value of a problem.
double attention_switch_value(const PrizeSpec& prizes_i,
                              const Matrix& joint_j);

// Within-problem optimality of actions: for every chosen action, no
// wholesale switch to another available action raises expected utility.
std::vector<InequalityResult> check_nias(const SdscDataset& dataset,
                                         double tau = 1e-9);

// The full grid of no-improving-switch inequalities, one row per ordered
// problem pair (i, j) including i = j.  Diagonal rows are the aggregate
// form of NIAS: they hold with zero slack iff NIAS holds in problem i.
std::vector<InequalityResult> check_nis(const SdscDataset& dataset,
                                        double tau = 1e-9);

// No improving attention cycles, decided by negative-cycle detection on
// the complete graph with edge weight w(i -> j) = G(i|i) - G(j|i), where
// G(j|i) is the indirect utility of problem j's revealed experiment under
// problem i's prizes.  When the relaxation pass flags a candidate, an
// exact subset-sweep recovers the most negative simple cycle.
NiacResult check_niac(const SdscDataset& dataset, double tau = 1e-9);

enum class IdiNormalization {
  kFullInformation,  // divide by sum_w max_a mu(w) u(x_i(a, w))
  kNoInformation,    // divide by max_a sum_w mu(w) u(x_i(a, w))
};

// Largest normalized utility improvement available from a wholesale
// switch; 0 iff NIS passes.  Throws std::domain_error when a problem's
// normalizer is zero (all-zero prizes) and on negative prize utilities.
double improvability_difference_index(
    const SdscDataset& dataset,
    IdiNormalization normalization = IdiNormalization::kFullInformation);

// Largest epsilon in [0, 1] with LHS_i >= epsilon * RHS_ij for all pairs;
// 1 iff NIS passes.  Throws std::domain_error on negative prize utilities.
double improvability_efficiency_index(const SdscDataset& dataset);

struct ConditionReport {
  double tau = 1e-9;
  std::vector<InequalityResult> nias_rows;
  std::vector<InequalityResult> nis_rows;
  bool nias_pass = true;
  bool nis_pass = true;
  NiacResult niac;
  double idi_full_information = 0.0;
  double idi_no_information = 0.0;
  double iei = 1.0;
  double worst_violation = 0.0;  // most negative NIS slack, 0 if none
  // Problems where NIAS failure makes the realized value and the G-based
  // (action-optimized) value diverge; NIAC edges use the G-based form.
  std::vector<int> nias_divergent_problems;
};

// Runs every condition and assembles the report.  The dataset must have a
// joint on every problem.
ConditionReport audit_dataset(const SdscDataset& dataset, double tau = 1e-9);

}  // namespace sdsc

#endif  // SDSC_CONDITIONS_HPP_
