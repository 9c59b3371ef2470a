#ifndef SDSC_SYNTH_HPP_
#define SDSC_SYNTH_HPP_

#include <string>
#include <vector>

#include "sdsc/dataset.hpp"
#include "sdsc/solve.hpp"

namespace sdsc {

// Skeleton of a state-matching task: one problem per prize level, one
// action per state, prizes p_i on the diagonal (correct guess pays p_i
// probability points, anything else pays 0).  Joints are left empty.
SdscDataset matching_dataset(const Vector& prior,
                             const std::vector<double>& prizes);

struct GroundTruth {
  std::string model;        // "fixed" | "elastic"
  double parameter = 0.0;   // capacity in nats, or marginal cost per nat
  Vector prior;
  std::vector<double> prizes;
  std::vector<Matrix> population_joints;
  // Condition outcomes implied by the generating model.
  bool expect_nis_pass = false;
  bool expect_nias_pass = true;
  bool expect_niac_pass = true;
};

struct SynthResult {
  SdscDataset dataset;  // population joints attached
  GroundTruth truth;
};

// Solves every problem of a matching task under one fixed capacity.  The
// common feasible set makes the resulting collection satisfy NIS exactly
// (up to solver residuals).
SynthResult synth_fixed_capacity(const Vector& prior,
                                 const std::vector<double>& prizes,
                                 double capacity,
                                 const SolverOptions& options = {});

// Solves every problem under an elastic Shannon cost.  With strictly
// increasing prizes, accuracy strictly increases, so the collection fails
// NIS in the increasing-incentive direction while satisfying NIAS and
// NIAC.
SynthResult synth_elastic(const Vector& prior,
                          const std::vector<double>& prizes,
                          double marginal_cost,
                          const SolverOptions& options = {});

}  // namespace sdsc

#endif  // SDSC_SYNTH_HPP_
