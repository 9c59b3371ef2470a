#ifndef SDSC_SOLVE_HPP_
#define SDSC_SOLVE_HPP_

#include "sdsc/dataset.hpp"

namespace sdsc {

// Mutual information of a joint distribution in nats,
//   sum_{a,w} P(a, w) ln[ P(a, w) / (P(a) mu(w)) ],  with 0 ln 0 = 0.
double mutual_information(const Matrix& joint, const Vector& prior);

// Entropy of a distribution in nats.
double entropy(const Vector& distribution);

struct SolverOptions {
  double inner_tolerance = 1e-12;  // max cell change of the fixed point
  int max_inner_iterations = 100000;
  double capacity_tolerance = 1e-8;  // |MI - C| at the bisection solution
  int max_outer_iterations = 100;
};

struct SolveResult {
  Matrix joint;
  double mutual_info = 0.0;
  double objective = 0.0;    // sum P(a,w) u(a,w)
  double multiplier = 0.0;   // shadow price per nat (0 when slack)
  bool constraint_binding = false;
  int inner_iterations = 0;
  int outer_iterations = 0;
  double residual = 0.0;     // final fixed-point cell change
};

// Fixed-capacity rational inattention: maximize sum P(a,w) u(a,w) over
// joints with state marginal `prior`, subject to mutual information <= C
// nats.  Solved by bisection on the information price with an inner
// alternating (Blahut-Arimoto style) fixed point.  Utilities are
// normalized internally, so scaling all prizes leaves the joint unchanged.
// The returned joint satisfies NIAS; when the unconstrained optimum
// exceeds C the constraint binds to within capacity_tolerance.  Throws
// std::runtime_error with residuals on non-convergence and
// std::invalid_argument on C <= 0.
SolveResult solve_fixed_capacity(const Vector& prior, const Matrix& utilities,
                                 double capacity,
                                 const SolverOptions& options = {});

// Elastic Shannon-cost learning: maximize sum P(a,w) u(a,w) - lambda * MI(P).
// For a symmetric binary diagonal prize p the optimum is symmetric with
// accuracy 1 / (1 + exp(-p / lambda)).  Throws on lambda <= 0 or
// non-convergence.
SolveResult solve_shannon_elastic(const Vector& prior, const Matrix& utilities,
                                  double marginal_cost,
                                  const SolverOptions& options = {});

}  // namespace sdsc

#endif  // SDSC_SOLVE_HPP_
