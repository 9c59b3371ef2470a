#include "sdsc/dataset.hpp"

namespace sdsc {

Matrix DecisionProblem::conditionals() const {
  Matrix result = joint;
  const Vector marginal = state_marginal();
  for (int w = 0; w < result.cols(); ++w) {
    if (marginal(w) > 0.0) {
      result.col(w) /= marginal(w);
    } else {
      result.col(w).setZero();
    }
  }
  return result;
}

int SdscDataset::find_problem(const std::string& id) const {
  for (int i = 0; i < problem_count(); ++i) {
    if (problems[i].id == id) return i;
  }
  return -1;
}

double expected_utility(const DecisionProblem& problem) {
  return (problem.joint.array() * problem.prizes.points.array()).sum();
}

}  // namespace sdsc
