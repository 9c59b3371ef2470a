#include "sdsc/synth.hpp"

#include <stdexcept>
#include <string>

namespace sdsc {

SdscDataset matching_dataset(const Vector& prior,
                             const std::vector<double>& prizes) {
  const int n_states = static_cast<int>(prior.size());
  if (n_states < 2) {
    throw std::invalid_argument("matching_dataset: need at least 2 states");
  }
  if (prizes.empty()) {
    throw std::invalid_argument("matching_dataset: need at least one prize");
  }
  SdscDataset dataset;
  dataset.name = "matching task";
  dataset.states.prior = prior;
  for (int w = 0; w < n_states; ++w) {
    dataset.states.labels.push_back("w" + std::to_string(w + 1));
    dataset.action_labels.push_back("a" + std::to_string(w + 1));
  }
  for (size_t k = 0; k < prizes.size(); ++k) {
    DecisionProblem problem;
    problem.id = "p" + std::to_string(static_cast<long long>(prizes[k]));
    if (dataset.find_problem(problem.id) >= 0) {
      problem.id += "_" + std::to_string(k);
    }
    for (int a = 0; a < n_states; ++a) problem.actions.push_back(a);
    problem.prizes.points =
        Matrix::Identity(n_states, n_states) * prizes[k];
    dataset.problems.push_back(std::move(problem));
  }
  return dataset;
}

namespace {

SynthResult solve_collection(const Vector& prior,
                             const std::vector<double>& prizes,
                             const std::string& model, double parameter,
                             bool fixed, const SolverOptions& options) {
  SynthResult result;
  result.dataset = matching_dataset(prior, prizes);
  result.truth.model = model;
  result.truth.parameter = parameter;
  result.truth.prior = prior;
  result.truth.prizes = prizes;
  result.truth.expect_nis_pass = fixed;
  for (auto& problem : result.dataset.problems) {
    const SolveResult solved =
        fixed ? solve_fixed_capacity(prior, problem.prizes.points, parameter,
                                     options)
              : solve_shannon_elastic(prior, problem.prizes.points, parameter,
                                      options);
    problem.joint = solved.joint;
    result.truth.population_joints.push_back(solved.joint);
  }
  return result;
}

}  // namespace

SynthResult synth_fixed_capacity(const Vector& prior,
                                 const std::vector<double>& prizes,
                                 double capacity,
                                 const SolverOptions& options) {
  return solve_collection(prior, prizes, "fixed", capacity, true, options);
}

SynthResult synth_elastic(const Vector& prior,
                          const std::vector<double>& prizes,
                          double marginal_cost, const SolverOptions& options) {
  return solve_collection(prior, prizes, "elastic", marginal_cost, false,
                          options);
}

}  // namespace sdsc
