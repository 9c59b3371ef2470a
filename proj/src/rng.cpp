#include "sdsc/rng.hpp"

#include <stdexcept>

namespace sdsc {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  std::uint64_t mixed = splitmix64(state);
  state ^= 0xD1B54A32D192ED03ULL * (stream + 1);
  mixed ^= splitmix64(state);
  return std::mt19937_64(mixed);
}

int sample_index(const Vector& weights, std::mt19937_64& engine) {
  const double total = weights.sum();
  if (!(total > 0.0)) {
    throw std::domain_error("sample_index: weights sum to zero");
  }
  const double u = next_unit(engine) * total;
  double cumulative = 0.0;
  for (int i = 0; i < weights.size(); ++i) {
    cumulative += weights(i);
    if (u < cumulative) return i;
  }
  return static_cast<int>(weights.size()) - 1;
}

std::vector<TrialRecord> sample_trials(const SdscDataset& dataset,
                                       int problem_index, int per_state,
                                       std::uint64_t seed) {
  if (problem_index < 0 || problem_index >= dataset.problem_count()) {
    throw std::out_of_range("sample_trials: bad problem index");
  }
  if (per_state < 1) {
    throw std::invalid_argument("sample_trials: need at least one trial");
  }
  const DecisionProblem& problem = dataset.problems[problem_index];
  const Matrix conditionals = problem.conditionals();
  std::mt19937_64 engine =
      make_stream(seed, static_cast<std::uint64_t>(problem_index));

  std::vector<TrialRecord> records;
  records.reserve(static_cast<size_t>(per_state) * dataset.states.size());
  for (int w = 0; w < dataset.states.size(); ++w) {
    const Vector column = conditionals.col(w);
    for (int k = 0; k < per_state; ++k) {
      const int row = sample_index(column, engine);
      records.push_back({problem.id, "sim",
                         dataset.states.labels[w],
                         dataset.action_labels[problem.actions[row]]});
    }
  }
  return records;
}

}  // namespace sdsc
