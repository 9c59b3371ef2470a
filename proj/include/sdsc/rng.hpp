#ifndef SDSC_RNG_HPP_
#define SDSC_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "sdsc/dataset.hpp"

namespace sdsc {

std::uint64_t splitmix64(std::uint64_t& state);

// Independent deterministic generator for (seed, stream); replicate k of a
// simulation owns stream k, so results are identical at any parallelism
// level.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined std::uniform_real_distribution.
inline double next_unit(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

// Index drawn from an unnormalized weight vector by inverse CDF.
int sample_index(const Vector& weights, std::mt19937_64& engine);

// Draws `per_state` actions per state from the problem's conditionals
// P(a | w).  Identical (seed, inputs) give identical records.  Each
// problem owns the stream (seed, problem_index).
std::vector<TrialRecord> sample_trials(const SdscDataset& dataset,
                                       int problem_index, int per_state,
                                       std::uint64_t seed);

}  // namespace sdsc

#endif  // SDSC_RNG_HPP_
