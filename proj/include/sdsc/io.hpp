#ifndef SDSC_IO_HPP_
#define SDSC_IO_HPP_

#include <string>
#include <vector>

#include "sdsc/conditions.hpp"
#include "sdsc/dataset.hpp"
#include "sdsc/inference.hpp"
#include "sdsc/revealed.hpp"
#include "sdsc/synth.hpp"
#include "sdsc/validate.hpp"

namespace sdsc {

// problems.json: {name?, metadata?, states: {labels, prior}, actions,
// problems: [{id, actions, prize_matrix, prize_cash?, joint?,
// counts_per_state?}]}.  Throws std::runtime_error with a location on
// malformed input.
SdscDataset problems_from_json(const std::string& text);
std::string problems_to_json(const SdscDataset& dataset);
SdscDataset load_problems(const std::string& path);

// trials.csv with header problem_id,subject_id,state,action.
std::vector<TrialRecord> trials_from_csv(const std::string& text);
std::string trials_to_csv(const std::vector<TrialRecord>& records);
std::vector<TrialRecord> load_trials(const std::string& path);

std::string validation_report_to_json(const ValidationReport& report);
std::string condition_report_to_json(const ConditionReport& report,
                                     const SdscDataset& dataset);
std::string inference_report_to_json(const InferenceReport& report,
                                     const SdscDataset& dataset);
std::string ground_truth_to_json(const GroundTruth& truth);

// {support, weights, strategy} round trip.
std::string experiment_to_json(const RevealedStrategy& revealed);
RevealedStrategy experiment_from_json(const std::string& text);

// Writes through a temp file in the same directory, then renames.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace sdsc

#endif  // SDSC_IO_HPP_
