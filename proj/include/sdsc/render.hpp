#ifndef SDSC_RENDER_HPP_
#define SDSC_RENDER_HPP_

#include <string>

#include "sdsc/conditions.hpp"
#include "sdsc/inference.hpp"
#include "sdsc/validate.hpp"

namespace sdsc {

// "<0.01" below one percent, two decimals otherwise.
std::string format_p_value(double p);

// Fixed-width tables; values rounded to two decimals.  The JSON emitters
// in io.hpp keep full precision.
std::string render_validation(const ValidationReport& report);
std::string render_conditions(const ConditionReport& report,
                              const SdscDataset& dataset);
std::string render_inference(const InferenceReport& report,
                             const SdscDataset& dataset);

}  // namespace sdsc

#endif  // SDSC_RENDER_HPP_
