#ifndef LCBM_SERIALIZATION_H_
#define LCBM_SERIALIZATION_H_

#include <nlohmann/json.hpp>

#include "lcbm/bounds.h"
#include "lcbm/exact_supremum.h"
#include "lcbm/levy_ciesielski.h"
#include "lcbm/montecarlo.h"

namespace lcbm {

inline constexpr int kSchemaVersion = 1;

// {seed, trial, level_n, horizon_exponent, x0, levels[][]}
nlohmann::json path_to_json(const HaarCoefficients& c);
// Throws std::invalid_argument on a malformed record.
HaarCoefficients path_from_json(const nlohmann::json& j);

// {value, arg_t, arg_s, cell_k, cell_l, kind, epsilon?, attained}
nlohmann::json to_json(const BandSupremum& s);
// {theorem, params{...}, raw, clamped, vacuous}
nlohmann::json to_json(const BoundEvaluation& b);
nlohmann::json to_json(const SeriesAudit& a);
nlohmann::json to_json(const ExperimentConfig& c);
nlohmann::json to_json(const ExperimentReport& r);

// Flat key-value configuration. Unknown keys are an error.
ExperimentConfig config_from_json(const nlohmann::json& j);

}  // namespace lcbm

#endif  // LCBM_SERIALIZATION_H_
