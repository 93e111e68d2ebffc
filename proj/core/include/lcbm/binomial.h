#ifndef LCBM_BINOMIAL_H_
#define LCBM_BINOMIAL_H_

#include <cstdint>

namespace lcbm {

struct ConfidenceInterval {
  double low = 0.0;
  double high = 1.0;
};

// Two-sided exact (Clopper-Pearson) interval for `successes` out of
// `trials` at confidence `level`.
ConfidenceInterval clopper_pearson(std::int64_t successes, std::int64_t trials,
                                   double level);

}  // namespace lcbm

#endif  // LCBM_BINOMIAL_H_
