#include "lcbm/binomial.h"

#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

namespace lcbm {

ConfidenceInterval clopper_pearson(std::int64_t successes, std::int64_t trials,
                                   double level) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (successes < 0 || successes > trials) {
    throw std::invalid_argument("successes must lie in [0, trials]");
  }
  if (!(level > 0.0) || !(level < 1.0)) {
    throw std::invalid_argument("confidence level must lie in (0, 1)");
  }
  const double alpha = 1.0 - level;
  const double k = static_cast<double>(successes);
  const double n = static_cast<double>(trials);
  ConfidenceInterval ci;
  ci.low = successes == 0
               ? 0.0
               : boost::math::ibeta_inv(k, n - k + 1.0, alpha / 2.0);
  ci.high = successes == trials
                ? 1.0
                : boost::math::ibeta_inv(k + 1.0, n - k, 1.0 - alpha / 2.0);
  return ci;
}

}  // namespace lcbm
