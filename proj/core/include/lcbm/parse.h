#ifndef LCBM_PARSE_H_
#define LCBM_PARSE_H_

#include <string_view>

namespace lcbm {

// Parses a decimal literal or the dyadic shorthand "2^-k" / "2^k" (also
// "2^{-k}"); the dyadic form is exact. Throws std::invalid_argument.
double parse_real(std::string_view text);

}  // namespace lcbm

#endif  // LCBM_PARSE_H_
