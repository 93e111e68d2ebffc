#ifndef LCBM_RNG_H_
#define LCBM_RNG_H_

#include <array>
#include <cstdint>
#include <span>

namespace lcbm {

// Identifies one path realization. Single paths use trial = 0; Monte Carlo
// trial i of master seed s uses {s, i}.
struct PathKey {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;

  friend bool operator==(const PathKey&, const PathKey&) = default;
};

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds (Salmon et al. counter-based generator).
PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

// Maps the top 52 bits of `word` to (k + 1/2) 2^-52, exactly, inside (0, 1).
double uniform_open(std::uint64_t word);

// Inverse standard normal CDF (Wichura's AS241, PPND16). p in (0, 1).
double normal_quantile(double p);

// Level index reserved for the coefficient X0 of the linear term.
inline constexpr std::uint32_t kLinearLevel = 0xFFFFFFFFu;

// Standard normal X_{j,k} for path `key`. Counter layout:
// {k >> 1, j, trial_lo, trial_hi}; the 64-bit half (k & 1) is used.
double haar_variate(PathKey key, std::uint32_t j, std::uint64_t k);

// Standard normal X0 for path `key`.
double linear_variate(PathKey key);

// Fills out[i] = haar_variate(key, j, k_begin + i).
void haar_variates(PathKey key, std::uint32_t j, std::uint64_t k_begin,
                   std::span<double> out);

}  // namespace lcbm

#endif  // LCBM_RNG_H_
