#include "lcbm/rng.h"

#include <cmath>
#include <stdexcept>

namespace lcbm {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline PhiloxCounter philox_round(const PhiloxCounter& c, const PhiloxKey& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, c[0], hi0, lo0);
  mulhilo(kMul1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

// Philox4x32-10 on B counters held in structure-of-arrays form.
template <int B>
inline void philox_batch(std::uint32_t* c0, std::uint32_t* c1,
                         std::uint32_t* c2, std::uint32_t* c3, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    for (int b = 0; b < B; ++b) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c0[b];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c2[b];
      const std::uint32_t n0 =
          static_cast<std::uint32_t>(p1 >> 32) ^ c1[b] ^ key[0];
      const std::uint32_t n2 =
          static_cast<std::uint32_t>(p0 >> 32) ^ c3[b] ^ key[1];
      c0[b] = n0;
      c1[b] = static_cast<std::uint32_t>(p1);
      c2[b] = n2;
      c3[b] = static_cast<std::uint32_t>(p0);
    }
  }
}

inline PhiloxKey seed_key(std::uint64_t seed) {
  return {static_cast<std::uint32_t>(seed),
          static_cast<std::uint32_t>(seed >> 32)};
}

inline PhiloxCounter variate_counter(PathKey key, std::uint32_t j,
                                     std::uint64_t pair) {
  return {static_cast<std::uint32_t>(pair), j,
          static_cast<std::uint32_t>(key.trial),
          static_cast<std::uint32_t>(key.trial >> 32)};
}

inline std::uint64_t half_word(const PhiloxCounter& out, unsigned half) {
  return (static_cast<std::uint64_t>(out[2 * half]) << 32) | out[2 * half + 1];
}

inline double poly(const double* c, int n, double x) {
  double v = c[n - 1];
  for (int i = n - 2; i >= 0; --i) v = v * x + c[i];
  return v;
}

constexpr double kA[8] = {
    3.3871328727963666080e0,  1.3314166789178437745e+2,
    1.9715909503065514427e+3, 1.3731693765509461125e+4,
    4.5921953931549871457e+4, 6.7265770927008700853e+4,
    3.3430575583588128105e+4, 2.5090809287301226727e+3};
constexpr double kB[8] = {
    1.0,                      4.2313330701600911252e+1,
    6.8718700749205790830e+2, 5.3941960214247511077e+3,
    2.1213794301586595867e+4, 3.9307895800092710610e+4,
    2.8729085735721942674e+4, 5.2264952788528545610e+3};
constexpr double kC[8] = {
    1.42343711074968357734e0,  4.63033784615654529590e0,
    5.76949722146069140550e0,  3.64784832476320460504e0,
    1.27045825245236838258e0,  2.41780725177450611770e-1,
    2.27238449892691845833e-2, 7.74545014278341407640e-4};
constexpr double kD[8] = {
    1.0,                       2.05319162663775882187e0,
    1.67638483018380384940e0,  6.89767334985100004550e-1,
    1.48103976427480074590e-1, 1.51986665636164571966e-2,
    5.47593808499534494600e-4, 1.05075007164441684324e-9};
constexpr double kE[8] = {
    6.65790464350110377720e0,  5.46378491116411436990e0,
    1.78482653991729133580e0,  2.96560571828504891230e-1,
    2.65321895265761230930e-2, 1.24266094738807843860e-3,
    2.71155556874348757815e-5, 2.01033439929228813265e-7};
constexpr double kF[8] = {
    1.0,                       5.99832206555887937690e-1,
    1.36929880922735805310e-1, 1.48753612908506148525e-2,
    7.86869131145613259100e-4, 1.84631831751005468180e-5,
    1.42151175831644588870e-7, 2.04426310338993978564e-15};

inline double quantile_unchecked(double p) {
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * poly(kA, 8, r) / poly(kB, 8, r);
  }
  double r = std::sqrt(-std::log(q < 0.0 ? p : 1.0 - p));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = poly(kC, 8, r) / poly(kD, 8, r);
  } else {
    r -= 5.0;
    value = poly(kE, 8, r) / poly(kF, 8, r);
  }
  return q < 0.0 ? -value : value;
}

}  // namespace

PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    counter = philox_round(counter, key);
  }
  return counter;
}

double uniform_open(std::uint64_t word) {
  return (static_cast<double>(word >> 12) + 0.5) * 0x1.0p-52;
}

double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::domain_error("normal_quantile: p must lie in (0, 1)");
  }
  return quantile_unchecked(p);
}

double haar_variate(PathKey key, std::uint32_t j, std::uint64_t k) {
  const PhiloxCounter out =
      philox4x32(variate_counter(key, j, k >> 1), seed_key(key.seed));
  return quantile_unchecked(
      uniform_open(half_word(out, static_cast<unsigned>(k & 1))));
}

double linear_variate(PathKey key) { return haar_variate(key, kLinearLevel, 0); }

void haar_variates(PathKey key, std::uint32_t j, std::uint64_t k_begin,
                   std::span<double> out) {
  const PhiloxKey seed = seed_key(key.seed);
  std::size_t i = 0;
  std::uint64_t k = k_begin;
  if ((k & 1) && i < out.size()) {
    out[i++] = haar_variate(key, j, k++);
  }
  // Counters in batches the compiler can vectorize.
  constexpr int kBatch = 8;
  while (i + 2 * kBatch <= out.size()) {
    std::uint32_t c0[kBatch], c1[kBatch], c2[kBatch], c3[kBatch];
    for (int b = 0; b < kBatch; ++b) {
      const PhiloxCounter c = variate_counter(key, j, (k >> 1) + b);
      c0[b] = c[0];
      c1[b] = c[1];
      c2[b] = c[2];
      c3[b] = c[3];
    }
    philox_batch<kBatch>(c0, c1, c2, c3, seed);
    for (int b = 0; b < kBatch; ++b) {
      const PhiloxCounter r = {c0[b], c1[b], c2[b], c3[b]};
      out[i + 2 * b] = quantile_unchecked(uniform_open(half_word(r, 0)));
      out[i + 2 * b + 1] = quantile_unchecked(uniform_open(half_word(r, 1)));
    }
    i += 2 * kBatch;
    k += 2 * kBatch;
  }
  for (; i < out.size(); ++i, ++k) out[i] = haar_variate(key, j, k);
}

}  // namespace lcbm
