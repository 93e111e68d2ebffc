#include "lcbm/modulus.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lcbm {

ModulusDomainGuard ModulusDomainGuard::global() {
  return {Kind::global, 0.0, 1.0};
}

ModulusDomainGuard ModulusDomainGuard::local() {
  return {Kind::local, 0.0, std::exp(-1.0)};
}

void ModulusDomainGuard::check(double x, const char* what) const {
  if (!accepts(x)) {
    throw std::domain_error(std::string(what) + ": argument " +
                            std::to_string(x) + " outside (" +
                            std::to_string(lower) + ", " +
                            std::to_string(upper) + ")");
  }
}

void CorrectionParams::validate() const {
  if (!(epsilon > 0.0)) throw std::domain_error("epsilon must be positive");
  if (!(horizon_T >= 1.0)) throw std::domain_error("horizon_T must be >= 1");
  if (!(delta > 0.0) || delta > horizon_T * 0.03125) {
    throw std::domain_error("delta must lie in (0, T*2^-5]");
  }
}

double global_modulus(double x) {
  ModulusDomainGuard::global().check(x, "global_modulus");
  return std::sqrt(2.0 * x * std::log(1.0 / x));
}

double local_modulus(double t) {
  ModulusDomainGuard::local().check(t, "local_modulus");
  return std::sqrt(2.0 * t * std::log(std::log(1.0 / t)));
}

double global_correction(double delta) {
  ModulusDomainGuard::global().check(delta, "global_correction");
  return 1.0 + kCorrectionConstant / std::sqrt(std::log(1.0 / delta));
}

double scaled_correction(double delta, double horizon_T) {
  if (!(horizon_T >= 1.0)) {
    throw std::domain_error("scaled_correction: T must be >= 1");
  }
  if (!(delta > 0.0) || delta > horizon_T * 0.03125 || !(delta < 1.0)) {
    throw std::domain_error(
        "scaled_correction: delta must satisfy 0 < delta <= T*2^-5, delta < 1");
  }
  return global_correction(delta / horizon_T) *
         std::sqrt(std::log(horizon_T / delta) / std::log(1.0 / delta));
}

double local_correction(double t, double epsilon) {
  if (!(t > 0.0) || !(t < 0.0625)) {
    throw std::domain_error("local_correction: t must lie in (0, 2^-4)");
  }
  if (!(epsilon > 0.0)) {
    throw std::domain_error("local_correction: epsilon must be positive");
  }
  const double log1 = std::log(1.0 / t);
  if (epsilon <= 1.0) {
    const double log2 = std::log(log1);
    const double scale =
        std::max(std::sqrt(log2), std::sqrt(std::pow(log1, epsilon / 2.0)));
    return 1.0 + kLocalCorrectionConstant / (std::sqrt(epsilon) * scale);
  }
  return 1.0 + kLocalCorrectionConstant / std::pow(log1, epsilon / 4.0);
}

double global_modulus_derivative(double x) {
  return (std::log(1.0 / x) - 1.0) / global_modulus(x);
}

double corrected_global_modulus(double x) {
  return global_modulus(x) * global_correction(x);
}

double corrected_global_modulus_derivative(double x) {
  // g*r = g + 2.65 sqrt(2x)
  return global_modulus_derivative(x) +
         kCorrectionConstant / std::sqrt(2.0 * x);
}

}  // namespace lcbm
