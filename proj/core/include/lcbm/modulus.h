#ifndef LCBM_MODULUS_H_
#define LCBM_MODULUS_H_

namespace lcbm {

// Admissible open interval for a modulus argument.
struct ModulusDomainGuard {
  enum class Kind { global, local };
  Kind kind;
  double lower;
  double upper;

  static ModulusDomainGuard global();
  static ModulusDomainGuard local();
  bool accepts(double x) const { return x > lower && x < upper; }
  // Throws std::domain_error naming `what` when x is outside.
  void check(double x, const char* what) const;
};

struct CorrectionParams {
  double epsilon = 1.0;
  double delta = 0.03125;
  double horizon_T = 1.0;

  void validate() const;
};

// g(x) = sqrt(2 x ln(1/x)), 0 < x < 1.
double global_modulus(double x);

// h(t) = sqrt(2 t ln ln(1/t)), 0 < t < 1/e.
double local_modulus(double t);

// r(delta) = 1 + 2.65 / sqrt(ln(1/delta)).
double global_correction(double delta);

// r(delta, T) = r(delta/T) * sqrt(ln(T/delta) / ln(1/delta)).
double scaled_correction(double delta, double horizon_T);

// s(t, eps), split at eps = 1.
double local_correction(double t, double epsilon);

// Derivatives used by the oracle slack computation.
double global_modulus_derivative(double x);
double corrected_global_modulus(double x);  // g(x) * r(x)
double corrected_global_modulus_derivative(double x);

inline constexpr double kCorrectionConstant = 2.65;
inline constexpr double kLocalCorrectionConstant = 3.61;

}  // namespace lcbm

#endif  // LCBM_MODULUS_H_
