#ifndef LCBM_BOUNDS_H_
#define LCBM_BOUNDS_H_

#include <optional>
#include <string_view>

namespace lcbm {

enum class Theorem {
  truncated_global,
  fixed_delta,
  uniform,
  scaled_fixed,
  scaled_uniform,
  tail,
  truncated_local,
  block_local,
  local_deviation,
};

std::string_view theorem_name(Theorem t);
// Accepts snake_case or kebab-case names.
std::optional<Theorem> parse_theorem(std::string_view name);

struct BoundParams {
  std::optional<double> epsilon = std::nullopt;
  std::optional<double> delta = std::nullopt;
  std::optional<int> n = std::nullopt;
  std::optional<double> d = std::nullopt;
  std::optional<int> m = std::nullopt;
  std::optional<double> horizon_T = std::nullopt;

  friend bool operator==(const BoundParams&, const BoundParams&) = default;
};

struct BoundEvaluation {
  Theorem theorem = Theorem::truncated_global;
  BoundParams params;
  double raw = 0.0;
  double clamped = 0.0;
  bool vacuous = false;
};

// Builds an evaluation with clamped = min(raw, 1), vacuous = raw >= 1.
BoundEvaluation make_evaluation(Theorem t, BoundParams params, double raw);

// K(eps, delta, n) = 1 + 9 2^eps + 4 (2^{n+1} delta)^{1+eps}
//                      + 2 (2^{n+1} delta)^{2+eps}.
double truncated_global_constant(double epsilon, double delta, int n);
// K1(eps) = 27.95 + 0.11/eps on (0, 1).
double fixed_delta_constant(double epsilon);
// a = 1 / (8 ln 2 - 1).
double uniform_split_point();
// K2(eps).
double uniform_constant(double epsilon);

BoundEvaluation truncated_global_bound(double epsilon, double delta, int n);
BoundEvaluation fixed_delta_bound(double epsilon, double delta);
BoundEvaluation uniform_bound(double epsilon, double delta0);
BoundEvaluation scaled_fixed_bound(double epsilon, double delta,
                                   double horizon_T);
BoundEvaluation scaled_uniform_bound(double epsilon, double delta0,
                                     double horizon_T);
BoundEvaluation tail_bound(int n, double d);
BoundEvaluation truncated_local_bound(double epsilon, double delta, int n);
int m_of_epsilon(double epsilon, int m);
BoundEvaluation block_bound(double epsilon, int m);
BoundEvaluation local_deviation_bound(double epsilon, double delta);

struct SeriesAudit {
  int k = 1;
  double epsilon = 1.0;
  int terms = 0;
  double direct_sum = 0.0;       // partial sum plus remainder bound
  double remainder_bound = 0.0;  // bound on the omitted tail
  double claimed_bound = 0.0;
  bool consistent = false;       // direct_sum <= claimed_bound
};

// I_k(eps) = sum_{m>=0} 2^{-eps m} (1 + m/8)^{k+eps}, k in {1, 2}.
// `horizon_scale` > 1 sums further than needed (remainder control checks).
SeriesAudit series_audit(int k, double epsilon, double horizon_scale = 1.0);

// sum_{j >= first} 2^{-j/2} sqrt(j), with a rigorous remainder bound added.
double tail_level_series(int first);

// Bound on sup |increment of the levels above N| on the event of the tail
// estimate with d = eps from level N+1:
// sqrt(2 (1+eps) ln 2) * sum_{j>N} 2^{-j/2} sqrt(j).
double global_tail_allowance(int N, double epsilon);
// 2.65 sqrt(2 (N+1) / 2^{N+1}) sqrt(1+eps), as printed in the proof.
double printed_global_tail_allowance(int N, double epsilon);
// Bound on the levels above N at any single t, on the tail-estimate event
// with parameter d: (1/2) sum_{j>N} 2^{-j/2} sqrt(2 (d+1) j ln 2).
double local_tail_allowance(int N, double d);

}  // namespace lcbm

#endif  // LCBM_BOUNDS_H_
