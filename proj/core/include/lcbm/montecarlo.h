#ifndef LCBM_MONTECARLO_H_
#define LCBM_MONTECARLO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "lcbm/binomial.h"
#include "lcbm/bounds.h"

namespace lcbm {

struct ExperimentConfig {
  Theorem theorem = Theorem::truncated_global;
  double epsilon = 1.0;
  double delta = 0.015625;  // delta, or delta0 for the uniform theorems
  int level_n = 4;          // truncation level of a truncated statistic
  int approx_level_N = 18;  // level standing in for the full process
  int m = 4;                // block index (block_local)
  double d = 1.0;           // tail parameter (tail)
  int horizon_J = 14;       // last level examined (tail)
  double horizon_T = 1.0;   // interval length (scaled theorems)
  std::int64_t trials = 1000;
  std::uint64_t seed = 1;
  double ci_level = 0.99;
  int workers = 1;

  // Test hooks: sample all-zero coefficients; multiply the bound.
  bool zero_coefficients = false;
  double bound_scale = 1.0;

  // Throws std::invalid_argument on a bad configuration.
  void validate() const;
  // The configuration used as the default for `theorem`.
  static ExperimentConfig defaults_for(Theorem theorem);
};

enum class Verdict { consistent, inconclusive, violated, vacuous };
std::string_view verdict_name(Verdict v);

// Two-sided bracket for statistics of the full process approximated at
// level N.
struct BracketReport {
  std::int64_t low_exceedances = 0;
  std::int64_t high_exceedances = 0;
  ConfidenceInterval low_ci;
  ConfidenceInterval high_ci;
  // Probability that the allowance fails (tail estimate).
  double error_budget = 0.0;
  // Added to the numerator of the pessimistic statistic.
  double allowance = 0.0;
  // The proof's printed form of the allowance, for reference.
  double printed_allowance = 0.0;
  // Smallest gap (or time) covered by the pessimistic statistic.
  double coverage_floor = 0.0;
  bool full_coverage = true;
  std::string allowance_formula;
};

struct ExperimentReport {
  ExperimentConfig config;
  int path_level = 0;
  int horizon_exponent = 0;
  double threshold = 0.0;
  std::int64_t trials = 0;
  std::int64_t exceedances = 0;
  double rate = 0.0;
  ConfidenceInterval ci;
  BoundEvaluation bound;
  std::optional<BracketReport> bracket;
  Verdict verdict = Verdict::inconclusive;
  double wall_time_seconds = 0.0;
};

// Verdict rule. `optimistic` is the interval that favours the bound,
// `pessimistic` the one that disfavours it.
Verdict decide_verdict(const BoundEvaluation& bound,
                       const ConfidenceInterval& optimistic,
                       const ConfidenceInterval& pessimistic,
                       double error_budget, bool full_coverage);

ExperimentReport run_truncated_global(const ExperimentConfig& config);
ExperimentReport run_fixed_delta(const ExperimentConfig& config);
ExperimentReport run_uniform(const ExperimentConfig& config);
ExperimentReport run_truncated_local(const ExperimentConfig& config);
ExperimentReport run_block_local(const ExperimentConfig& config);
ExperimentReport run_local_deviation(const ExperimentConfig& config);
ExperimentReport run_tail(const ExperimentConfig& config);
// Dispatches on config.theorem.
ExperimentReport run_experiment(const ExperimentConfig& config);

// The statistic on [0, T] for B_s = sqrt(T) W_{s/T}, band delta, and the
// unit-interval statistic at delta/T, both normalized by sqrt(1 + eps).
struct ScalingComparison {
  double unit_statistic = 0.0;
  double scaled_statistic = 0.0;
  bool equal = false;
};
ScalingComparison scaling_compare(std::uint64_t seed, int n, double delta,
                                  double horizon_T, double epsilon = 1.0);
bool scaling_check(std::uint64_t seed, int n, double delta, double horizon_T);

}  // namespace lcbm

#endif  // LCBM_MONTECARLO_H_
