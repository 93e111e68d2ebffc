#include "lcbm/bounds.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lcbm {
namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* message) {
  if (!ok) throw std::domain_error(message);
}

double log_inv(double x) { return std::log(1.0 / x); }

constexpr Theorem kAllTheorems[] = {
    Theorem::truncated_global, Theorem::fixed_delta,     Theorem::uniform,
    Theorem::scaled_fixed,     Theorem::scaled_uniform,  Theorem::tail,
    Theorem::truncated_local,  Theorem::block_local,     Theorem::local_deviation,
};

}  // namespace

std::string_view theorem_name(Theorem t) {
  switch (t) {
    case Theorem::truncated_global:
      return "truncated_global";
    case Theorem::fixed_delta:
      return "fixed_delta";
    case Theorem::uniform:
      return "uniform";
    case Theorem::scaled_fixed:
      return "scaled_fixed";
    case Theorem::scaled_uniform:
      return "scaled_uniform";
    case Theorem::tail:
      return "tail";
    case Theorem::truncated_local:
      return "truncated_local";
    case Theorem::block_local:
      return "block_local";
    case Theorem::local_deviation:
      return "local_deviation";
  }
  return "unknown";
}

std::optional<Theorem> parse_theorem(std::string_view name) {
  std::string s(name);
  std::replace(s.begin(), s.end(), '-', '_');
  for (Theorem t : kAllTheorems) {
    if (s == theorem_name(t)) return t;
  }
  return std::nullopt;
}

BoundEvaluation make_evaluation(Theorem t, BoundParams params, double raw) {
  BoundEvaluation e;
  e.theorem = t;
  e.params = params;
  e.raw = raw;
  e.clamped = std::min(raw, 1.0);
  e.vacuous = raw >= 1.0;
  return e;
}

double truncated_global_constant(double epsilon, double delta, int n) {
  const double x = std::ldexp(delta, n + 1);
  return 1.0 + 9.0 * std::pow(2.0, epsilon) +
         4.0 * std::pow(x, 1.0 + epsilon) + 2.0 * std::pow(x, 2.0 + epsilon);
}

double fixed_delta_constant(double epsilon) {
  require(epsilon > 0.0, "epsilon must be positive");
  return 27.95 + (epsilon < 1.0 ? 0.11 / epsilon : 0.0);
}

double uniform_split_point() { return 1.0 / (8.0 * kLn2 - 1.0); }

double uniform_constant(double epsilon) {
  require(epsilon > 0.0, "epsilon must be positive");
  const double a2 = 2.0 * uniform_split_point();
  const double head = epsilon <= a2 ? 9.57 / (epsilon * epsilon * epsilon)
                                    : 14.59 / epsilon + 9.9;
  return head + 24.05;
}

BoundEvaluation truncated_global_bound(double epsilon, double delta, int n) {
  require(epsilon > 0.0, "epsilon must be positive");
  require(n >= 4, "n must be >= 4");
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  const double root = std::sqrt(kPi * log_inv(delta));
  double raw;
  if (delta < std::ldexp(1.0, -n - 1)) {
    raw = 3.0 * std::pow(delta, epsilon) / root;
  } else {
    raw = std::pow(2.0, -epsilon * (n + 1)) *
          truncated_global_constant(epsilon, delta, n) / root;
  }
  return make_evaluation(Theorem::truncated_global,
                         {.epsilon = epsilon, .delta = delta, .n = n}, raw);
}

BoundEvaluation fixed_delta_bound(double epsilon, double delta) {
  require(epsilon > 0.0, "epsilon must be positive");
  require(delta > 0.0 && delta <= 0.03125, "delta must lie in (0, 2^-5]");
  const double raw = fixed_delta_constant(epsilon) * std::pow(delta, epsilon) *
                     std::pow(log_inv(delta), 1.5);
  return make_evaluation(Theorem::fixed_delta,
                         {.epsilon = epsilon, .delta = delta}, raw);
}

BoundEvaluation uniform_bound(double epsilon, double delta0) {
  require(epsilon > 0.0, "epsilon must be positive");
  require(delta0 > 0.0 && delta0 <= 0.03125, "delta0 must lie in (0, 2^-5]");
  const double raw = uniform_constant(epsilon) * std::pow(delta0, epsilon) *
                     std::pow(log_inv(delta0), 1.5);
  return make_evaluation(Theorem::uniform,
                         {.epsilon = epsilon, .delta = delta0}, raw);
}

namespace {

void check_scaled(double epsilon, double delta, double horizon_T) {
  require(epsilon > 0.0, "epsilon must be positive");
  require(horizon_T >= 1.0, "T must be >= 1");
  require(delta > 0.0 && delta <= horizon_T * 0.03125,
          "delta must lie in (0, T 2^-5]");
}

}  // namespace

BoundEvaluation scaled_fixed_bound(double epsilon, double delta,
                                   double horizon_T) {
  check_scaled(epsilon, delta, horizon_T);
  const double raw = fixed_delta_constant(epsilon) *
                     std::pow(delta / horizon_T, epsilon) *
                     std::pow(std::log(horizon_T / delta), 1.5);
  return make_evaluation(
      Theorem::scaled_fixed,
      {.epsilon = epsilon, .delta = delta, .horizon_T = horizon_T}, raw);
}

BoundEvaluation scaled_uniform_bound(double epsilon, double delta0,
                                     double horizon_T) {
  check_scaled(epsilon, delta0, horizon_T);
  const double raw = uniform_constant(epsilon) *
                     std::pow(delta0 / horizon_T, epsilon) *
                     std::pow(std::log(horizon_T / delta0), 1.5);
  return make_evaluation(
      Theorem::scaled_uniform,
      {.epsilon = epsilon, .delta = delta0, .horizon_T = horizon_T}, raw);
}

BoundEvaluation tail_bound(int n, double d) {
  require(n >= 1, "n must be >= 1");
  require(d > 0.0, "d must be positive");
  const double raw = std::pow(2.0, -d * n) /
                     ((1.0 - std::pow(2.0, -d)) * std::sqrt(kPi * n * kLn2));
  return make_evaluation(Theorem::tail, {.n = n, .d = d}, raw);
}

BoundEvaluation truncated_local_bound(double epsilon, double delta, int n) {
  require(epsilon > 0.0, "epsilon must be positive");
  require(n >= 0, "n must be >= 0");
  require(delta > 0.0 && delta <= 0.0625, "delta must lie in (0, 2^-4]");
  const double l1 = log_inv(delta);
  const double l2 = std::log(l1);
  const double core = std::pow(l1, -1.0 - epsilon) / std::sqrt(kPi * l2);
  double raw;
  if (delta < std::ldexp(1.0, -n - 1)) {
    raw = core / 2.0;
  } else {
    raw = (std::floor(std::ldexp(delta, n + 1)) + 1.0) * core;
  }
  return make_evaluation(Theorem::truncated_local,
                         {.epsilon = epsilon, .delta = delta, .n = n}, raw);
}

int m_of_epsilon(double epsilon, int m) {
  require(epsilon > 0.0, "epsilon must be positive");
  require(m >= 1, "m must be >= 1");
  const double f = epsilon <= 1.0 ? 1.0 - 1.0 / kLn2 : 0.0;
  const double inner =
      epsilon / (2.0 * kLn2) * std::log((m + 1) * kLn2) + f;
  // inner > -1 always, so the integer part is >= 0.
  return static_cast<int>(std::trunc(inner)) + m + 1;
}

BoundEvaluation block_bound(double epsilon, int m) {
  require(epsilon > 0.0, "epsilon must be positive");
  require(m >= 4, "m must be >= 4");
  const int me = m_of_epsilon(epsilon, m);
  const double raw = std::ldexp(1.0, me - m - 1) *
                     std::pow((m + 2) * kLn2, -(1.0 + epsilon)) /
                     std::sqrt(kPi * (1.0 + epsilon) *
                               std::log((m + 1) * kLn2));
  return make_evaluation(Theorem::block_local, {.epsilon = epsilon, .m = m},
                         raw);
}

BoundEvaluation local_deviation_bound(double epsilon, double delta) {
  require(epsilon > 0.0, "epsilon must be positive");
  require(delta > 0.0 && delta < 0.0625, "delta must lie in (0, 2^-4)");
  const double num = epsilon <= 1.0 ? 1.302 / epsilon : 1.18;
  const double l1 = log_inv(delta);
  const double raw =
      num / (std::pow(l1, epsilon / 2.0) * std::sqrt(std::log(l1)));
  return make_evaluation(Theorem::local_deviation,
                         {.epsilon = epsilon, .delta = delta}, raw);
}

SeriesAudit series_audit(int k, double epsilon, double horizon_scale) {
  if (k != 1 && k != 2) throw std::domain_error("k must be 1 or 2");
  require(epsilon > 0.0, "epsilon must be positive");
  require(horizon_scale >= 1.0, "horizon scale must be >= 1");
  const double power = k + epsilon;
  auto term = [&](double m) {
    return std::exp2(-epsilon * m) * std::pow(1.0 + m / 8.0, power);
  };
  // Ratio of consecutive terms, decreasing in m.
  auto ratio = [&](double m) {
    return std::exp2(-epsilon) * std::pow(1.0 + 1.0 / (8.0 + m), power);
  };
  double sum = 0.0;
  double carry = 0.0;
  double remainder = 0.0;
  long m = 0;
  long stop = -1;
  for (;; ++m) {
    const double t = term(static_cast<double>(m));
    // Neumaier summation.
    const double s = sum + t;
    carry += std::fabs(sum) >= std::fabs(t) ? (sum - s) + t : (t - s) + sum;
    sum = s;
    const double r = ratio(static_cast<double>(m));
    if (r < 1.0) {
      const double next = term(static_cast<double>(m + 1));
      remainder = next / (1.0 - r);
      if (stop < 0 && remainder < 1e-13) {
        stop = static_cast<long>(std::ceil((m + 1) * horizon_scale)) - 1;
      }
      if (stop >= 0 && m >= stop) break;
    }
  }
  SeriesAudit a;
  a.k = k;
  a.epsilon = epsilon;
  a.terms = static_cast<int>(m + 1);
  a.remainder_bound = remainder;
  a.direct_sum = sum + carry + remainder;
  const double a2 = 2.0 * uniform_split_point();
  if (epsilon <= a2) {
    a.claimed_bound = k == 1 ? 1.15 / std::pow(epsilon, epsilon + 2.0)
                           : 0.70 / std::pow(epsilon, epsilon + 3.0);
  } else {
    a.claimed_bound = 1.0 / (epsilon * kLn2) + 1.0;
  }
  a.consistent = a.direct_sum <= a.claimed_bound;
  return a;
}

double tail_level_series(int first) {
  require(first >= 1, "first level must be >= 1");
  double sum = 0.0;
  for (int j = first;; ++j) {
    const double t = std::exp2(-0.5 * j) * std::sqrt(static_cast<double>(j));
    sum += t;
    // Term ratio 2^{-1/2} sqrt((j+1)/j) decreases in j.
    const double r = std::sqrt(0.5 * (j + 1.0) / j);
    const double next = t * r;
    const double rest = next / (1.0 - r);
    if (r < 1.0 && rest < 1e-17 * sum) return sum + rest;
  }
}

double global_tail_allowance(int N, double epsilon) {
  require(N >= 0, "N must be >= 0");
  require(epsilon > 0.0, "epsilon must be positive");
  return std::sqrt(2.0 * (1.0 + epsilon) * kLn2) * tail_level_series(N + 1);
}

double printed_global_tail_allowance(int N, double epsilon) {
  return 2.65 * std::sqrt(2.0 * (N + 1) * std::ldexp(1.0, -(N + 1))) *
         std::sqrt(1.0 + epsilon);
}

double local_tail_allowance(int N, double d) {
  require(N >= 0, "N must be >= 0");
  require(d > 0.0, "d must be positive");
  return 0.5 * std::sqrt(2.0 * (d + 1.0) * kLn2) * tail_level_series(N + 1);
}

}  // namespace lcbm
