#include "lcbm/montecarlo.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "lcbm/exact_supremum.h"
#include "lcbm/levy_ciesielski.h"
#include "lcbm/modulus.h"

namespace lcbm {
namespace {

struct TrialOutcome {
  bool low = false;
  bool high = false;
};

struct Counts {
  std::int64_t low = 0;
  std::int64_t high = 0;
};

using TrialFn = std::function<TrialOutcome(PathKey)>;

Counts run_trials(const ExperimentConfig& c, const TrialFn& fn) {
  const int workers = static_cast<int>(
      std::min<std::int64_t>(c.workers, c.trials));
  std::vector<Counts> partial(workers);
  auto work = [&](int w) {
    Counts local;
    for (std::int64_t i = w; i < c.trials; i += workers) {
      const TrialOutcome o = fn(PathKey{c.seed, static_cast<std::uint64_t>(i)});
      local.low += o.low;
      local.high += o.high;
    }
    partial[w] = local;
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  Counts total;
  for (const Counts& p : partial) {
    total.low += p.low;
    total.high += p.high;
  }
  return total;
}

// Per-thread path rebuilt in place; fresh allocations per trial would cost
// more in page faults than the construction itself.
const TruncatedPath& make_path(const ExperimentConfig& c, int level,
                               PathKey key, int horizon_exponent) {
  thread_local TruncatedPath path;
  if (c.zero_coefficients) {
    path.reset_zero(level, horizon_exponent);
  } else {
    path.resample(level, key, horizon_exponent);
  }
  return path;
}

// Largest p with 2^-p >= delta, capped so the prefix holds one cell.
int prefix_exponent(double delta, int level) {
  int p = static_cast<int>(std::floor(-std::log2(delta)));
  while (p > 0 && std::ldexp(1.0, -p) < delta) --p;
  return std::clamp(p, 0, level + 1);
}

BoundEvaluation scaled(BoundEvaluation b, double factor) {
  if (factor == 1.0) return b;
  return make_evaluation(b.theorem, b.params, b.raw * factor);
}

ExperimentReport finish(const ExperimentConfig& c, Counts counts,
                        BoundEvaluation bound, std::optional<BracketReport> br,
                        std::chrono::steady_clock::time_point start) {
  ExperimentReport r;
  r.config = c;
  r.trials = c.trials;
  r.exceedances = counts.low;
  r.rate = static_cast<double>(counts.low) / static_cast<double>(c.trials);
  r.ci = clopper_pearson(counts.low, c.trials, c.ci_level);
  r.bound = scaled(bound, c.bound_scale);
  ConfidenceInterval pess = r.ci;
  double budget = 0.0;
  bool full = true;
  if (br) {
    br->low_exceedances = counts.low;
    br->high_exceedances = counts.high;
    br->low_ci = r.ci;
    br->high_ci = clopper_pearson(counts.high, c.trials, c.ci_level);
    pess = br->high_ci;
    budget = br->error_budget;
    full = br->full_coverage;
  }
  r.bracket = br;
  r.verdict = decide_verdict(r.bound, r.ci, pess, budget, full);
  r.wall_time_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return r;
}

void expect_theorem(const ExperimentConfig& c, std::initializer_list<Theorem> ok,
                    const char* runner) {
  c.validate();
  if (std::find(ok.begin(), ok.end(), c.theorem) == ok.end()) {
    throw std::invalid_argument(std::string(runner) +
                                ": configuration names another theorem");
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument(m); };
  if (trials < 1) fail("trials must be >= 1");
  if (!(ci_level > 0.0) || !(ci_level < 1.0)) fail("ci_level must lie in (0,1)");
  if (workers < 1) fail("workers must be >= 1");
  if (!(bound_scale > 0.0)) fail("bound_scale must be positive");
  if (theorem != Theorem::tail && !(epsilon > 0.0)) {
    fail("epsilon must be positive");
  }
  switch (theorem) {
    case Theorem::truncated_global:
      if (level_n < 4 || level_n > 24) fail("level_n must lie in [4, 24]");
      if (!(delta > 0.0) || !(delta < 1.0)) fail("delta must lie in (0, 1)");
      break;
    case Theorem::fixed_delta:
    case Theorem::uniform:
      if (approx_level_N < 14 || approx_level_N > 24) {
        fail("approx_level_N must lie in [14, 24]");
      }
      if (!(delta > 0.0) || delta > 0.03125) fail("delta must lie in (0, 2^-5]");
      if (theorem == Theorem::uniform &&
          std::ldexp(1.0, -(approx_level_N - 3)) > delta) {
        fail("delta0 below the bracket coverage floor 2^-(N-3)");
      }
      break;
    case Theorem::scaled_fixed:
    case Theorem::scaled_uniform:
      if (approx_level_N < 14 || approx_level_N > 24) {
        fail("approx_level_N must lie in [14, 24]");
      }
      if (!(horizon_T >= 1.0)) fail("T must be >= 1");
      if (!(delta > 0.0) || delta > horizon_T * 0.03125 || !(delta < 1.0)) {
        fail("delta must lie in (0, T 2^-5] and below 1");
      }
      if (theorem == Theorem::scaled_uniform &&
          std::ldexp(1.0, -(approx_level_N - 3)) > delta / horizon_T) {
        fail("delta0 / T below the bracket coverage floor 2^-(N-3)");
      }
      break;
    case Theorem::truncated_local:
      if (level_n < 0 || level_n > 30) fail("level_n must lie in [0, 30]");
      if (!(delta > 0.0) || delta > 0.0625) fail("delta must lie in (0, 2^-4]");
      break;
    case Theorem::block_local:
      if (m < 4 || m > 40) fail("m must lie in [4, 40]");
      if (m_of_epsilon(epsilon, m) > 30) fail("m(eps) too large to sample");
      break;
    case Theorem::local_deviation:
      if (approx_level_N < 16 || approx_level_N > 30) {
        fail("approx_level_N must lie in [16, 30]");
      }
      if (!(delta > 0.0) || !(delta < 0.0625)) fail("delta must lie in (0, 2^-4)");
      break;
    case Theorem::tail:
      if (level_n < 1) fail("level_n must be >= 1");
      if (!(d > 0.0)) fail("d must be positive");
      if (horizon_J < level_n || horizon_J > 30) {
        fail("horizon_J must lie in [level_n, 30]");
      }
      break;
  }
}

ExperimentConfig ExperimentConfig::defaults_for(Theorem theorem) {
  ExperimentConfig c;
  c.theorem = theorem;
  switch (theorem) {
    case Theorem::truncated_global:
      c.epsilon = 1.0;
      c.delta = 0.015625;
      c.level_n = 4;
      c.trials = 100000;
      break;
    case Theorem::fixed_delta:
    case Theorem::uniform:
      c.epsilon = 2.0;
      c.delta = 0.03125;
      c.approx_level_N = 18;
      c.trials = 10000;
      c.seed = 2;
      break;
    case Theorem::scaled_fixed:
    case Theorem::scaled_uniform:
      c.epsilon = 2.0;
      c.delta = 0.0625;
      c.horizon_T = 2.0;
      c.approx_level_N = 18;
      c.trials = 10000;
      c.seed = 2;
      break;
    case Theorem::truncated_local:
      c.epsilon = 1.0;
      c.delta = 0x1.0p-10;
      c.level_n = 4;
      c.trials = 100000;
      break;
    case Theorem::block_local:
      c.epsilon = 1.0;
      c.m = 4;
      c.trials = 100000;
      break;
    case Theorem::local_deviation:
      c.epsilon = 1.0;
      c.delta = 0x1.0p-10;
      c.approx_level_N = 18;
      c.trials = 10000;
      break;
    case Theorem::tail:
      c.level_n = 4;
      c.d = 1.0;
      c.horizon_J = 14;
      c.trials = 100000;
      break;
  }
  return c;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::consistent:
      return "consistent";
    case Verdict::inconclusive:
      return "inconclusive";
    case Verdict::violated:
      return "violated";
    case Verdict::vacuous:
      return "vacuous";
  }
  return "unknown";
}

Verdict decide_verdict(const BoundEvaluation& bound,
                       const ConfidenceInterval& optimistic,
                       const ConfidenceInterval& pessimistic,
                       double error_budget, bool full_coverage) {
  if (bound.vacuous) return Verdict::vacuous;
  const double b = bound.clamped;
  if (optimistic.low > b + error_budget) return Verdict::violated;
  if (full_coverage && pessimistic.high + error_budget <= b) {
    return Verdict::consistent;
  }
  if (pessimistic.low <= b && optimistic.high <= b) return Verdict::consistent;
  return Verdict::inconclusive;
}

ExperimentReport run_truncated_global(const ExperimentConfig& c) {
  expect_theorem(c, {Theorem::truncated_global}, "run_truncated_global");
  const auto start = std::chrono::steady_clock::now();
  const BoundEvaluation bound =
      truncated_global_bound(c.epsilon, c.delta, c.level_n);
  const double threshold = std::sqrt(1.0 + c.epsilon);
  const Counts counts = run_trials(c, [&](PathKey key) {
    const TruncatedPath& path = make_path(c, c.level_n, key, 0);
    const bool hit =
        global_band_sup(path, c.delta, DenominatorKind::gap_global()).value >
        threshold;
    return TrialOutcome{hit, hit};
  });
  ExperimentReport r = finish(c, counts, bound, std::nullopt, start);
  r.path_level = c.level_n;
  r.threshold = threshold;
  return r;
}

namespace {

// Fixed-delta and uniform statistics on [0, 1] at band width `delta`, with
// the tail-estimate bracket.
ExperimentReport run_global_bracketed(const ExperimentConfig& c, bool uniform,
                                      double delta, BoundEvaluation bound) {
  const auto start = std::chrono::steady_clock::now();
  const int N = c.approx_level_N;
  const double threshold = std::sqrt(1.0 + c.epsilon);
  BracketReport br;
  br.allowance = global_tail_allowance(N, c.epsilon);
  br.printed_allowance = printed_global_tail_allowance(N, c.epsilon);
  br.error_budget = tail_bound(N + 1, c.epsilon).raw;
  br.allowance_formula =
      "sqrt(2(1+eps) ln2) * sum_{j>N} 2^{-j/2} sqrt(j); holds unless "
      "max_{j>N,k} |X_jk| > sqrt(2(1+eps) j ln2), probability <= "
      "tail_bound(N+1, eps)";
  const double floor_gap = uniform ? std::ldexp(1.0, -(N - 3)) : 0.0;
  br.coverage_floor = floor_gap;
  br.full_coverage = !uniform;
  const double fixed_den = global_modulus(delta) * global_correction(delta);

  const Counts counts = run_trials(c, [&](PathKey key) {
    const TruncatedPath& path = make_path(c, N, key, 0);
    if (!uniform) {
      const double low =
          global_band_sup(path, delta, DenominatorKind::fixed_global()).value;
      const double high = low + br.allowance / fixed_den;
      return TrialOutcome{low > threshold, high > threshold};
    }
    const double low = uniform_band_sup(path, delta).value;
    if (low > threshold) return TrialOutcome{true, true};
    const BandOptions opts{floor_gap, br.allowance};
    const double high = std::max(
        low, global_band_sup(path, delta,
                             DenominatorKind::gap_global_corrected(), opts)
                 .value);
    return TrialOutcome{false, high > threshold};
  });
  ExperimentReport r = finish(c, counts, bound, br, start);
  r.path_level = N;
  r.threshold = threshold;
  return r;
}

}  // namespace

ExperimentReport run_fixed_delta(const ExperimentConfig& c) {
  expect_theorem(c, {Theorem::fixed_delta, Theorem::scaled_fixed},
                 "run_fixed_delta");
  if (c.theorem == Theorem::scaled_fixed) {
    // Per-path scaling identity: the [0, T] statistic at delta equals the
    // unit statistic at delta / T.
    return run_global_bracketed(
        c, false, c.delta / c.horizon_T,
        scaled_fixed_bound(c.epsilon, c.delta, c.horizon_T));
  }
  return run_global_bracketed(c, false, c.delta,
                              fixed_delta_bound(c.epsilon, c.delta));
}

ExperimentReport run_uniform(const ExperimentConfig& c) {
  expect_theorem(c, {Theorem::uniform, Theorem::scaled_uniform}, "run_uniform");
  if (c.theorem == Theorem::scaled_uniform) {
    return run_global_bracketed(
        c, true, c.delta / c.horizon_T,
        scaled_uniform_bound(c.epsilon, c.delta, c.horizon_T));
  }
  return run_global_bracketed(c, true, c.delta,
                              uniform_bound(c.epsilon, c.delta));
}

ExperimentReport run_truncated_local(const ExperimentConfig& c) {
  expect_theorem(c, {Theorem::truncated_local}, "run_truncated_local");
  const auto start = std::chrono::steady_clock::now();
  const BoundEvaluation bound =
      truncated_local_bound(c.epsilon, c.delta, c.level_n);
  const double threshold = std::sqrt(1.0 + c.epsilon);
  const int p = prefix_exponent(c.delta, c.level_n);
  const Counts counts = run_trials(c, [&](PathKey key) {
    const TruncatedPath& path = make_path(c, c.level_n, key, p);
    const bool hit =
        local_sup(path, c.delta, DenominatorKind::local_plain()).value >=
        threshold;
    return TrialOutcome{hit, hit};
  });
  ExperimentReport r = finish(c, counts, bound, std::nullopt, start);
  r.path_level = c.level_n;
  r.horizon_exponent = p;
  r.threshold = threshold;
  return r;
}

ExperimentReport run_block_local(const ExperimentConfig& c) {
  expect_theorem(c, {Theorem::block_local}, "run_block_local");
  const auto start = std::chrono::steady_clock::now();
  const BoundEvaluation bound = block_bound(c.epsilon, c.m);
  const int level = m_of_epsilon(c.epsilon, c.m);
  const double threshold = std::sqrt(1.0 + c.epsilon);
  const Counts counts = run_trials(c, [&](PathKey key) {
    const TruncatedPath& path = make_path(c, level, key, c.m);
    const bool hit = block_sup(path, c.m, c.epsilon).value >= threshold;
    return TrialOutcome{hit, hit};
  });
  ExperimentReport r = finish(c, counts, bound, std::nullopt, start);
  r.path_level = level;
  r.horizon_exponent = c.m;
  r.threshold = threshold;
  return r;
}

ExperimentReport run_local_deviation(const ExperimentConfig& c) {
  expect_theorem(c, {Theorem::local_deviation}, "run_local_deviation");
  const auto start = std::chrono::steady_clock::now();
  const BoundEvaluation bound = local_deviation_bound(c.epsilon, c.delta);
  const int N = c.approx_level_N;
  const double threshold = std::sqrt(1.0 + c.epsilon);
  const double d = 1.0 + 2.0 / c.epsilon;
  const int p = prefix_exponent(c.delta, N);
  const DenominatorKind kind = DenominatorKind::local_corrected(c.epsilon);

  BracketReport br;
  br.allowance = local_tail_allowance(N, d);
  br.error_budget = tail_bound(N + 1, d).raw;
  br.allowance_formula =
      "(1/2) sum_{j>N} 2^{-j/2} sqrt(2(d+1) j ln2), d = 1 + 2/eps; holds "
      "unless max_{j>N,k} |X_jk| > sqrt(2(d+1) j ln2), probability <= "
      "tail_bound(N+1, d)";
  const double t_min = std::ldexp(1.0, -(N - 4));
  br.coverage_floor = t_min;
  br.full_coverage = false;

  const Counts counts = run_trials(c, [&](PathKey key) {
    const TruncatedPath& path = make_path(c, N, key, p);
    const double low = local_sup(path, c.delta, kind).value;
    if (low > threshold) return TrialOutcome{true, true};
    // Each cell of [t_min, delta]: W is affine, H increasing.
    const auto nodes = path.node_values();
    double high = low;
    const std::size_t first =
        static_cast<std::size_t>(std::llround(t_min / path.cell_width()));
    for (std::size_t cell = first; cell < path.cell_count(); ++cell) {
      const double a = path.node_time(cell);
      if (!(a < c.delta)) break;
      const double b = std::min(path.node_time(cell + 1), c.delta);
      const double wb = b < path.node_time(cell + 1) ? path.value_at(b)
                                                     : nodes[cell + 1];
      const double num = std::max(nodes[cell], wb) + br.allowance;
      high = std::max(high, num / local_denominator(kind, num >= 0.0 ? a : b));
    }
    return TrialOutcome{false, high > threshold};
  });
  ExperimentReport r = finish(c, counts, bound, br, start);
  r.path_level = N;
  r.horizon_exponent = p;
  r.threshold = threshold;
  return r;
}

ExperimentReport run_tail(const ExperimentConfig& c) {
  expect_theorem(c, {Theorem::tail}, "run_tail");
  const auto start = std::chrono::steady_clock::now();
  const BoundEvaluation bound = tail_bound(c.level_n, c.d);
  std::vector<double> limits;
  for (int j = c.level_n; j <= c.horizon_J; ++j) {
    limits.push_back(std::sqrt(2.0 * (c.d + 1.0) * j * std::numbers::ln2));
  }
  const Counts counts = run_trials(c, [&](PathKey key) {
    if (c.zero_coefficients) return TrialOutcome{};
    thread_local std::vector<double> buffer;
    for (int j = c.level_n; j <= c.horizon_J; ++j) {
      buffer.resize(std::size_t{1} << j);
      haar_variates(key, static_cast<std::uint32_t>(j), 0, buffer);
      const double lim = limits[j - c.level_n];
      for (double x : buffer) {
        if (std::fabs(x) > lim) return TrialOutcome{true, true};
      }
    }
    return TrialOutcome{};
  });
  ExperimentReport r = finish(c, counts, bound, std::nullopt, start);
  r.path_level = c.horizon_J;
  r.threshold = std::sqrt(2.0 * (c.d + 1.0));
  return r;
}

ExperimentReport run_experiment(const ExperimentConfig& c) {
  switch (c.theorem) {
    case Theorem::truncated_global:
      return run_truncated_global(c);
    case Theorem::fixed_delta:
    case Theorem::scaled_fixed:
      return run_fixed_delta(c);
    case Theorem::uniform:
    case Theorem::scaled_uniform:
      return run_uniform(c);
    case Theorem::truncated_local:
      return run_truncated_local(c);
    case Theorem::block_local:
      return run_block_local(c);
    case Theorem::local_deviation:
      return run_local_deviation(c);
    case Theorem::tail:
      return run_tail(c);
  }
  throw std::invalid_argument("unknown theorem");
}

ScalingComparison scaling_compare(std::uint64_t seed, int n, double delta,
                                  double horizon_T, double epsilon) {
  if (!(horizon_T >= 1.0) || !(delta > 0.0) || delta > horizon_T * 0.03125 ||
      !(delta < 1.0)) {
    throw std::domain_error("scaling check: need T >= 1, 0 < delta <= T 2^-5");
  }
  const TruncatedPath path(sample_coefficients(n, seed));
  const double norm = std::sqrt(1.0 + epsilon);
  ScalingComparison out;
  out.unit_statistic =
      global_band_sup(path, delta / horizon_T, DenominatorKind::fixed_global())
          .value /
      norm;
  // B on [0, T]: nodes sqrt(T) W at times T k h.
  std::vector<double> nodes(path.node_values().begin(),
                            path.node_values().end());
  const double root = std::sqrt(horizon_T);
  for (double& v : nodes) v *= root;
  const GapScale scale{GapScale::Form::constant,
                       global_modulus(delta) *
                           scaled_correction(delta, horizon_T)};
  out.scaled_statistic =
      node_band_sup(nodes, horizon_T * path.cell_width(), delta, scale).value /
      norm;
  out.equal = std::fabs(out.unit_statistic - out.scaled_statistic) <=
              1e-12 * std::max(1.0, std::fabs(out.unit_statistic));
  return out;
}

bool scaling_check(std::uint64_t seed, int n, double delta, double horizon_T) {
  return scaling_compare(seed, n, delta, horizon_T).equal;
}

}  // namespace lcbm
