#include <cmath>
#include <random>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>
#include <gtest/gtest.h>

#include "lcbm/binomial.h"
#include "lcbm/montecarlo.h"
#include "oracle_values.h"

namespace lcbm {
namespace {

BoundEvaluation bound_of(double raw) {
  return make_evaluation(Theorem::tail, {}, raw);
}

TEST(ClopperPearson, KnownValues) {
  const auto zero = clopper_pearson(0, 100, 0.95);
  EXPECT_EQ(zero.low, 0.0);
  EXPECT_NEAR(zero.high, 1.0 - std::pow(0.025, 0.01), 1e-14);
  const auto all = clopper_pearson(100, 100, 0.95);
  EXPECT_EQ(all.high, 1.0);
  EXPECT_NEAR(all.low, std::pow(0.025, 0.01), 1e-14);
  const auto mid = clopper_pearson(5, 10, 0.95);
  EXPECT_NEAR(mid.low, 0.18708602, 1e-8);
  EXPECT_NEAR(mid.high, 0.81291398, 1e-8);
  EXPECT_THROW(clopper_pearson(1, 0, 0.95), std::invalid_argument);
  EXPECT_THROW(clopper_pearson(5, 4, 0.95), std::invalid_argument);
  EXPECT_THROW(clopper_pearson(1, 4, 1.0), std::invalid_argument);
}

TEST(ClopperPearson, ContainsRate) {
  for (std::int64_t n : {1, 7, 100, 100000}) {
    for (std::int64_t k = 0; k <= n; k += std::max<std::int64_t>(1, n / 13)) {
      const auto ci = clopper_pearson(k, n, 0.99);
      const double rate = static_cast<double>(k) / n;
      EXPECT_LE(ci.low, rate);
      EXPECT_GE(ci.high, rate);
      EXPECT_GE(ci.low, 0.0);
      EXPECT_LE(ci.high, 1.0);
    }
  }
}

TEST(ClopperPearson, ExactCoverageAtLeastLevel) {
  for (int n : {10, 50, 200}) {
    for (double p : {0.001, 0.02, 0.1, 0.37, 0.5, 0.9}) {
      const boost::math::binomial_distribution<double> b(n, p);
      double cover = 0.0;
      for (int k = 0; k <= n; ++k) {
        const auto ci = clopper_pearson(k, n, 0.95);
        if (ci.low <= p && p <= ci.high) cover += boost::math::pdf(b, k);
      }
      EXPECT_GE(cover, 0.95 - 1e-12) << "n " << n << " p " << p;
    }
  }
}

TEST(ClopperPearson, StubbedBernoulliCoverage) {
  std::mt19937_64 gen(2024);
  for (double p : {0.01, 0.2}) {
    std::bernoulli_distribution coin(p);
    int covered = 0;
    const int reps = 1000;
    for (int r = 0; r < reps; ++r) {
      std::int64_t k = 0;
      for (int i = 0; i < 500; ++i) k += coin(gen);
      const auto ci = clopper_pearson(k, 500, 0.99);
      covered += ci.low <= p && p <= ci.high;
    }
    // Coverage is at least 0.99; allow three binomial standard errors.
    EXPECT_GE(covered, 0.99 * reps - 3 * std::sqrt(reps * 0.99 * 0.01)) << p;
  }
}

TEST(Verdict, Rules) {
  const ConfidenceInterval low{0.001, 0.004}, high{0.03, 0.05};
  EXPECT_EQ(decide_verdict(bound_of(1.5), high, high, 0.0, true),
            Verdict::vacuous);
  EXPECT_EQ(decide_verdict(bound_of(0.02), high, high, 0.0, true),
            Verdict::violated);
  // The budget can excuse an apparent violation.
  EXPECT_EQ(decide_verdict(bound_of(0.02), high, high, 0.02, true),
            Verdict::inconclusive);
  EXPECT_EQ(decide_verdict(bound_of(0.02), low, low, 0.0, true),
            Verdict::consistent);
  EXPECT_EQ(decide_verdict(bound_of(0.02), low, low, 0.017, true),
            Verdict::consistent);
  // Straddling interval.
  EXPECT_EQ(decide_verdict(bound_of(0.02), ConfidenceInterval{0.01, 0.03},
                           ConfidenceInterval{0.01, 0.03}, 0.0, true),
            Verdict::inconclusive);
  // Pessimistic low below the bound and optimistic high below the bound.
  EXPECT_EQ(decide_verdict(bound_of(0.02), low, ConfidenceInterval{0.01, 0.03},
                           0.0, true),
            Verdict::consistent);
  // Incomplete coverage forbids the pessimistic high shortcut.
  EXPECT_EQ(decide_verdict(bound_of(0.02), ConfidenceInterval{0.001, 0.03},
                           low, 0.0, false),
            Verdict::inconclusive);
  // Violation uses only the optimistic interval.
  EXPECT_NE(decide_verdict(bound_of(0.02), low, high, 0.0, true),
            Verdict::violated);
  EXPECT_EQ(verdict_name(Verdict::consistent), "consistent");
  EXPECT_EQ(verdict_name(Verdict::violated), "violated");
}

TEST(Config, Validation) {
  ExperimentConfig c = ExperimentConfig::defaults_for(Theorem::truncated_global);
  EXPECT_NO_THROW(c.validate());
  c.trials = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_THROW(run_truncated_global(c), std::invalid_argument);
  c = ExperimentConfig::defaults_for(Theorem::truncated_global);
  c.level_n = 3;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = ExperimentConfig::defaults_for(Theorem::fixed_delta);
  c.approx_level_N = 12;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = ExperimentConfig::defaults_for(Theorem::fixed_delta);
  c.delta = 0.05;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = ExperimentConfig::defaults_for(Theorem::tail);
  c.horizon_J = c.level_n - 1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = ExperimentConfig::defaults_for(Theorem::tail);
  c.ci_level = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = ExperimentConfig::defaults_for(Theorem::uniform);
  EXPECT_THROW(run_fixed_delta(c), std::invalid_argument);
}

void expect_same(const ExperimentReport& a, const ExperimentReport& b) {
  EXPECT_EQ(a.exceedances, b.exceedances);
  EXPECT_EQ(a.ci.low, b.ci.low);
  EXPECT_EQ(a.ci.high, b.ci.high);
  EXPECT_EQ(a.verdict, b.verdict);
  ASSERT_EQ(a.bracket.has_value(), b.bracket.has_value());
  if (a.bracket) {
    EXPECT_EQ(a.bracket->low_exceedances, b.bracket->low_exceedances);
    EXPECT_EQ(a.bracket->high_exceedances, b.bracket->high_exceedances);
  }
}

TEST(Runs, IndependentOfWorkerCount) {
  for (Theorem t : {Theorem::truncated_global, Theorem::truncated_local,
                    Theorem::block_local, Theorem::tail, Theorem::fixed_delta}) {
    ExperimentConfig c = ExperimentConfig::defaults_for(t);
    c.trials = t == Theorem::fixed_delta ? 12 : 400;
    c.approx_level_N = 14;
    c.seed = 77;
    c.workers = 1;
    const auto one = run_experiment(c);
    c.workers = 3;
    const auto three = run_experiment(c);
    expect_same(one, three);
    c.workers = 1;
    expect_same(one, run_experiment(c));
  }
}

TEST(Runs, ReportInvariants) {
  ExperimentConfig c = ExperimentConfig::defaults_for(Theorem::truncated_local);
  c.epsilon = 1.0;
  c.delta = 0.0625;
  c.level_n = 4;
  c.trials = 2000;
  const auto r = run_truncated_local(c);
  EXPECT_EQ(r.trials, 2000);
  EXPECT_DOUBLE_EQ(r.rate, r.exceedances / 2000.0);
  EXPECT_LE(r.ci.low, r.rate);
  EXPECT_GE(r.ci.high, r.rate);
  EXPECT_NEAR(r.bound.raw, oracle::tl_1_2m4_4, 1e-15);
  EXPECT_DOUBLE_EQ(r.threshold, std::sqrt(2.0));
  EXPECT_FALSE(r.bracket.has_value());
}

TEST(Runs, ZeroCoefficientsNeverExceed) {
  for (Theorem t : {Theorem::truncated_global, Theorem::fixed_delta,
                    Theorem::uniform, Theorem::truncated_local,
                    Theorem::block_local, Theorem::local_deviation,
                    Theorem::scaled_fixed}) {
    ExperimentConfig c = ExperimentConfig::defaults_for(t);
    c.trials = 3;
    c.approx_level_N = t == Theorem::local_deviation ? 16 : 14;
    c.zero_coefficients = true;
    const auto r = run_experiment(c);
    EXPECT_EQ(r.exceedances, 0) << theorem_name(t);
    EXPECT_EQ(r.ci.low, 0.0);
    if (r.bracket) {
      EXPECT_EQ(r.bracket->low_exceedances, 0) << theorem_name(t);
      EXPECT_EQ(r.bracket->high_exceedances, 0) << theorem_name(t);
    }
  }
}

TEST(Runs, BlockLevelRouting) {
  ExperimentConfig c = ExperimentConfig::defaults_for(Theorem::block_local);
  c.epsilon = 2.0;
  c.m = 4;
  c.trials = 10;
  EXPECT_EQ(run_block_local(c).path_level, 6);
  c.epsilon = 1.0;
  EXPECT_EQ(run_block_local(c).path_level, 5);
}

TEST(Runs, VacuousBounds) {
  ExperimentConfig c = ExperimentConfig::defaults_for(Theorem::uniform);
  c.epsilon = 0.3;
  c.delta = 0.03125;
  c.approx_level_N = 14;
  c.trials = 2;
  const auto u = run_uniform(c);
  EXPECT_TRUE(u.bound.vacuous);
  EXPECT_EQ(u.verdict, Verdict::vacuous);
  c = ExperimentConfig::defaults_for(Theorem::local_deviation);
  c.epsilon = 0.1;
  c.delta = 0.03125;
  c.approx_level_N = 16;
  c.trials = 2;
  EXPECT_EQ(run_local_deviation(c).verdict, Verdict::vacuous);
}

TEST(Runs, BracketOrderedAndShrinking) {
  ExperimentConfig c = ExperimentConfig::defaults_for(Theorem::fixed_delta);
  c.epsilon = 2.0;
  c.delta = 0.03125;
  c.trials = 20;
  c.seed = 2;
  c.approx_level_N = 18;
  const auto a = run_fixed_delta(c);
  c.approx_level_N = 20;
  const auto b = run_fixed_delta(c);
  ASSERT_TRUE(a.bracket && b.bracket);
  EXPECT_LE(a.bracket->low_exceedances, a.bracket->high_exceedances);
  EXPECT_LE(b.bracket->low_exceedances, b.bracket->high_exceedances);
  EXPECT_LT(b.bracket->allowance, a.bracket->allowance);
  EXPECT_LT(b.bracket->error_budget, a.bracket->error_budget);
  EXPECT_FALSE(a.bracket->allowance_formula.empty());
}

TEST(Runs, TailEventWithLargeD) {
  ExperimentConfig c = ExperimentConfig::defaults_for(Theorem::tail);
  c.level_n = 4;
  c.d = 8.0;
  c.horizon_J = 10;
  c.trials = 2000;
  const auto r = run_tail(c);
  EXPECT_EQ(r.exceedances, 0);
  EXPECT_EQ(r.verdict, Verdict::inconclusive);
}

TEST(Runs, BoundScaleHook) {
  ExperimentConfig c = ExperimentConfig::defaults_for(Theorem::truncated_local);
  c.delta = 0.0625;
  c.level_n = 4;
  c.trials = 1000;
  c.bound_scale = 1e-6;
  const auto r = run_truncated_local(c);
  EXPECT_GT(r.exceedances, 0);
  EXPECT_EQ(r.verdict, Verdict::violated);
}

TEST(Scaling, Identity) {
  EXPECT_TRUE(scaling_check(5, 6, 0.0625, 2.0));
  EXPECT_TRUE(scaling_check(5, 6, 0.125, 4.0));
  EXPECT_TRUE(scaling_check(5, 6, 0.03125, 1.0));
  const auto one = scaling_compare(5, 6, 0.03125, 1.0);
  EXPECT_EQ(one.unit_statistic, one.scaled_statistic);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = scaling_compare(seed, 6, 0.125, 4.0);
    EXPECT_NEAR(s.scaled_statistic, s.unit_statistic, 1e-12);
    EXPECT_TRUE(s.equal);
  }
  EXPECT_THROW(scaling_check(5, 6, 0.0625, 0.5), std::domain_error);
}

}  // namespace
}  // namespace lcbm
