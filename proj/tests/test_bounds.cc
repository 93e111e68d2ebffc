#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "lcbm/bounds.h"
#include "oracle_values.h"

namespace lcbm {
namespace {

namespace o = oracle;

void expect_rel(double got, double want, double rel = 1e-13) {
  EXPECT_NEAR(got, want, rel * std::fabs(want)) << "want " << want;
}

const double k2m4 = std::ldexp(1.0, -4);
const double k2m5 = std::ldexp(1.0, -5);
const double k2m6 = std::ldexp(1.0, -6);
const double k2m10 = std::ldexp(1.0, -10);

void expect_consistent(const BoundEvaluation& e) {
  EXPECT_GE(e.raw, 0.0);
  EXPECT_EQ(e.clamped, std::min(e.raw, 1.0));
  EXPECT_EQ(e.vacuous, e.raw >= 1.0);
}

TEST(TheoremNames, RoundTrip) {
  for (Theorem t : {Theorem::truncated_global, Theorem::fixed_delta,
                    Theorem::uniform, Theorem::scaled_fixed,
                    Theorem::scaled_uniform, Theorem::tail,
                    Theorem::truncated_local, Theorem::block_local,
                    Theorem::local_deviation}) {
    EXPECT_EQ(parse_theorem(theorem_name(t)), t);
  }
  EXPECT_FALSE(parse_theorem("nonsense").has_value());
}

TEST(TruncatedGlobal, BothBranches) {
  const auto lo = truncated_global_bound(1.0, k2m6, 4);
  expect_rel(lo.raw, o::tg_1_2m6_4);
  EXPECT_FALSE(lo.vacuous);
  EXPECT_DOUBLE_EQ(truncated_global_constant(1.0, k2m5, 4), o::K_1_2m5_4);
  const auto hi = truncated_global_bound(1.0, k2m5, 4);
  expect_rel(hi.raw, o::tg_1_2m5_4);
  expect_consistent(hi);
  EXPECT_EQ(hi.params.n, 4);
}

TEST(TruncatedGlobal, DomainErrors) {
  EXPECT_THROW(truncated_global_bound(0.0, k2m5, 4), std::domain_error);
  EXPECT_THROW(truncated_global_bound(1.0, k2m5, 3), std::domain_error);
  EXPECT_THROW(truncated_global_bound(1.0, 0.0, 4), std::domain_error);
  EXPECT_THROW(truncated_global_bound(1.0, 1.0, 4), std::domain_error);
}

TEST(FixedDelta, Values) {
  EXPECT_DOUBLE_EQ(fixed_delta_constant(0.5), o::K1_half);
  // Open indicator at 1.
  EXPECT_DOUBLE_EQ(fixed_delta_constant(1.0), 27.95);
  expect_rel(fixed_delta_bound(2.0, k2m5).raw, o::fd_2_2m5);
  EXPECT_THROW(fixed_delta_bound(1.0, 0.05), std::domain_error);
  EXPECT_THROW(fixed_delta_bound(-1.0, k2m5), std::domain_error);
}

TEST(Uniform, Constants) {
  expect_rel(uniform_split_point(), o::split_a, 1e-15);
  EXPECT_DOUBLE_EQ(uniform_constant(1.0), o::K2_1);
  EXPECT_DOUBLE_EQ(uniform_constant(0.4), o::K2_04);
  expect_rel(uniform_constant(0.3), o::K2_03);
  // Closed at 2a.
  const double a2 = 2 * uniform_split_point();
  EXPECT_DOUBLE_EQ(uniform_constant(a2), 9.57 / (a2 * a2 * a2) + 24.05);
}

TEST(Uniform, Values) {
  const auto one = uniform_bound(1.0, k2m5);
  expect_rel(one.raw, o::un_1_2m5);
  EXPECT_TRUE(one.vacuous);
  EXPECT_EQ(one.clamped, 1.0);
  const auto two = uniform_bound(2.0, k2m5);
  expect_rel(two.raw, o::un_2_2m5);
  EXPECT_FALSE(two.vacuous);
  expect_rel(uniform_bound(0.3, k2m5).raw, o::un_03_2m5);
  EXPECT_THROW(uniform_bound(1.0, 0.04), std::domain_error);
  EXPECT_THROW(uniform_bound(0.0, k2m5), std::domain_error);
}

TEST(Scaled, ReduceByDeltaOverT) {
  EXPECT_DOUBLE_EQ(scaled_fixed_bound(2.0, k2m5, 1.0).raw,
                   fixed_delta_bound(2.0, k2m5).raw);
  EXPECT_DOUBLE_EQ(scaled_uniform_bound(1.5, k2m5, 1.0).raw,
                   uniform_bound(1.5, k2m5).raw);
  expect_rel(scaled_fixed_bound(2.0, k2m4, 2.0).raw, o::fd_2_2m5, 1e-14);
  expect_rel(scaled_uniform_bound(1.0, k2m4, 2.0).raw, o::un_1_2m5, 1e-14);
  EXPECT_THROW(scaled_fixed_bound(2.0, k2m5, 0.5), std::domain_error);
  EXPECT_THROW(scaled_fixed_bound(2.0, 0.07, 2.0), std::domain_error);
  EXPECT_THROW(scaled_uniform_bound(2.0, 0.0, 2.0), std::domain_error);
}

TEST(Tail, Values) {
  expect_rel(tail_bound(4, 1.0).raw, o::tail_4_1);
  expect_rel(tail_bound(8, 1.0).raw, o::tail_8_1);
  expect_rel(tail_bound(4, 2.0).raw, o::tail_4_2);
  EXPECT_THROW(tail_bound(0, 1.0), std::domain_error);
  EXPECT_THROW(tail_bound(4, 0.0), std::domain_error);
}

TEST(TruncatedLocal, Values) {
  expect_rel(truncated_local_bound(1.0, k2m10, 4).raw, o::tl_1_2m10_4);
  expect_rel(truncated_local_bound(2.0, k2m10, 4).raw, o::tl_2_2m10_4);
  expect_rel(truncated_local_bound(1.0, k2m4, 4).raw, o::tl_1_2m4_4);
  EXPECT_THROW(truncated_local_bound(1.0, 0.1, 4), std::domain_error);
  EXPECT_THROW(truncated_local_bound(0.0, k2m10, 4), std::domain_error);
}

TEST(BlockLevel, Values) {
  EXPECT_EQ(m_of_epsilon(2.0, 4), 6);
  EXPECT_EQ(m_of_epsilon(1.0, 4), 5);
  EXPECT_EQ(m_of_epsilon(0.5, 8), 9);
  EXPECT_EQ(m_of_epsilon(2.0, 5), 8);
  EXPECT_EQ(m_of_epsilon(1.0, 5), 6);
  for (int m = 1; m < 30; ++m) {
    for (double eps : {0.1, 0.5, 1.0, 1.0001, 3.0}) {
      EXPECT_GE(m_of_epsilon(eps, m), m + 1);
    }
  }
  EXPECT_THROW(m_of_epsilon(0.0, 4), std::domain_error);
  EXPECT_THROW(m_of_epsilon(1.0, 0), std::domain_error);
}

TEST(BlockBound, Values) {
  expect_rel(block_bound(1.0, 4).raw, o::bb_1_4);
  expect_rel(block_bound(2.0, 4).raw, o::bb_2_4);
  EXPECT_THROW(block_bound(1.0, 3), std::domain_error);
  EXPECT_THROW(block_bound(0.0, 4), std::domain_error);
}

TEST(BlockBound, DecreasingWhileBlockLevelOffsetFixed) {
  // Each factor decreases in m while m(eps) - m is constant; the offset
  // steps up at m = 10 for eps = 1, where the bound jumps.
  const std::vector<double> want = {
      0.02068874671, 0.01419443351, 0.01032365503, 0.007832573733,
      0.006136901749, 0.004931885689, 0.008091533001, 0.006751481682,
      0.005714472029};
  for (int m = 4; m <= 12; ++m) {
    expect_rel(block_bound(1.0, m).raw, want[m - 4], 1e-9);
    if (m > 4 && m_of_epsilon(1.0, m) - m == m_of_epsilon(1.0, m - 1) - (m - 1)) {
      EXPECT_LT(block_bound(1.0, m).raw, block_bound(1.0, m - 1).raw) << m;
    }
  }
}

TEST(LocalDeviation, Values) {
  expect_rel(local_deviation_bound(1.0, k2m10).raw, o::J_1_2m10);
  expect_rel(local_deviation_bound(2.0, k2m10).raw, o::J_2_2m10);
  const auto v = local_deviation_bound(0.1, k2m5);
  expect_rel(v.raw, o::Jraw_01_2m5);
  EXPECT_EQ(v.clamped, 1.0);
  EXPECT_TRUE(v.vacuous);
  EXPECT_THROW(local_deviation_bound(1.0, k2m4), std::domain_error);
  EXPECT_THROW(local_deviation_bound(0.0, k2m10), std::domain_error);
}

TEST(Bounds, NonincreasingInEpsilonWithinBranches) {
  std::vector<double> eps;
  for (int i = 1; i <= 300; ++i) eps.push_back(0.02 * i);
  const double a2 = 2 * uniform_split_point();
  for (std::size_t i = 1; i < eps.size(); ++i) {
    const double e0 = eps[i - 1], e1 = eps[i];
    EXPECT_LE(truncated_global_bound(e1, k2m6, 4).raw,
              truncated_global_bound(e0, k2m6, 4).raw);
    EXPECT_LE(truncated_global_bound(e1, k2m5, 4).raw,
              truncated_global_bound(e0, k2m5, 4).raw);
    if ((e0 < 1.0) == (e1 < 1.0)) {
      EXPECT_LE(fixed_delta_bound(e1, k2m5).raw, fixed_delta_bound(e0, k2m5).raw);
    }
    if ((e0 <= a2) == (e1 <= a2)) {
      EXPECT_LE(uniform_bound(e1, k2m5).raw, uniform_bound(e0, k2m5).raw);
    }
    EXPECT_LE(tail_bound(4, e1).raw, tail_bound(4, e0).raw);
    EXPECT_LE(truncated_local_bound(e1, k2m10, 4).raw,
              truncated_local_bound(e0, k2m10, 4).raw);
    if ((e0 <= 1.0) == (e1 <= 1.0)) {
      EXPECT_LE(local_deviation_bound(e1, k2m10).raw,
                local_deviation_bound(e0, k2m10).raw);
    }
    if (m_of_epsilon(e0, 6) == m_of_epsilon(e1, 6)) {
      EXPECT_LE(block_bound(e1, 6).raw, block_bound(e0, 6).raw);
    }
  }
}

TEST(Bounds, ClampAndVacuousConsistent) {
  for (double e : {0.05, 0.3, 1.0, 2.0, 5.0}) {
    expect_consistent(truncated_global_bound(e, k2m5, 4));
    expect_consistent(fixed_delta_bound(e, k2m5));
    expect_consistent(uniform_bound(e, k2m5));
    expect_consistent(scaled_fixed_bound(e, k2m4, 3.0));
    expect_consistent(scaled_uniform_bound(e, k2m4, 3.0));
    expect_consistent(tail_bound(2, e));
    expect_consistent(truncated_local_bound(e, k2m6, 5));
    expect_consistent(block_bound(e, 5));
    expect_consistent(local_deviation_bound(e, k2m6));
  }
  const auto z = make_evaluation(Theorem::tail, {}, 1.0);
  EXPECT_TRUE(z.vacuous);
  EXPECT_EQ(z.clamped, 1.0);
}

TEST(SeriesAudit, DirectSums) {
  const auto a1 = series_audit(1, 1.0);
  expect_rel(a1.direct_sum, o::I1_1, 1e-12);
  expect_rel(a1.claimed_bound, o::claimed_I, 1e-15);
  EXPECT_FALSE(a1.consistent);
  const auto a2 = series_audit(2, 1.0);
  expect_rel(a2.direct_sum, o::I2_1, 1e-12);
  EXPECT_GT(a2.direct_sum, a2.claimed_bound);
  expect_rel(series_audit(1, 0.2).direct_sum, o::I1_02, 1e-12);
  expect_rel(series_audit(2, 0.2).direct_sum, o::I2_02, 1e-12);
  expect_rel(series_audit(1, 30.0).direct_sum, o::I1_30, 1e-12);
  EXPECT_NEAR(series_audit(2, 60.0).direct_sum, 1.0, 1e-12);
  EXPECT_GE(a1.remainder_bound, 0.0);
  EXPECT_LT(a1.remainder_bound, 1e-12);
}

TEST(SeriesAudit, RemainderControl) {
  for (int k : {1, 2}) {
    for (double e : {0.1, 0.2, 0.44, 1.0, 3.0}) {
      const auto a = series_audit(k, e);
      const auto b = series_audit(k, e, 2.0);
      EXPECT_GT(b.terms, a.terms);
      EXPECT_LT(std::fabs(a.direct_sum - b.direct_sum), 1e-12 * a.direct_sum)
          << k << " " << e;
    }
  }
}

TEST(SeriesAudit, Errors) {
  EXPECT_THROW(series_audit(3, 1.0), std::domain_error);
  EXPECT_THROW(series_audit(1, 0.0), std::domain_error);
  EXPECT_THROW(series_audit(1, 1.0, 0.5), std::domain_error);
}

TEST(TailAllowances, Series) {
  // sum_{j>=1} 2^{-j/2} sqrt(j) by brute force.
  double brute = 0.0;
  for (int j = 400; j >= 1; --j) brute += std::exp2(-0.5 * j) * std::sqrt(j);
  expect_rel(tail_level_series(1), brute, 1e-14);
  double rest = 0.0;
  for (int j = 400; j >= 19; --j) rest += std::exp2(-0.5 * j) * std::sqrt(j);
  expect_rel(tail_level_series(19), rest, 1e-14);
  EXPECT_LT(global_tail_allowance(20, 1.0), global_tail_allowance(18, 1.0));
  EXPECT_LT(local_tail_allowance(20, 3.0), local_tail_allowance(18, 3.0));
  expect_rel(global_tail_allowance(18, 1.0),
             std::sqrt(4 * std::log(2.0)) * tail_level_series(19));
  expect_rel(local_tail_allowance(18, 3.0),
             0.5 * std::sqrt(8 * std::log(2.0)) * tail_level_series(19));
  EXPECT_GT(printed_global_tail_allowance(18, 1.0), 0.0);
  EXPECT_THROW(global_tail_allowance(-1, 1.0), std::domain_error);
  EXPECT_THROW(local_tail_allowance(4, 0.0), std::domain_error);
}

}  // namespace
}  // namespace lcbm
