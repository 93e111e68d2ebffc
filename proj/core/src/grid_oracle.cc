#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lcbm/bounds.h"
#include "lcbm/exact_supremum.h"
#include "lcbm/modulus.h"

namespace lcbm {
namespace {

void check_resolution(const TruncatedPath& path, double resolution,
                      double delta) {
  const double ratio = path.cell_width() / resolution;
  int exponent = 0;
  if (!(resolution > 0.0) || std::frexp(ratio, &exponent) != 0.5 ||
      ratio < 8.0) {
    throw std::invalid_argument(
        "grid oracle: cell width / resolution must be a power of two >= 8");
  }
  if (resolution > delta / 8.0) {
    throw std::invalid_argument("grid oracle: resolution must be <= delta/8");
  }
}

// W on the fine grid i * resolution, i = 0..count.
std::vector<double> fine_values(const TruncatedPath& path, double resolution,
                                std::size_t count) {
  const std::size_t per_cell =
      static_cast<std::size_t>(path.cell_width() / resolution);
  const auto nodes = path.node_values();
  std::vector<double> w(count + 1);
  for (std::size_t i = 0; i <= count; ++i) {
    const std::size_t c = std::min(i / per_cell, path.cell_count() - 1);
    const std::size_t r = i - c * per_cell;
    const double frac = static_cast<double>(r) / static_cast<double>(per_cell);
    w[i] = nodes[c] + (nodes[c + 1] - nodes[c]) * frac;
  }
  return w;
}

double max_slope(const TruncatedPath& path) {
  double s = 0.0;
  for (std::size_t c = 0; c < path.cell_count(); ++c) {
    s = std::max(s, std::fabs(path.slope(c)));
  }
  return s;
}

// Sup of W / H over the fine grid points [i0, i1] and an upper bound for
// the sup over the continuum [t(i0), t(i1)], using that W is affine between
// grid points and H is positive and increasing.
OracleResult scan_ratio(const std::vector<double>& w, double resolution,
                        std::size_t i0, std::size_t i1,
                        const auto& denominator) {
  OracleResult out;
  double best = -std::numeric_limits<double>::infinity();
  double upper = best;
  for (std::size_t i = i0; i <= i1; ++i) {
    const double t = static_cast<double>(i) * resolution;
    best = std::max(best, w[i] / denominator(t));
    if (i < i1) {
      const double num = std::max(w[i], w[i + 1]);
      const double den =
          num >= 0.0 ? denominator(t)
                     : denominator(static_cast<double>(i + 1) * resolution);
      upper = std::max(upper, num / den);
    }
  }
  out.value = best;
  out.slack = std::max(0.0, upper - best);
  return out;
}

}  // namespace

GridProfile::GridProfile(const TruncatedPath& path, double resolution,
                         double max_delta)
    : resolution_(resolution), cell_width_(path.cell_width()) {
  check_resolution(path, resolution, max_delta);
  const std::size_t count =
      static_cast<std::size_t>(std::llround(path.horizon() / resolution));
  const std::vector<double> w = fine_values(path, resolution, count);
  max_slope_ = max_slope(path);
  const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
  span_ = *hi - *lo;

  const std::size_t reach = std::min(
      count, static_cast<std::size_t>(std::floor(max_delta / resolution)) + 2);
  increments_.assign(reach + 1, 0.0);
  for (std::size_t d = 1; d <= reach; ++d) {
    const std::size_t n = count + 1 - d;
    const double* a = w.data();
    const double* b = w.data() + d;
    double m0 = 0.0, m1 = 0.0, m2 = 0.0, m3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
      m0 = std::max(m0, std::fabs(b[i] - a[i]));
      m1 = std::max(m1, std::fabs(b[i + 1] - a[i + 1]));
      m2 = std::max(m2, std::fabs(b[i + 2] - a[i + 2]));
      m3 = std::max(m3, std::fabs(b[i + 3] - a[i + 3]));
    }
    for (; i < n; ++i) m0 = std::max(m0, std::fabs(b[i] - a[i]));
    increments_[d] = std::max(std::max(m0, m1), std::max(m2, m3));
  }
}

OracleResult GridProfile::global(double delta, DenominatorKind kind) const {
  kind.validate();
  if (!kind.is_global()) {
    throw std::invalid_argument("GridProfile::global needs a global kind");
  }
  if (resolution_ > delta / 8.0) {
    throw std::invalid_argument("grid oracle: resolution must be <= delta/8");
  }
  const std::size_t dmax =
      static_cast<std::size_t>(std::floor(delta / resolution_));
  if (dmax > increments_.size() - 1) {
    throw std::invalid_argument("GridProfile: delta beyond profile range");
  }
  const GapScale scale = gap_scale_for(kind, delta);
  double value = 0.0;
  for (std::size_t d = 1; d <= dmax; ++d) {
    value = std::max(value,
                     increments_[d] / scale(static_cast<double>(d) * resolution_));
  }
  const double move = 2.0 * resolution_ * max_slope_;
  double upper;
  if (scale.form == GapScale::Form::constant) {
    // Inner rounding of an optimal pair loses at most 2 res * Smax.
    upper = value + move / scale.constant;
  } else {
    if (delta > std::exp(-1.0)) {
      throw std::domain_error("grid oracle: gap kinds need delta <= 1/e");
    }
    // Gaps below 3 res: |dW| / G <= Smax * gap / G(gap), increasing in gap.
    const double small = 3.0 * resolution_;
    upper = max_slope_ * small / scale(small);
    // Outer rounding: gap' = d res in [gap, gap + 2 res], G increasing.
    const std::size_t dtop =
        std::min(dmax + 2, increments_.size() - 1);
    for (std::size_t d = 3; d <= dtop; ++d) {
      const double g = std::min(static_cast<double>(d - 2) * resolution_, delta);
      upper = std::max(upper, (increments_[d] + move) / scale(g));
    }
  }
  return {value, std::max(0.0, upper - value)};
}

OracleResult grid_oracle(const TruncatedPath& path, double delta,
                         DenominatorKind kind, double resolution) {
  kind.validate();
  if (kind.is_global()) {
    return GridProfile(path, resolution, delta).global(delta, kind);
  }
  if (!(delta > 0.0) || delta > 0.0625 || delta > path.horizon()) {
    throw std::domain_error("grid oracle: delta out of range");
  }
  check_resolution(path, resolution, delta);
  const std::size_t count =
      static_cast<std::size_t>(std::floor(delta / resolution));
  std::vector<double> w = fine_values(path, resolution, count);
  auto den = [&](double t) { return local_denominator(kind, t); };
  OracleResult r = scan_ratio(w, resolution, 1, count, den);
  double upper = r.value + r.slack;
  // Off-grid right end: the last grid interval [count res, delta].
  const double t_last = static_cast<double>(count) * resolution;
  if (t_last < delta) {
    const double wd = path.value_at(delta);
    const double v = wd / den(delta);
    r.value = std::max(r.value, v);
    const double num = std::max(w[count], wd);
    upper = std::max(upper, num / (num >= 0.0 ? den(t_last) : den(delta)));
  }
  // (0, res]: W(t) = slope0 t and t / H(t) <= t / h(t), increasing.
  const double s0 = std::fabs(path.slope(0));
  upper = std::max(upper, s0 * resolution / local_modulus(resolution));
  r.value = std::max(0.0, r.value);
  r.slack = std::max(0.0, upper - r.value);
  return r;
}

OracleResult block_grid_oracle(const TruncatedPath& path, int m,
                               double resolution) {
  const double right = std::ldexp(1.0, -m);
  if (m < 4 || right > path.horizon()) {
    throw std::domain_error("block oracle: m out of range");
  }
  check_resolution(path, resolution, right / 2.0);
  const std::size_t i1 =
      static_cast<std::size_t>(std::llround(right / resolution));
  std::vector<double> w = fine_values(path, resolution, i1);
  auto den = [](double t) { return local_modulus(t); };
  return scan_ratio(w, resolution, i1 / 2, i1, den);
}

}  // namespace lcbm
