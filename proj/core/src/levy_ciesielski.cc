#include "lcbm/levy_ciesielski.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lcbm {
namespace {

std::size_t stored_count(int j, int p) {
  return j <= p ? std::size_t{1} : std::size_t{1} << (j - p);
}

void check_level(int level_n) {
  if (level_n < 0 || level_n > 40) {
    throw std::domain_error("truncation level must lie in [0, 40]");
  }
}

}  // namespace

double level_scale(int j) { return std::pow(2.0, -0.5 * j); }

double schauder(int j, std::uint64_t k, double t) {
  if (j < 0 || j > 62 || k >= (std::uint64_t{1} << j)) {
    throw std::out_of_range("schauder: index out of range");
  }
  if (!(t >= 0.0) || !(t <= 1.0)) {
    throw std::domain_error("schauder: t must lie in [0, 1]");
  }
  const double x = std::ldexp(t, j) - static_cast<double>(k);
  if (x < 0.0 || x >= 1.0) return 0.0;
  return std::min(x, 1.0 - x);
}

HaarCoefficients::HaarCoefficients(int level_n, int horizon_exponent) {
  reset(level_n, horizon_exponent);
}

void HaarCoefficients::reset(int level_n, int horizon_exponent) {
  check_level(level_n);
  if (horizon_exponent < 0 || horizon_exponent > level_n + 1) {
    throw std::domain_error("horizon exponent must lie in [0, level_n + 1]");
  }
  level_n_ = level_n;
  horizon_exponent_ = horizon_exponent;
  x0_ = 0.0;
  key_.reset();
  offsets_.resize(level_n + 2);
  offsets_[0] = 0;
  for (int j = 0; j <= level_n; ++j) {
    offsets_[j + 1] = offsets_[j] + stored_count(j, horizon_exponent);
  }
  values_.assign(offsets_.back(), 0.0);
}

std::size_t HaarCoefficients::level_size(int j) const {
  if (j < 0 || j > level_n_) throw std::out_of_range("level out of range");
  return offsets_[j + 1] - offsets_[j];
}

std::span<double> HaarCoefficients::level(int j) {
  const std::size_t n = level_size(j);
  return {values_.data() + offsets_[j], n};
}

std::span<const double> HaarCoefficients::level(int j) const {
  const std::size_t n = level_size(j);
  return {values_.data() + offsets_[j], n};
}

double HaarCoefficients::coefficient(int j, std::uint64_t k) const {
  const auto lv = level(j);
  if (k >= lv.size()) throw std::out_of_range("coefficient not stored");
  return lv[k];
}

HaarCoefficients HaarCoefficients::extended(int new_level) const {
  if (new_level < level_n_) {
    throw std::domain_error("extended: new level below current level");
  }
  HaarCoefficients out(new_level, horizon_exponent_);
  out.x0_ = x0_;
  out.key_ = key_;
  std::copy(values_.begin(), values_.end(), out.values_.begin());
  if (key_) {
    for (int j = level_n_ + 1; j <= new_level; ++j) {
      haar_variates(*key_, static_cast<std::uint32_t>(j), 0, out.level(j));
    }
  }
  return out;
}

HaarCoefficients sample_coefficients(int level_n, std::uint64_t seed) {
  return sample_coefficients(level_n, PathKey{seed, 0}, 0);
}

HaarCoefficients sample_coefficients(int level_n, PathKey key,
                                     int horizon_exponent) {
  HaarCoefficients c;
  sample_coefficients_into(c, level_n, key, horizon_exponent);
  return c;
}

void sample_coefficients_into(HaarCoefficients& out, int level_n, PathKey key,
                              int horizon_exponent) {
  out.reset(level_n, horizon_exponent);
  out.set_key(key);
  out.set_x0(linear_variate(key));
  for (int j = 0; j <= level_n; ++j) {
    haar_variates(key, static_cast<std::uint32_t>(j), 0, out.level(j));
  }
}

TruncatedPath::TruncatedPath(HaarCoefficients coeffs)
    : coeffs_(std::move(coeffs)) {
  build();
}

void TruncatedPath::resample(int level_n, PathKey key, int horizon_exponent) {
  sample_coefficients_into(coeffs_, level_n, key, horizon_exponent);
  build();
}

void TruncatedPath::reset_zero(int level_n, int horizon_exponent) {
  coeffs_.reset(level_n, horizon_exponent);
  build();
}

void TruncatedPath::build() {
  const int n = coeffs_.level_n();
  if (n < 0) throw std::invalid_argument("TruncatedPath: empty coefficients");
  const int p = coeffs_.horizon_exponent();
  horizon_ = std::ldexp(1.0, -p);
  cell_width_ = std::ldexp(1.0, -(n + 1));
  inv_cell_width_ = std::ldexp(1.0, n + 1);
  const std::size_t cells = std::size_t{1} << (n + 1 - p);
  nodes_.resize(cells + 1);
  nodes_[0] = 0.0;

  // Levels below p are linear on [0, 2^-p]: Lambda_{j,0}(2^-p) = 2^{j-p}.
  double right = horizon_ * coeffs_.x0();
  for (int j = 0; j < p; ++j) {
    right += level_scale(j) * std::ldexp(1.0, j - p) * coeffs_.level(j)[0];
  }
  nodes_[cells] = right;

  // Midpoint refinement, level by level for the coarse levels, then block
  // by block so the fine levels stay in cache. Each midpoint is computed by
  // the same expression either way.
  auto refine = [&](int j, std::size_t k_begin, std::size_t k_end) {
    const auto x = coeffs_.level(j);
    const std::size_t stride = std::size_t{1} << (n + 1 - j);
    const std::size_t half = stride / 2;
    const double amp = 0.5 * level_scale(j);
    for (std::size_t k = k_begin; k < k_end; ++k) {
      const std::size_t a = k * stride;
      nodes_[a + half] = 0.5 * (nodes_[a] + nodes_[a + stride]) + amp * x[k];
    }
  };
  constexpr int kBlockLevels = 12;
  const int split = std::max(p, n + 1 - kBlockLevels);
  for (int j = p; j < split; ++j) refine(j, 0, coeffs_.level_size(j));
  const std::size_t blocks = std::size_t{1} << (split - p);
  for (std::size_t b = 0; b < blocks; ++b) {
    for (int j = split; j <= n; ++j) {
      const std::size_t per = std::size_t{1} << (j - split);
      refine(j, b * per, (b + 1) * per);
    }
  }
}

std::size_t TruncatedPath::cell_of(double t) const {
  const double c = std::floor(t * inv_cell_width_);
  if (c <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(c), cell_count() - 1);
}

double TruncatedPath::value_at(double t) const {
  const std::size_t c = cell_of(t);
  return nodes_[c] + slope(c) * (t - node_time(c));
}

double evaluate_truncated(const TruncatedPath& path, double t) {
  if (!(t >= 0.0) || !(t <= path.horizon())) {
    throw std::domain_error("evaluate_truncated: t outside the path domain");
  }
  const HaarCoefficients& c = path.coefficients();
  double sum = t * c.x0();
  for (int j = 0; j <= c.level_n(); ++j) {
    const double x = std::ldexp(t, j);
    const double kf = std::floor(x);
    if (kf >= static_cast<double>(c.level_size(j))) continue;
    const double u = x - kf;
    sum += level_scale(j) * std::min(u, 1.0 - u) *
           c.level(j)[static_cast<std::size_t>(kf)];
  }
  return sum;
}

AffineForm cell_affine(const TruncatedPath& path, std::size_t cell_k) {
  if (cell_k >= path.cell_count()) {
    throw std::out_of_range("cell_affine: cell index out of range");
  }
  const double slope = path.slope(cell_k);
  return {slope, path.node_values()[cell_k] - slope * path.node_time(cell_k)};
}

}  // namespace lcbm
