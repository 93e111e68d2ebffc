#ifndef LCBM_LEVY_CIESIELSKI_H_
#define LCBM_LEVY_CIESIELSKI_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lcbm/rng.h"

namespace lcbm {

// Schauder tent on I_{j,k} = [k 2^-j, (k+1) 2^-j), peak 1/2 at the midpoint.
// Throws std::out_of_range if k >= 2^j, std::domain_error if t is outside
// [0, 1].
double schauder(int j, std::uint64_t k, double t);

// 2^{-j/2}.
double level_scale(int j);

// Gaussian coefficients X0 and X_{j,k}, j = 0..level_n.
//
// A coefficient set may cover only the prefix [0, 2^-p) of the unit
// interval (horizon exponent p > 0). Level j then stores the
// max(1, 2^{j-p}) coefficients whose support meets the prefix, starting at
// k = 0. Values coincide with the full set sampled from the same key.
class HaarCoefficients {
 public:
  HaarCoefficients() = default;
  explicit HaarCoefficients(int level_n, int horizon_exponent = 0);

  // Re-shapes to all-zero coefficients, keeping allocated storage.
  void reset(int level_n, int horizon_exponent = 0);

  int level_n() const { return level_n_; }
  int horizon_exponent() const { return horizon_exponent_; }
  bool is_prefix() const { return horizon_exponent_ > 0; }

  double x0() const { return x0_; }
  void set_x0(double v) { x0_ = v; }

  std::size_t level_size(int j) const;
  std::span<double> level(int j);
  std::span<const double> level(int j) const;
  // Throws std::out_of_range for k not stored.
  double coefficient(int j, std::uint64_t k) const;

  // Key used for sampling, if any.
  const std::optional<PathKey>& key() const { return key_; }
  void set_key(std::optional<PathKey> k) { key_ = k; }

  // Extends to `new_level` with the stored key (or zeros if unkeyed) for the
  // new levels.
  HaarCoefficients extended(int new_level) const;

  friend bool operator==(const HaarCoefficients&,
                         const HaarCoefficients&) = default;

 private:
  int level_n_ = -1;
  int horizon_exponent_ = 0;
  double x0_ = 0.0;
  std::vector<double> values_;
  std::vector<std::size_t> offsets_;
  std::optional<PathKey> key_;
};

HaarCoefficients sample_coefficients(int level_n, std::uint64_t seed);
HaarCoefficients sample_coefficients(int level_n, PathKey key,
                                     int horizon_exponent = 0);
// Same values as sample_coefficients, written into `out`'s storage.
void sample_coefficients_into(HaarCoefficients& out, int level_n, PathKey key,
                              int horizon_exponent = 0);

struct AffineForm {
  double slope;
  double intercept;
};

// Level-n partial sum W^n, stored by its values on the level-(n+1) dyadic
// grid of [0, horizon].
class TruncatedPath {
 public:
  TruncatedPath() = default;
  explicit TruncatedPath(HaarCoefficients coeffs);

  // Rebuilds in place from a fresh sample (or zeros), reusing storage.
  void resample(int level_n, PathKey key, int horizon_exponent = 0);
  void reset_zero(int level_n, int horizon_exponent = 0);

  const HaarCoefficients& coefficients() const { return coeffs_; }
  int level_n() const { return coeffs_.level_n(); }
  // Right end of the covered interval, 2^-p.
  double horizon() const { return horizon_; }
  // Number of level-(n+1) cells covering [0, horizon].
  std::size_t cell_count() const { return nodes_.size() - 1; }
  double cell_width() const { return cell_width_; }
  std::span<const double> node_values() const { return nodes_; }
  double node_time(std::size_t i) const {
    return static_cast<double>(i) * cell_width_;
  }
  double slope(std::size_t cell) const {
    return (nodes_[cell + 1] - nodes_[cell]) * inv_cell_width_;
  }
  // W^n(t) through the affine form of the cell containing t.
  double value_at(double t) const;
  std::size_t cell_of(double t) const;

 private:
  void build();

  HaarCoefficients coeffs_;
  std::vector<double> nodes_;
  double horizon_ = 1.0;
  double cell_width_ = 0.5;
  double inv_cell_width_ = 2.0;
};

// Direct Schauder sum t X0 + sum_j 2^{-j/2} Lambda_{j,k(t)}(t) X_{j,k(t)};
// O(n). Throws std::domain_error for t outside [0, horizon].
double evaluate_truncated(const TruncatedPath& path, double t);

// Affine form of W^n on the closed cell I_{n+1,k}. Throws std::out_of_range.
AffineForm cell_affine(const TruncatedPath& path, std::size_t cell_k);

}  // namespace lcbm

#endif  // LCBM_LEVY_CIESIELSKI_H_
