#ifndef LCBM_EXACT_SUPREMUM_H_
#define LCBM_EXACT_SUPREMUM_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lcbm/levy_ciesielski.h"

namespace lcbm {

enum class Denominator {
  gap_global,            // g(s - t)
  fixed_global,          // g(delta) r(delta)
  gap_global_corrected,  // g(s - t) r(s - t)
  local_plain,           // h(t)
  local_corrected,       // h(t) s(t, eps)
};

struct DenominatorKind {
  Denominator form = Denominator::gap_global;
  std::optional<double> epsilon;

  static DenominatorKind gap_global() { return {Denominator::gap_global, {}}; }
  static DenominatorKind fixed_global() {
    return {Denominator::fixed_global, {}};
  }
  static DenominatorKind gap_global_corrected() {
    return {Denominator::gap_global_corrected, {}};
  }
  static DenominatorKind local_plain() { return {Denominator::local_plain, {}}; }
  static DenominatorKind local_corrected(double eps) {
    return {Denominator::local_corrected, eps};
  }

  bool is_global() const;
  // Throws std::invalid_argument unless epsilon is present exactly for
  // local_corrected (and positive).
  void validate() const;

  friend bool operator==(const DenominatorKind&,
                         const DenominatorKind&) = default;
};

std::string_view denominator_name(Denominator form);
// Accepts snake_case or kebab-case names.
std::optional<Denominator> parse_denominator(std::string_view name);

struct BandSupremum {
  double value = 0.0;
  double arg_t = 0.0;
  double arg_s = 0.0;
  std::size_t cell_k = 0;
  std::size_t cell_l = 0;
  DenominatorKind kind;
  // False when the supremum is approached but not attained (excluded
  // endpoint of a half-open set, or the 0+ limit of a local statistic).
  bool attained = true;
};

struct CandidatePoint {
  double t;
  double s;
};

// Cell pair rectangle [k h, (k+1) h] x [(k+l) h, (k+l+1) h] clipped to
// gap_lo <= s - t <= gap_hi. Vertices in a fixed order.
struct BandPolygon {
  std::array<CandidatePoint, 8> vertices{};
  int size = 0;
};
BandPolygon band_polygon(std::size_t k, std::size_t l, double cell_width,
                         double gap_lo, double gap_hi);

// Denominator of an increment statistic as a function of the gap.
struct GapScale {
  enum class Form { modulus, corrected_modulus, constant };
  Form form = Form::modulus;
  double constant = 1.0;

  double operator()(double gap) const;
};

struct BandOptions {
  // Only pairs with s - t >= gap_floor are considered.
  double gap_floor = 0.0;
  // Added to |W_s - W_t| before normalizing.
  double allowance = 0.0;
};

// Supremum of (|W_s - W_t| + allowance) / scale(s - t) over
// gap_floor <= s - t <= gap_hi for the piecewise-linear function with the
// given node values and cell width. cell_count must be a power of two.
BandSupremum node_band_sup(std::span<const double> nodes, double cell_width,
                           double gap_hi, GapScale scale,
                           const BandOptions& options = {});
BandSupremum node_band_sup_exhaustive(std::span<const double> nodes,
                                      double cell_width, double gap_hi,
                                      GapScale scale,
                                      const BandOptions& options = {});

// Exact supremum of |W_s - W_t| / D over 0 <= t < s <= horizon,
// s - t <= delta. Throws std::domain_error on delta, std::invalid_argument
// for local kinds.
BandSupremum global_band_sup(const TruncatedPath& path, double delta,
                             DenominatorKind kind,
                             const BandOptions& options = {});
// Same result by scanning every cell pair.
BandSupremum global_band_sup_exhaustive(const TruncatedPath& path,
                                        double delta, DenominatorKind kind,
                                        const BandOptions& options = {});

// sup_{delta <= delta0} sup_{|s-t| <= delta} |W_s - W_t| / (g(delta) r(delta)).
BandSupremum uniform_band_sup(const TruncatedPath& path, double delta0);

// sup over t in (0, delta] of W_t / D(t) for a local kind.
BandSupremum local_sup(const TruncatedPath& path, double delta,
                       DenominatorKind kind);

// sup over t in [2^{-m-1}, 2^{-m}) of W_t / h(t); path level must equal
// m_of_epsilon(epsilon, m). Computed over the closure; attained = false if
// the maximizer is the excluded right endpoint.
BandSupremum block_sup(const TruncatedPath& path, int m, double epsilon);

// The statistic at a point: |W_s - W_t| / D(s - t) for global kinds,
// W_t / D(t) for local kinds (s ignored).
double statistic_at(const TruncatedPath& path, DenominatorKind kind,
                    double delta, double t, double s);

// Scale used for a global kind at band width delta.
GapScale gap_scale_for(DenominatorKind kind, double delta);
// D(t) for a local kind.
double local_denominator(DenominatorKind kind, double t);

// Dense-grid brute force over the statistic on the grid of step
// `resolution`, with a Lipschitz slack such that
// grid value <= exact <= grid value + slack.
struct OracleResult {
  double value = 0.0;
  double slack = 0.0;
};

// Requires resolution <= cell_width / 8 with cell_width / resolution a
// power of two, and resolution <= delta / 8.
OracleResult grid_oracle(const TruncatedPath& path, double delta,
                         DenominatorKind kind, double resolution);

// Increment profile of one path on a fine grid: R[d] = max_i |W(i+d) - W(i)|.
// Reused across kinds and band widths.
class GridProfile {
 public:
  GridProfile(const TruncatedPath& path, double resolution,
              double max_delta);
  OracleResult global(double delta, DenominatorKind kind) const;
  double resolution() const { return resolution_; }

 private:
  double resolution_;
  double cell_width_;
  double max_slope_;
  double span_;
  std::vector<double> increments_;
};

// Oracle for block_sup on the closure of J_m.
OracleResult block_grid_oracle(const TruncatedPath& path, int m,
                               double resolution);

}  // namespace lcbm

#endif  // LCBM_EXACT_SUPREMUM_H_
