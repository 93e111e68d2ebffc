#include "lcbm/exact_supremum.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>

#include "lcbm/bounds.h"
#include "lcbm/modulus.h"

namespace lcbm {
namespace {

constexpr double kPruneMargin = 1e-12;

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  CandidatePoint point{0.0, 0.0};
  std::size_t k = 0;
  std::size_t l = 0;
  int vertex = 0;
  bool found = false;

  void offer(double v, CandidatePoint p, std::size_t kk, std::size_t ll,
             int vv) {
    if (v > value || (v == value && std::tie(kk, ll, vv) <
                                        std::tie(k, l, vertex))) {
      value = v;
      point = p;
      k = kk;
      l = ll;
      vertex = vv;
      found = true;
    }
  }
};

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

int log2_exact(std::size_t x) {
  int b = 0;
  while ((std::size_t{1} << b) < x) ++b;
  return b;
}

class PairEvaluator {
 public:
  PairEvaluator(std::span<const double> nodes, double h, double gap_hi,
                GapScale scale, const BandOptions& opts)
      : nodes_(nodes),
        h_(h),
        inv_h_(1.0 / h),
        gap_hi_(gap_hi),
        scale_(scale),
        opts_(opts) {}

  void cell_pair(std::size_t k, std::size_t l, Best& best) const {
    const BandPolygon poly = band_polygon(k, l, h_, opts_.gap_floor, gap_hi_);
    if (poly.size == 0) return;
    const std::size_t ks = k + l;
    const double xt = static_cast<double>(k) * h_;
    const double xs = static_cast<double>(ks) * h_;
    const double st = (nodes_[k + 1] - nodes_[k]) * inv_h_;
    const double ss = (nodes_[ks + 1] - nodes_[ks]) * inv_h_;
    for (int v = 0; v < poly.size; ++v) {
      const CandidatePoint p = poly.vertices[v];
      const double gap = p.s - p.t;
      if (!(gap > 0.0)) continue;
      const double wt = nodes_[k] + st * (p.t - xt);
      const double ws = nodes_[ks] + ss * (p.s - xs);
      const double value = (std::fabs(ws - wt) + opts_.allowance) / scale_(gap);
      best.offer(value, p, k, l, v);
    }
  }

 private:
  std::span<const double> nodes_;
  double h_;
  double inv_h_;
  double gap_hi_;
  GapScale scale_;
  BandOptions opts_;
};

void check_engine_args(std::span<const double> nodes, double h, double gap_hi,
                       GapScale scale, const BandOptions& opts) {
  if (nodes.size() < 2 || !is_power_of_two(nodes.size() - 1)) {
    throw std::invalid_argument("cell count must be a power of two");
  }
  if (!(h > 0.0)) throw std::invalid_argument("cell width must be positive");
  if (!(gap_hi > 0.0)) throw std::domain_error("band width must be positive");
  if (scale.form != GapScale::Form::constant && !(gap_hi < 1.0)) {
    throw std::domain_error("gap-dependent denominators need band width < 1");
  }
  if (!(opts.gap_floor >= 0.0) || opts.gap_floor > gap_hi) {
    throw std::domain_error("gap floor must lie in [0, band width]");
  }
  if (!(opts.allowance >= 0.0)) {
    throw std::domain_error("allowance must be non-negative");
  }
  if (opts.allowance > 0.0 && opts.gap_floor == 0.0 &&
      scale.form != GapScale::Form::constant) {
    throw std::domain_error(
        "a positive allowance with a gap-dependent denominator needs a "
        "positive gap floor");
  }
}

BandSupremum finish(const Best& best) {
  BandSupremum out;
  if (!best.found) {
    out.attained = false;
    return out;
  }
  out.value = best.value;
  out.arg_t = best.point.t;
  out.arg_s = best.point.s;
  out.cell_k = best.k;
  out.cell_l = best.l;
  return out;
}

// Per-block summaries over a dyadic hierarchy of cells.
struct BlockTree {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<double> slope;
  std::vector<std::size_t> offset;
  int levels = 0;

  void build(std::span<const double> nodes, double inv_h) {
    const std::size_t cells = nodes.size() - 1;
    levels = log2_exact(cells);
    offset.assign(levels + 2, 0);
    for (int b = 0; b <= levels; ++b) {
      offset[b + 1] = offset[b] + (cells >> b);
    }
    lo.resize(offset.back());
    hi.resize(offset.back());
    slope.resize(offset.back());
    for (std::size_t c = 0; c < cells; ++c) {
      const double a = nodes[c];
      const double b = nodes[c + 1];
      lo[c] = std::min(a, b);
      hi[c] = std::max(a, b);
      slope[c] = std::fabs(b - a) * inv_h;
    }
    for (int b = 1; b <= levels; ++b) {
      const std::size_t n = cells >> b;
      const std::size_t src = offset[b - 1];
      const std::size_t dst = offset[b];
      for (std::size_t u = 0; u < n; ++u) {
        lo[dst + u] = std::min(lo[src + 2 * u], lo[src + 2 * u + 1]);
        hi[dst + u] = std::max(hi[src + 2 * u], hi[src + 2 * u + 1]);
        slope[dst + u] = std::max(slope[src + 2 * u], slope[src + 2 * u + 1]);
      }
    }
  }
};

struct Region {
  int level;
  std::size_t u;
  std::size_t v;
  double bound;
};

}  // namespace

bool DenominatorKind::is_global() const {
  return form == Denominator::gap_global || form == Denominator::fixed_global ||
         form == Denominator::gap_global_corrected;
}

void DenominatorKind::validate() const {
  if (form == Denominator::local_corrected) {
    if (!epsilon || !(*epsilon > 0.0)) {
      throw std::invalid_argument("local_corrected needs a positive epsilon");
    }
  } else if (epsilon) {
    throw std::invalid_argument("epsilon is only used by local_corrected");
  }
}

std::string_view denominator_name(Denominator form) {
  switch (form) {
    case Denominator::gap_global:
      return "gap_global";
    case Denominator::fixed_global:
      return "fixed_global";
    case Denominator::gap_global_corrected:
      return "gap_global_corrected";
    case Denominator::local_plain:
      return "local_plain";
    case Denominator::local_corrected:
      return "local_corrected";
  }
  return "unknown";
}

std::optional<Denominator> parse_denominator(std::string_view name) {
  std::string s(name);
  std::replace(s.begin(), s.end(), '-', '_');
  for (Denominator d :
       {Denominator::gap_global, Denominator::fixed_global,
        Denominator::gap_global_corrected, Denominator::local_plain,
        Denominator::local_corrected}) {
    if (s == denominator_name(d)) return d;
  }
  return std::nullopt;
}

double GapScale::operator()(double gap) const {
  switch (form) {
    case Form::constant:
      return constant;
    case Form::modulus:
      return std::sqrt(2.0 * gap * -std::log(gap));
    case Form::corrected_modulus: {
      const double lg = -std::log(gap);
      return std::sqrt(2.0 * gap * lg) *
             (1.0 + kCorrectionConstant / std::sqrt(lg));
    }
  }
  return constant;
}

BandPolygon band_polygon(std::size_t k, std::size_t l, double cell_width,
                         double gap_lo, double gap_hi) {
  const double x0 = static_cast<double>(k) * cell_width;
  const double x1 = static_cast<double>(k + 1) * cell_width;
  const double y0 = static_cast<double>(k + l) * cell_width;
  const double y1 = static_cast<double>(k + l + 1) * cell_width;

  BandPolygon poly;
  poly.vertices = {CandidatePoint{x0, y0}, CandidatePoint{x1, y0},
                   CandidatePoint{x1, y1}, CandidatePoint{x0, y1}};
  poly.size = 4;

  // Sutherland-Hodgman against c*(s - t) >= c*bound. Crossing edges are
  // axis-aligned: the edge on the previous clip line is never crossed.
  auto clip = [&](double bound, bool keep_above) {
    BandPolygon out;
    auto inside = [&](const CandidatePoint& p) {
      const double g = p.s - p.t;
      return keep_above ? g >= bound : g <= bound;
    };
    auto cross = [&](const CandidatePoint& p, const CandidatePoint& q) {
      if (p.s == q.s) return CandidatePoint{p.s - bound, p.s};
      return CandidatePoint{p.t, p.t + bound};
    };
    for (int i = 0; i < poly.size; ++i) {
      const CandidatePoint& p = poly.vertices[i];
      const CandidatePoint& q = poly.vertices[(i + 1) % poly.size];
      const bool pin = inside(p);
      const bool qin = inside(q);
      if (pin) out.vertices[out.size++] = p;
      if (pin != qin) {
        // Skip crossings that coincide with the inside endpoint.
        const CandidatePoint c = cross(p, q);
        const CandidatePoint& in = pin ? p : q;
        if (c.t != in.t || c.s != in.s) out.vertices[out.size++] = c;
      }
    }
    poly = out;
  };
  clip(gap_lo, true);
  if (poly.size > 0) clip(gap_hi, false);
  if (poly.size < 3) poly.size = 0;
  return poly;
}

BandSupremum node_band_sup_exhaustive(std::span<const double> nodes,
                                      double cell_width, double gap_hi,
                                      GapScale scale,
                                      const BandOptions& options) {
  check_engine_args(nodes, cell_width, gap_hi, scale, options);
  const std::size_t cells = nodes.size() - 1;
  const std::size_t reach =
      static_cast<std::size_t>(std::floor(gap_hi / cell_width)) + 1;
  const PairEvaluator eval(nodes, cell_width, gap_hi, scale, options);
  Best best;
  for (std::size_t k = 0; k < cells; ++k) {
    const std::size_t lmax = std::min(reach, cells - 1 - k);
    for (std::size_t l = 0; l <= lmax; ++l) eval.cell_pair(k, l, best);
  }
  return finish(best);
}

BandSupremum node_band_sup(std::span<const double> nodes, double cell_width,
                           double gap_hi, GapScale scale,
                           const BandOptions& options) {
  check_engine_args(nodes, cell_width, gap_hi, scale, options);
  thread_local BlockTree tree;
  thread_local std::vector<Region> stack;
  tree.build(nodes, 1.0 / cell_width);
  const PairEvaluator eval(nodes, cell_width, gap_hi, scale, options);
  const double floor_gap = options.gap_floor;
  const double allowance = options.allowance;
  const bool constant = scale.form == GapScale::Form::constant;

  // Upper bound of the statistic over pairs t in block u, s in block v.
  auto region_bound = [&](int b, std::size_t u, std::size_t v) {
    const double w = std::ldexp(cell_width, b);
    const std::size_t d = v - u;
    const double gmin = d >= 1 ? static_cast<double>(d - 1) * w : 0.0;
    const double gmax = static_cast<double>(d + 1) * w;
    const double glo = std::max(floor_gap, gmin);
    const double ghi = std::min(gap_hi, gmax);
    if (glo > ghi || !(ghi > 0.0)) return -1.0;
    const std::size_t base = tree.offset[b];
    const double num = std::max(tree.hi[base + v] - tree.lo[base + u],
                                tree.hi[base + u] - tree.lo[base + v]) +
                       allowance;
    double ub = std::numeric_limits<double>::infinity();
    if (constant) {
      ub = num / scale.constant;
    } else if (glo > 0.0) {
      ub = num / std::min(scale(glo), scale(ghi));
    }
    if (allowance == 0.0 && d <= 1) {
      // |dW| <= min(range, S gap); S gap / G is increasing and range / G
      // decreasing in the gap, so the worst gap is where they cross.
      const double s = std::max(tree.slope[base + u], tree.slope[base + v]);
      const double cross = s > 0.0 ? num / s : ghi;
      if (cross >= ghi) {
        ub = std::min(ub, s * ghi / scale(ghi));
      } else if (cross > glo) {
        ub = std::min(ub, num / scale(cross));
      } else if (num == 0.0) {
        ub = 0.0;
      }
    }
    return ub;
  };

  Best best;
  auto prunable = [&](const Region& r) {
    const double ub = r.bound * (1.0 + kPruneMargin);
    if (ub < best.value) return true;
    const std::size_t kmin = r.u << r.level;
    return ub <= best.value && kmin > best.k;
  };

  stack.clear();
  {
    const double ub = region_bound(tree.levels, 0, 0);
    if (ub >= 0.0) stack.push_back({tree.levels, 0, 0, ub});
  }
  while (!stack.empty()) {
    const Region r = stack.back();
    stack.pop_back();
    if (best.found && prunable(r)) continue;
    if (r.level == 0) {
      eval.cell_pair(r.u, r.v - r.u, best);
      continue;
    }
    const int b = r.level - 1;
    Region kids[4];
    int n = 0;
    for (std::size_t cu = 2 * r.u; cu <= 2 * r.u + 1; ++cu) {
      for (std::size_t cv = 2 * r.v; cv <= 2 * r.v + 1; ++cv) {
        if (cv < cu) continue;
        const double ub = region_bound(b, cu, cv);
        if (ub < 0.0) continue;
        kids[n++] = {b, cu, cv, ub};
      }
    }
    // Highest bound ends on top of the stack; ties favour smaller indices.
    auto before = [](const Region& a, const Region& c) {
      if (a.bound != c.bound) return a.bound < c.bound;
      return std::tie(a.u, a.v) > std::tie(c.u, c.v);
    };
    for (int i = 1; i < n; ++i) {
      for (int j = i; j > 0 && before(kids[j], kids[j - 1]); --j) {
        std::swap(kids[j], kids[j - 1]);
      }
    }
    for (int i = 0; i < n; ++i) stack.push_back(kids[i]);
  }
  return finish(best);
}

GapScale gap_scale_for(DenominatorKind kind, double delta) {
  switch (kind.form) {
    case Denominator::gap_global:
      return {GapScale::Form::modulus, 1.0};
    case Denominator::gap_global_corrected:
      return {GapScale::Form::corrected_modulus, 1.0};
    case Denominator::fixed_global:
      return {GapScale::Form::constant,
              global_modulus(delta) * global_correction(delta)};
    default:
      throw std::invalid_argument("gap_scale_for: not a global kind");
  }
}

double local_denominator(DenominatorKind kind, double t) {
  switch (kind.form) {
    case Denominator::local_plain:
      return local_modulus(t);
    case Denominator::local_corrected:
      return local_modulus(t) * local_correction(t, kind.epsilon.value());
    default:
      throw std::invalid_argument("local_denominator: not a local kind");
  }
}

namespace {

void check_global(const TruncatedPath& path, double delta,
                  DenominatorKind kind) {
  kind.validate();
  if (!kind.is_global()) {
    throw std::invalid_argument("global band supremum needs a global kind");
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::domain_error("delta must lie in (0, 1)");
  }
  if (kind.form != Denominator::gap_global && delta > 0.03125) {
    throw std::domain_error("corrected kinds need delta <= 2^-5");
  }
  if (delta > path.horizon()) {
    throw std::domain_error("delta exceeds the path domain");
  }
}

template <typename Engine>
BandSupremum run_global(const TruncatedPath& path, double delta,
                        DenominatorKind kind, const BandOptions& options,
                        Engine engine) {
  check_global(path, delta, kind);
  BandSupremum out = engine(path.node_values(), path.cell_width(), delta,
                            gap_scale_for(kind, delta), options);
  out.kind = kind;
  return out;
}

}  // namespace

BandSupremum global_band_sup(const TruncatedPath& path, double delta,
                             DenominatorKind kind,
                             const BandOptions& options) {
  return run_global(path, delta, kind, options, node_band_sup);
}

BandSupremum global_band_sup_exhaustive(const TruncatedPath& path,
                                        double delta, DenominatorKind kind,
                                        const BandOptions& options) {
  return run_global(path, delta, kind, options, node_band_sup_exhaustive);
}

BandSupremum uniform_band_sup(const TruncatedPath& path, double delta0) {
  if (!(delta0 > 0.0) || delta0 > 0.03125) {
    throw std::domain_error("uniform_band_sup: delta0 must lie in (0, 2^-5]");
  }
  return global_band_sup(path, delta0, DenominatorKind::gap_global_corrected());
}

BandSupremum local_sup(const TruncatedPath& path, double delta,
                       DenominatorKind kind) {
  kind.validate();
  if (kind.is_global()) {
    throw std::invalid_argument("local_sup needs a local kind");
  }
  if (!(delta > 0.0) || delta > 0.0625 ||
      (kind.form == Denominator::local_corrected && !(delta < 0.0625))) {
    throw std::domain_error("local_sup: delta out of range");
  }
  if (delta > path.horizon()) {
    throw std::domain_error("local_sup: delta exceeds the path domain");
  }
  const auto nodes = path.node_values();
  const double h = path.cell_width();
  const std::size_t last =
      std::min(static_cast<std::size_t>(std::floor(delta / h)),
               path.cell_count());
  BandSupremum out;
  out.kind = kind;
  bool found = false;
  auto offer = [&](double t, double w) {
    const double v = w / local_denominator(kind, t);
    if (!found || v > out.value) {
      out.value = v;
      out.arg_t = out.arg_s = t;
      found = true;
    }
  };
  for (std::size_t i = 1; i <= last; ++i) offer(path.node_time(i), nodes[i]);
  if (path.node_time(last) < delta) offer(delta, path.value_at(delta));
  if (out.value < 0.0) {
    out.value = 0.0;
    out.arg_t = out.arg_s = 0.0;
    out.attained = false;
  }
  out.cell_k = path.cell_of(out.arg_t);
  return out;
}

BandSupremum block_sup(const TruncatedPath& path, int m, double epsilon) {
  if (m < 4) throw std::domain_error("block_sup: m must be >= 4");
  const int level = m_of_epsilon(epsilon, m);
  if (path.level_n() != level) {
    throw std::invalid_argument("block_sup: path level " +
                                std::to_string(path.level_n()) +
                                " differs from m(eps) = " +
                                std::to_string(level));
  }
  if (std::ldexp(1.0, -m) > path.horizon()) {
    throw std::domain_error("block_sup: block exceeds the path domain");
  }
  const int shift = path.level_n() + 1 - m;
  const std::size_t i0 = std::size_t{1} << (shift - 1);
  const std::size_t i1 = std::size_t{1} << shift;
  const auto nodes = path.node_values();
  BandSupremum out;
  out.kind = DenominatorKind::local_plain();
  std::size_t arg = i0;
  for (std::size_t i = i0; i <= i1; ++i) {
    const double v = nodes[i] / local_modulus(path.node_time(i));
    if (i == i0 || v > out.value) {
      out.value = v;
      arg = i;
    }
  }
  out.arg_t = out.arg_s = path.node_time(arg);
  out.cell_k = std::min(arg, path.cell_count() - 1);
  out.attained = arg != i1;
  return out;
}

double statistic_at(const TruncatedPath& path, DenominatorKind kind,
                    double delta, double t, double s) {
  kind.validate();
  if (kind.is_global()) {
    const double gap = s - t;
    if (!(gap > 0.0)) return 0.0;
    const GapScale scale = gap_scale_for(kind, delta);
    return std::fabs(path.value_at(s) - path.value_at(t)) / scale(gap);
  }
  if (!(t > 0.0)) return 0.0;
  return path.value_at(t) / local_denominator(kind, t);
}

}  // namespace lcbm
