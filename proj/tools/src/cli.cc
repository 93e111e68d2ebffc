#include "lcbm/cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lcbm/bounds.h"
#include "lcbm/exact_supremum.h"
#include "lcbm/levy_ciesielski.h"
#include "lcbm/montecarlo.h"
#include "lcbm/parse.h"
#include "lcbm/serialization.h"

#ifndef LCBM_VERSION
#define LCBM_VERSION "0.0.0"
#endif

namespace lcbm {

using nlohmann::json;

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

// Raised for bad flags or values; maps to the usage exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw UsageError("empty item in list '" + text + "'");
    out.push_back(item);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<double> real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split_list(text)) out.push_back(parse_real(s));
  return out;
}

std::vector<int> int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& s : split_list(text)) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size()) throw UsageError("not an integer: '" + s + "'");
    out.push_back(v);
  }
  return out;
}

std::string utc_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Canonical configuration text; the worker count does not change results
// and is left out.
std::string canonical_config(const ExperimentConfig& c) {
  json j = to_json(c);
  j.erase("workers");
  return j.dump();
}

// ---- bound -------------------------------------------------------------

struct BoundArgs {
  std::string theorem;
  std::string eps, delta, n, d, m, T;
  std::string format = "csv";
};

std::vector<std::string> required_params(Theorem t) {
  switch (t) {
    case Theorem::truncated_global:
    case Theorem::truncated_local:
      return {"eps", "delta", "n"};
    case Theorem::fixed_delta:
    case Theorem::uniform:
    case Theorem::local_deviation:
      return {"eps", "delta"};
    case Theorem::scaled_fixed:
    case Theorem::scaled_uniform:
      return {"eps", "delta", "T"};
    case Theorem::tail:
      return {"n", "d"};
    case Theorem::block_local:
      return {"eps", "m"};
  }
  return {};
}

BoundEvaluation evaluate(Theorem t, const BoundParams& p) {
  switch (t) {
    case Theorem::truncated_global:
      return truncated_global_bound(*p.epsilon, *p.delta, *p.n);
    case Theorem::fixed_delta:
      return fixed_delta_bound(*p.epsilon, *p.delta);
    case Theorem::uniform:
      return uniform_bound(*p.epsilon, *p.delta);
    case Theorem::scaled_fixed:
      return scaled_fixed_bound(*p.epsilon, *p.delta, *p.horizon_T);
    case Theorem::scaled_uniform:
      return scaled_uniform_bound(*p.epsilon, *p.delta, *p.horizon_T);
    case Theorem::tail:
      return tail_bound(*p.n, *p.d);
    case Theorem::truncated_local:
      return truncated_local_bound(*p.epsilon, *p.delta, *p.n);
    case Theorem::block_local:
      return block_bound(*p.epsilon, *p.m);
    case Theorem::local_deviation:
      return local_deviation_bound(*p.epsilon, *p.delta);
  }
  throw std::invalid_argument("unknown theorem");
}

template <class T>
std::string opt_text(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, double>) return fmt(*v);
  return std::to_string(*v);
}

int cmd_bound(const BoundArgs& a, std::ostream& out) {
  const auto theorem = parse_theorem(a.theorem);
  if (!theorem) throw UsageError("unknown theorem '" + a.theorem + "'");
  if (a.format != "csv" && a.format != "jsonl") {
    throw UsageError("format must be csv or jsonl");
  }
  const std::vector<std::string> need = required_params(*theorem);
  auto given = [&](const std::string& name) -> const std::string& {
    if (name == "eps") return a.eps;
    if (name == "delta") return a.delta;
    if (name == "n") return a.n;
    if (name == "d") return a.d;
    if (name == "m") return a.m;
    return a.T;
  };
  for (const auto& name : need) {
    if (given(name).empty()) {
      throw UsageError("bound " + std::string(theorem_name(*theorem)) +
                       " requires --" + name);
    }
  }
  auto needed = [&](const char* name) {
    for (const auto& s : need) {
      if (s == name) return true;
    }
    return false;
  };
  std::vector<std::optional<double>> eps{std::nullopt}, delta{std::nullopt},
      d{std::nullopt}, T{std::nullopt};
  std::vector<std::optional<int>> n{std::nullopt}, m{std::nullopt};
  auto fill_real = [&](const char* name, std::vector<std::optional<double>>& v) {
    if (!needed(name)) return;
    v.clear();
    for (double x : real_list(given(name))) v.push_back(x);
  };
  auto fill_int = [&](const char* name, std::vector<std::optional<int>>& v) {
    if (!needed(name)) return;
    v.clear();
    for (int x : int_list(given(name))) v.push_back(x);
  };
  fill_real("eps", eps);
  fill_real("delta", delta);
  fill_real("d", d);
  fill_real("T", T);
  fill_int("n", n);
  fill_int("m", m);

  std::vector<BoundEvaluation> rows;
  for (const auto& e : eps) {
    for (const auto& dl : delta) {
      for (const auto& nn : n) {
        for (const auto& dd : d) {
          for (const auto& mm : m) {
            for (const auto& tt : T) {
              rows.push_back(
                  evaluate(*theorem, BoundParams{e, dl, nn, dd, mm, tt}));
            }
          }
        }
      }
    }
  }
  if (a.format == "jsonl") {
    for (const auto& r : rows) {
      json j = to_json(r);
      j["schema_version"] = kSchemaVersion;
      out << j.dump() << '\n';
    }
    return kExitOk;
  }
  out << "theorem,epsilon,delta,n,d,m,T,raw,clamped,vacuous\n";
  for (const auto& r : rows) {
    const BoundParams& p = r.params;
    out << theorem_name(r.theorem) << ',' << opt_text(p.epsilon) << ','
        << opt_text(p.delta) << ',' << opt_text(p.n) << ',' << opt_text(p.d)
        << ',' << opt_text(p.m) << ',' << opt_text(p.horizon_T) << ','
        << fmt(r.raw) << ',' << fmt(r.clamped) << ','
        << (r.vacuous ? "true" : "false") << '\n';
  }
  return kExitOk;
}

// ---- sup ---------------------------------------------------------------

struct SupArgs {
  std::uint64_t seed = 1;
  std::uint64_t trial = 0;
  int level = 4;
  std::string delta;
  std::string kind = "gap-global";
  std::optional<std::string> eps;
  std::optional<std::string> oracle;
  std::optional<int> block_m;
  bool zero = false;
};

int cmd_sup(const SupArgs& a, std::ostream& out) {
  const PathKey key{a.seed, a.trial};
  json j;
  if (a.block_m) {
    if (!a.eps) throw UsageError("--block requires --eps");
    const double eps = parse_real(*a.eps);
    const int m = *a.block_m;
    const int level = m_of_epsilon(eps, m);
    const TruncatedPath path =
        a.zero ? TruncatedPath(HaarCoefficients(level, m))
               : TruncatedPath(sample_coefficients(level, key, m));
    j = to_json(block_sup(path, m, eps));
    j["level"] = level;
    if (a.oracle) {
      const OracleResult o = block_grid_oracle(path, m, parse_real(*a.oracle));
      j["oracle"] = {{"value", o.value},
                     {"slack", o.slack},
                     {"gap", j["value"].get<double>() - o.value}};
    }
  } else {
    if (a.delta.empty()) throw UsageError("sup requires --delta");
    const double delta = parse_real(a.delta);
    const TruncatedPath path =
        a.zero ? TruncatedPath(HaarCoefficients(a.level))
               : TruncatedPath(sample_coefficients(a.level, key, 0));
    BandSupremum s;
    std::optional<DenominatorKind> kind;
    if (a.kind == "uniform") {
      s = uniform_band_sup(path, delta);
    } else {
      const auto form = parse_denominator(a.kind);
      if (!form) throw UsageError("unknown kind '" + a.kind + "'");
      kind = DenominatorKind{*form, std::nullopt};
      if (*form == Denominator::local_corrected) {
        if (!a.eps) throw UsageError("kind local-corrected requires --eps");
        kind->epsilon = parse_real(*a.eps);
      }
      kind->validate();
      s = kind->is_global() ? global_band_sup(path, delta, *kind)
                            : local_sup(path, delta, *kind);
    }
    j = to_json(s);
    if (a.kind == "uniform") j["kind"] = "uniform";
    j["level"] = a.level;
    if (a.oracle) {
      if (!kind) throw UsageError("--oracle is not available for uniform");
      const OracleResult o =
          grid_oracle(path, delta, *kind, parse_real(*a.oracle));
      j["oracle"] = {{"value", o.value},
                     {"slack", o.slack},
                     {"gap", s.value - o.value}};
    }
  }
  j["seed"] = a.seed;
  j["trial"] = a.trial;
  j["schema_version"] = kSchemaVersion;
  out << j.dump() << '\n';
  return kExitOk;
}

// ---- verify ------------------------------------------------------------

struct VerifyArgs {
  std::optional<std::string> config_file;
  std::optional<std::string> theorem;
  std::optional<std::string> eps, delta, ci_level, d, T, bound_scale;
  std::optional<int> n, N, m, J, workers;
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  bool zero = false;
  std::optional<std::string> out_dir;
  std::string name = "verify";
  std::vector<std::string> command_line;
};

std::vector<ExperimentConfig> load_configs(const VerifyArgs& a) {
  std::vector<json> records;
  if (a.config_file) {
    std::ifstream in(*a.config_file);
    if (!in) throw UsageError("cannot read config file " + *a.config_file);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError(std::string("config file is not JSON: ") + e.what());
    }
    if (j.is_array()) {
      for (auto& r : j) records.push_back(r);
    } else {
      records.push_back(j);
    }
    if (records.empty()) throw UsageError("config file holds no configuration");
  } else {
    if (!a.theorem) throw UsageError("verify requires --config or --theorem");
    records.push_back(json::object());
  }
  std::vector<ExperimentConfig> out;
  for (json r : records) {
    if (!r.is_object()) throw UsageError("each configuration must be an object");
    if (a.theorem) r["theorem"] = *a.theorem;
    if (a.eps) r["epsilon"] = *a.eps;
    if (a.delta) r["delta"] = *a.delta;
    if (a.ci_level) r["ci_level"] = *a.ci_level;
    if (a.d) r["d"] = *a.d;
    if (a.T) r["T"] = *a.T;
    if (a.bound_scale) r["bound_scale"] = *a.bound_scale;
    if (a.n) r["level_n"] = *a.n;
    if (a.N) r["approx_level_N"] = *a.N;
    if (a.m) r["m"] = *a.m;
    if (a.J) r["horizon_J"] = *a.J;
    if (a.workers) r["workers"] = *a.workers;
    if (a.trials) r["trials"] = *a.trials;
    if (a.seed) r["seed"] = *a.seed;
    if (a.zero) r["zero_coefficients"] = true;
    ExperimentConfig c = config_from_json(r);
    c.validate();
    out.push_back(c);
  }
  return out;
}

std::filesystem::path output_dir(const VerifyArgs& a) {
  if (a.out_dir) return *a.out_dir;
  if (const char* env = std::getenv("LCBM_OUTPUT_DIR"); env && *env) {
    return env;
  }
  return ".";
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
  if (!f) throw std::runtime_error("write failed for " + p.string());
}

std::string csv_summary(const std::vector<ExperimentReport>& reports) {
  std::ostringstream s;
  s << "theorem,epsilon,delta,level,trials,seed,exceedances,rate,ci_low,"
       "ci_high,bracket_low_exceedances,bracket_high_exceedances,"
       "bracket_high_ci_high,error_budget,bound_raw,bound_clamped,vacuous,"
       "verdict\n";
  for (const auto& r : reports) {
    s << theorem_name(r.config.theorem) << ',' << fmt(r.config.epsilon) << ','
      << fmt(r.config.delta) << ',' << r.path_level << ',' << r.trials << ','
      << r.config.seed << ',' << r.exceedances << ',' << fmt(r.rate) << ','
      << fmt(r.ci.low) << ',' << fmt(r.ci.high) << ',';
    if (r.bracket) {
      s << r.bracket->low_exceedances << ',' << r.bracket->high_exceedances
        << ',' << fmt(r.bracket->high_ci.high) << ','
        << fmt(r.bracket->error_budget) << ',';
    } else {
      s << ",,,,";
    }
    s << fmt(r.bound.raw) << ',' << fmt(r.bound.clamped) << ','
      << (r.bound.vacuous ? "true" : "false") << ','
      << verdict_name(r.verdict) << '\n';
  }
  return s.str();
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const std::vector<ExperimentConfig> configs = load_configs(a);
  const std::filesystem::path dir = output_dir(a);
  if (a.name.empty() || a.name.find('/') != std::string::npos ||
      a.name == "." || a.name == "..") {
    throw UsageError("--name must be a plain file stem");
  }
  std::filesystem::create_directories(dir);

  const std::string started = utc_now();
  std::string canonical;
  for (const auto& c : configs) canonical += canonical_config(c) + '\n';

  std::vector<ExperimentReport> reports;
  json record_hashes = json::array();
  std::string jsonl;
  bool violated = false;
  for (const auto& c : configs) {
    ExperimentReport r = run_experiment(c);
    json j = to_json(r);
    j["config_hash"] = fnv1a_hex(canonical_config(c));
    record_hashes.push_back(j["config_hash"]);
    jsonl += j.dump() + '\n';
    out << j.dump() << '\n';
    violated = violated || r.verdict == Verdict::violated;
    reports.push_back(std::move(r));
  }

  json manifest{{"schema_version", kSchemaVersion},
                {"tool_version", LCBM_VERSION},
                {"config_hash", fnv1a_hex(canonical)},
                {"record_config_hashes", record_hashes},
                {"master_seed", configs.front().seed},
                {"started", started},
                {"finished", utc_now()},
                {"command_line", a.command_line},
                {"outputs", {a.name + ".jsonl", a.name + ".csv"}}};
  write_file(dir / (a.name + ".jsonl"), jsonl);
  write_file(dir / (a.name + ".csv"), csv_summary(reports));
  write_file(dir / (a.name + ".manifest.json"), manifest.dump(2) + '\n');
  if (violated) {
    err << "verdict: violated\n";
    return kExitViolated;
  }
  return kExitOk;
}

// ---- audit -------------------------------------------------------------

int cmd_audit(const std::string& ks, const std::string& eps,
              const std::string& format, std::ostream& out) {
  if (format != "csv" && format != "jsonl") {
    throw UsageError("format must be csv or jsonl");
  }
  const std::vector<int> k_list = int_list(ks);
  for (int k : k_list) {
    if (k != 1 && k != 2) throw UsageError("--k entries must be 1 or 2");
  }
  const std::vector<double> e_list = real_list(eps);
  if (format == "csv") {
    out << "k,epsilon,terms,direct_sum,remainder_bound,claimed_bound,"
           "consistent\n";
  }
  for (int k : k_list) {
    for (double e : e_list) {
      const SeriesAudit a = series_audit(k, e);
      if (format == "jsonl") {
        out << to_json(a).dump() << '\n';
        continue;
      }
      out << a.k << ',' << fmt(a.epsilon) << ',' << a.terms << ','
          << fmt(a.direct_sum) << ',' << fmt(a.remainder_bound) << ','
          << fmt(a.claimed_bound) << ',' << (a.consistent ? "true" : "false")
          << '\n';
    }
  }
  return kExitOk;
}

// ---- oracle-compare ----------------------------------------------------

struct CompareArgs {
  std::uint64_t seed_begin = 0;
  int seeds = 50;
  std::string levels = "3,4,5,6";
  std::string deltas = "2^-6,2^-5";
  std::string kinds = "gap-global,fixed-global,gap-global-corrected";
  std::string resolution = "2^-16";
};

constexpr double kRounding = 1e-12;

int cmd_oracle_compare(const CompareArgs& a, std::ostream& out,
                       std::ostream& err) {
  if (a.seeds < 1) throw UsageError("--seeds must be >= 1");
  const std::vector<int> levels = int_list(a.levels);
  const std::vector<double> deltas = real_list(a.deltas);
  std::vector<DenominatorKind> kinds;
  for (const auto& name : split_list(a.kinds)) {
    const auto form = parse_denominator(name);
    if (!form) throw UsageError("unknown kind '" + name + "'");
    DenominatorKind k{*form, std::nullopt};
    if (!k.is_global()) throw UsageError("oracle-compare takes global kinds");
    kinds.push_back(k);
  }
  const double res = parse_real(a.resolution);
  double max_delta = 0.0;
  for (double d : deltas) max_delta = std::max(max_delta, d);

  out << "seed,level,delta,kind,exact,oracle,slack,dominates,within_slack\n";
  int failures = 0;
  for (int i = 0; i < a.seeds; ++i) {
    const std::uint64_t seed = a.seed_begin + static_cast<std::uint64_t>(i);
    for (int n : levels) {
      const TruncatedPath path(sample_coefficients(n, seed));
      const GridProfile profile(path, res, max_delta);
      for (double delta : deltas) {
        for (const auto& kind : kinds) {
          const double exact = global_band_sup(path, delta, kind).value;
          const OracleResult o = profile.global(delta, kind);
          // Both sides round differently when the grid hits the argmax.
          const bool dominates =
              exact >= o.value - kRounding * std::max(1.0, std::fabs(o.value));
          const bool within = exact - o.value <= o.slack;
          failures += !(dominates && within);
          out << seed << ',' << n << ',' << fmt(delta) << ','
              << denominator_name(kind.form) << ',' << fmt(exact) << ','
              << fmt(o.value) << ',' << fmt(o.slack) << ','
              << (dominates ? "true" : "false") << ','
              << (within ? "true" : "false") << '\n';
        }
      }
    }
  }
  if (failures > 0) {
    err << failures << " comparisons outside the oracle bracket\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Levy-Ciesielski modulus statistics: bounds, exact suprema, "
               "Monte Carlo verification"};
  app.set_version_flag("--version", LCBM_VERSION);
  app.require_subcommand(1);

  BoundArgs bound_args;
  auto* bound = app.add_subcommand("bound", "Evaluate a probability bound");
  bound->add_option("theorem", bound_args.theorem, "Theorem id")->required();
  bound->add_option("--eps", bound_args.eps, "epsilon (comma list)");
  bound->add_option("--delta", bound_args.delta,
                    "delta or delta0 (comma list; 2^-k accepted)");
  bound->add_option("--n", bound_args.n, "truncation level (comma list)");
  bound->add_option("--d", bound_args.d, "tail parameter (comma list)");
  bound->add_option("--m", bound_args.m, "block index (comma list)");
  bound->add_option("--T", bound_args.T, "horizon (comma list)");
  bound->add_option("--format", bound_args.format, "csv or jsonl");

  SupArgs sup_args;
  auto* sup = app.add_subcommand("sup", "Exact supremum for one path");
  sup->add_option("--seed", sup_args.seed, "Master seed");
  sup->add_option("--trial", sup_args.trial, "Trial index");
  sup->add_option("--level", sup_args.level, "Truncation level n");
  sup->add_option("--delta", sup_args.delta, "Band width (2^-k accepted)");
  sup->add_option("--kind", sup_args.kind,
                  "gap-global, fixed-global, gap-global-corrected, "
                  "local-plain, local-corrected or uniform");
  sup->add_option("--eps", sup_args.eps, "epsilon for corrected kinds");
  sup->add_option("--block", sup_args.block_m,
                  "Block statistic on [2^-m-1, 2^-m) at level m(eps)");
  sup->add_option("--oracle", sup_args.oracle, "Grid oracle resolution");
  sup->add_flag("--zero-coefficients", sup_args.zero,
                "Use an all-zero path (test hook)");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run a Monte Carlo experiment");
  verify->add_option("--config", verify_args.config_file,
                     "JSON file: one configuration or an array of them");
  verify->add_option("--theorem", verify_args.theorem, "Theorem id");
  verify->add_option("--eps", verify_args.eps, "epsilon");
  verify->add_option("--delta", verify_args.delta, "delta or delta0");
  verify->add_option("--n", verify_args.n, "Truncation level");
  verify->add_option("--N", verify_args.N, "Approximation level");
  verify->add_option("--m", verify_args.m, "Block index");
  verify->add_option("--d", verify_args.d, "Tail parameter");
  verify->add_option("--J", verify_args.J, "Last tail level");
  verify->add_option("--T", verify_args.T, "Horizon");
  verify->add_option("--trials", verify_args.trials, "Number of trials");
  verify->add_option("--seed", verify_args.seed, "Master seed");
  verify->add_option("--ci-level", verify_args.ci_level, "Confidence level");
  verify->add_option("--workers", verify_args.workers, "Worker threads");
  verify->add_option("--bound-scale", verify_args.bound_scale,
                     "Multiply the bound (test hook)");
  verify->add_flag("--zero-coefficients", verify_args.zero,
                   "Use all-zero paths (test hook)");
  verify->add_option("--out-dir", verify_args.out_dir,
                     "Output directory (default $LCBM_OUTPUT_DIR or .)");
  verify->add_option("--name", verify_args.name, "Output file stem");

  std::string audit_k = "1,2";
  std::string audit_eps = "1";
  std::string audit_format = "csv";
  auto* audit = app.add_subcommand("audit", "Audit the series constants");
  audit->add_option("--k", audit_k, "k values (comma list of 1, 2)");
  audit->add_option("--eps", audit_eps, "epsilon values (comma list)");
  audit->add_option("--format", audit_format, "csv or jsonl");

  CompareArgs cmp;
  auto* compare = app.add_subcommand(
      "oracle-compare", "Exact suprema against the grid oracle");
  compare->add_option("--seed-begin", cmp.seed_begin, "First seed");
  compare->add_option("--seeds", cmp.seeds, "Number of seeds");
  compare->add_option("--levels", cmp.levels, "Levels (comma list)");
  compare->add_option("--deltas", cmp.deltas, "Band widths (comma list)");
  compare->add_option("--kinds", cmp.kinds, "Global kinds (comma list)");
  compare->add_option("--resolution", cmp.resolution, "Grid resolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*bound) return cmd_bound(bound_args, out);
    if (*sup) return cmd_sup(sup_args, out);
    if (*verify) {
      verify_args.command_line.assign(argv, argv + argc);
      return cmd_verify(verify_args, out, err);
    }
    if (*audit) return cmd_audit(audit_k, audit_eps, audit_format, out);
    if (*compare) return cmd_oracle_compare(cmp, out, err);
  } catch (const UsageError& e) {
    const auto active = app.get_subcommands();
    err << "error: " << e.what() << '\n'
        << (active.empty() ? app.help() : active.front()->help()) << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace lcbm
