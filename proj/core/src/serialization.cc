#include "lcbm/serialization.h"

#include "lcbm/parse.h"

#include <set>
#include <stdexcept>
#include <string>

namespace lcbm {

using nlohmann::json;

json path_to_json(const HaarCoefficients& c) {
  json j;
  j["seed"] = c.key() ? json(c.key()->seed) : json(nullptr);
  j["trial"] = c.key() ? json(c.key()->trial) : json(nullptr);
  j["level_n"] = c.level_n();
  j["horizon_exponent"] = c.horizon_exponent();
  j["x0"] = c.x0();
  json levels = json::array();
  for (int lv = 0; lv <= c.level_n(); ++lv) {
    const auto values = c.level(lv);
    levels.push_back(json(std::vector<double>(values.begin(), values.end())));
  }
  j["levels"] = std::move(levels);
  return j;
}

HaarCoefficients path_from_json(const json& j) {
  try {
    const int n = j.at("level_n").get<int>();
    const int p = j.value("horizon_exponent", 0);
    HaarCoefficients c(n, p);
    c.set_x0(j.at("x0").get<double>());
    const json& levels = j.at("levels");
    if (!levels.is_array() || levels.size() != static_cast<std::size_t>(n + 1)) {
      throw std::invalid_argument("levels must hold level_n + 1 entries");
    }
    for (int lv = 0; lv <= n; ++lv) {
      const auto values = levels[lv].get<std::vector<double>>();
      auto dst = c.level(lv);
      if (values.size() != dst.size()) {
        throw std::invalid_argument("level " + std::to_string(lv) +
                                    " has the wrong number of entries");
      }
      std::copy(values.begin(), values.end(), dst.begin());
    }
    if (j.contains("seed") && !j["seed"].is_null()) {
      c.set_key(PathKey{j["seed"].get<std::uint64_t>(),
                        j.value("trial", std::uint64_t{0})});
    }
    return c;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed path record: ") +
                                e.what());
  }
}

json to_json(const BandSupremum& s) {
  json j{{"value", s.value},
         {"arg_t", s.arg_t},
         {"arg_s", s.arg_s},
         {"cell_k", s.cell_k},
         {"cell_l", s.cell_l},
         {"kind", std::string(denominator_name(s.kind.form))},
         {"attained", s.attained}};
  if (s.kind.epsilon) j["epsilon"] = *s.kind.epsilon;
  return j;
}

json to_json(const BoundEvaluation& b) {
  json params = json::object();
  if (b.params.epsilon) params["epsilon"] = *b.params.epsilon;
  if (b.params.delta) params["delta"] = *b.params.delta;
  if (b.params.n) params["n"] = *b.params.n;
  if (b.params.d) params["d"] = *b.params.d;
  if (b.params.m) params["m"] = *b.params.m;
  if (b.params.horizon_T) params["T"] = *b.params.horizon_T;
  return json{{"theorem", std::string(theorem_name(b.theorem))},
              {"params", params},
              {"raw", b.raw},
              {"clamped", b.clamped},
              {"vacuous", b.vacuous}};
}

json to_json(const SeriesAudit& a) {
  return json{{"k", a.k},
              {"epsilon", a.epsilon},
              {"terms", a.terms},
              {"direct_sum", a.direct_sum},
              {"remainder_bound", a.remainder_bound},
              {"claimed_bound", a.claimed_bound},
              {"consistent", a.consistent}};
}

json to_json(const ExperimentConfig& c) {
  return json{{"theorem", std::string(theorem_name(c.theorem))},
              {"epsilon", c.epsilon},
              {"delta", c.delta},
              {"level_n", c.level_n},
              {"approx_level_N", c.approx_level_N},
              {"m", c.m},
              {"d", c.d},
              {"horizon_J", c.horizon_J},
              {"T", c.horizon_T},
              {"trials", c.trials},
              {"seed", c.seed},
              {"ci_level", c.ci_level},
              {"workers", c.workers},
              {"zero_coefficients", c.zero_coefficients},
              {"bound_scale", c.bound_scale}};
}

namespace {

json ci_json(const ConfidenceInterval& ci) {
  return json{{"low", ci.low}, {"high", ci.high}};
}

}  // namespace

json to_json(const ExperimentReport& r) {
  json j{{"schema_version", kSchemaVersion},
         {"config", to_json(r.config)},
         {"path_level", r.path_level},
         {"horizon_exponent", r.horizon_exponent},
         {"threshold", r.threshold},
         {"trials", r.trials},
         {"exceedances", r.exceedances},
         {"rate", r.rate},
         {"ci_low", r.ci.low},
         {"ci_high", r.ci.high},
         {"bound", to_json(r.bound)},
         {"verdict", std::string(verdict_name(r.verdict))},
         {"wall_time", r.wall_time_seconds}};
  if (r.bracket) {
    const BracketReport& b = *r.bracket;
    j["bracket_low_exceedances"] = b.low_exceedances;
    j["bracket_high_exceedances"] = b.high_exceedances;
    j["bracket"] = json{{"low_ci", ci_json(b.low_ci)},
                        {"high_ci", ci_json(b.high_ci)},
                        {"error_budget", b.error_budget},
                        {"allowance", b.allowance},
                        {"printed_allowance", b.printed_allowance},
                        {"coverage_floor", b.coverage_floor},
                        {"full_coverage", b.full_coverage},
                        {"allowance_formula", b.allowance_formula}};
  } else {
    j["bracket_low_exceedances"] = nullptr;
    j["bracket_high_exceedances"] = nullptr;
  }
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be an object");
  static const std::set<std::string> known = {
      "theorem", "epsilon",   "delta",     "delta0", "level_n",
      "n",       "approx_level_N", "N",    "m",      "d",
      "horizon_J", "J",       "T",         "trials", "seed",
      "ci_level", "workers",  "zero_coefficients", "bound_scale"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  try {
    if (!j.contains("theorem")) {
      throw std::invalid_argument("config needs a theorem");
    }
    const auto theorem = parse_theorem(j.at("theorem").get<std::string>());
    if (!theorem) throw std::invalid_argument("unknown theorem");
    ExperimentConfig c = ExperimentConfig::defaults_for(*theorem);
    auto take = [&](const char* key, auto& field) {
      if (!j.contains(key)) return;
      using T = std::remove_reference_t<decltype(field)>;
      const json& v = j.at(key);
      if constexpr (std::is_same_v<T, double>) {
        if (v.is_string()) {
          field = parse_real(v.get<std::string>());
          return;
        }
      }
      field = v.get<T>();
    };
    take("epsilon", c.epsilon);
    take("delta", c.delta);
    take("delta0", c.delta);
    take("level_n", c.level_n);
    take("n", c.level_n);
    take("approx_level_N", c.approx_level_N);
    take("N", c.approx_level_N);
    take("m", c.m);
    take("d", c.d);
    take("horizon_J", c.horizon_J);
    take("J", c.horizon_J);
    take("T", c.horizon_T);
    take("trials", c.trials);
    take("seed", c.seed);
    take("ci_level", c.ci_level);
    take("workers", c.workers);
    take("zero_coefficients", c.zero_coefficients);
    take("bound_scale", c.bound_scale);
    return c;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
}

}  // namespace lcbm
