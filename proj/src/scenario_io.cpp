#include "mutagame/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

#include <yaml-cpp/yaml.h>

#include "mutagame/errors.hpp"

namespace mutagame {

Override parse_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override '" + std::string(assignment) + "' must have the form key=value");
  }
  return {std::string(assignment.substr(0, eq)), std::string(assignment.substr(eq + 1))};
}

YAML::Node parse_document(std::string_view text) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw IoError("parse error at line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
}

YAML::Node load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

namespace {

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= path.size()) {
    const auto dot = path.find('.', start);
    const auto end = dot == std::string_view::npos ? path.size() : dot;
    out.emplace_back(path.substr(start, end - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return out;
}

std::optional<std::size_t> as_index(const std::string& seg) {
  std::size_t value = 0;
  const auto res = std::from_chars(seg.data(), seg.data() + seg.size(), value);
  if (res.ec != std::errc{} || res.ptr != seg.data() + seg.size()) return std::nullopt;
  return value;
}

// Returns the node at path (an invalid/undefined node if any step is missing).
YAML::Node lookup(const YAML::Node& root, const std::vector<std::string>& segs) {
  YAML::Node cur;
  cur.reset(root);
  for (const auto& seg : segs) {
    if (!cur || cur.IsNull() || cur.IsScalar()) return YAML::Node(YAML::NodeType::Undefined);
    if (cur.IsSequence()) {
      auto idx = as_index(seg);
      if (!idx || *idx >= cur.size()) return YAML::Node(YAML::NodeType::Undefined);
      cur.reset(std::as_const(cur)[*idx]);
    } else {
      if (!std::as_const(cur)[seg]) return YAML::Node(YAML::NodeType::Undefined);
      cur.reset(std::as_const(cur)[seg]);
    }
  }
  return cur;
}

void assign_path(YAML::Node node, std::span<const std::string> segs, const std::string& value,
                 const std::string& full) {
  const std::string& seg = segs.front();
  if (node.IsSequence()) {
    auto idx = as_index(seg);
    if (!idx || *idx >= node.size()) throw ConfigError("override " + full + ": no element '" + seg + "'");
    if (segs.size() == 1) {
      node[*idx] = value;
    } else {
      assign_path(node[*idx], segs.subspan(1), value, full);
    }
    return;
  }
  if (node.IsScalar()) throw ConfigError("override " + full + ": '" + seg + "' is below a scalar");
  if (segs.size() == 1) {
    node[seg] = value;
  } else {
    if (!node[seg]) node[seg] = YAML::Node(YAML::NodeType::Map);
    assign_path(node[seg], segs.subspan(1), value, full);
  }
}

bool parses_as_double(const std::string& text) {
  try {
    YAML::Node n(text);
    (void)n.as<double>();
    return true;
  } catch (const YAML::Exception&) {
    return false;
  }
}

// Collects issues while walking the document so one pass reports everything.
class Reader {
 public:
  std::vector<std::string> issues;

  std::string at(const YAML::Node& node, const std::string& path) const {
    if (!node.IsDefined()) return path + ": ";
    const auto mark = node.Mark();
    if (mark.is_null() || mark.line < 0) return path + ": ";
    return "line " + std::to_string(mark.line + 1) + ": " + path + ": ";
  }

  void fail(const YAML::Node& node, const std::string& path, const std::string& msg) {
    issues.push_back(at(node, path) + msg);
  }

  bool expect_map(const YAML::Node& node, const std::string& path) {
    if (!node.IsMap()) {
      fail(node, path, "expected a mapping");
      return false;
    }
    return true;
  }

  void check_keys(const YAML::Node& map, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(kv.first, path.empty() ? key : path + "." + key, "unknown key");
      }
    }
  }

  template <typename T>
  std::optional<T> get(const YAML::Node& map, const std::string& key, const std::string& path, bool required) {
    const std::string full = path.empty() ? key : path + "." + key;
    const YAML::Node node = map[key];
    if (!node) {
      if (required) fail(map, full, "missing required key");
      return std::nullopt;
    }
    if (!node.IsScalar()) {
      fail(node, full, "expected a scalar");
      return std::nullopt;
    }
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, full, "cannot interpret '" + node.Scalar() + "' as " + type_name<T>());
      return std::nullopt;
    }
  }

  std::optional<std::vector<double>> numbers(const YAML::Node& node, const std::string& path) {
    if (!node || !node.IsSequence()) {
      fail(node, path, "expected a list of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    bool ok = true;
    for (std::size_t i = 0; i < node.size(); ++i) {
      try {
        out.push_back(node[i].as<double>());
      } catch (const YAML::Exception&) {
        fail(node[i], path + "." + std::to_string(i), "expected a number");
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return out;
  }

 private:
  template <typename T>
  static std::string type_name() {
    if constexpr (std::is_same_v<T, bool>) {
      return "a boolean";
    } else if constexpr (std::is_integral_v<T>) {
      return "an integer";
    } else if constexpr (std::is_floating_point_v<T>) {
      return "a number";
    } else {
      return "a string";
    }
  }
};

std::optional<StatePayoffs> read_state_payoffs(Reader& rd, const YAML::Node& st, const std::string& path,
                                               std::size_t n) {
  const bool has_sym = static_cast<bool>(st["symmetric"]);
  const bool has_prof = static_cast<bool>(st["profiles"]);
  if (has_sym == has_prof) {
    rd.fail(st, path, "give exactly one of 'symmetric' or 'profiles'");
    return std::nullopt;
  }
  if (has_sym) {
    const YAML::Node sym = st["symmetric"];
    if (!rd.expect_map(sym, path + ".symmetric")) return std::nullopt;
    rd.check_keys(sym, path + ".symmetric", {"cooperate", "defect"});
    auto coop = rd.numbers(sym["cooperate"], path + ".symmetric.cooperate");
    auto defect = rd.numbers(sym["defect"], path + ".symmetric.defect");
    if (!coop || !defect) return std::nullopt;
    if (coop->size() != n || defect->size() != n) {
      rd.fail(sym, path + ".symmetric",
              "needs " + std::to_string(n) + " entries per action (0.." + std::to_string(n - 1) +
                  " cooperating opponents)");
      return std::nullopt;
    }
    return SymmetricPayoffs{std::move(*coop), std::move(*defect)};
  }
  const YAML::Node prof = st["profiles"];
  if (!prof.IsSequence()) {
    rd.fail(prof, path + ".profiles", "expected a list of {actions, payoffs}");
    return std::nullopt;
  }
  if (n > kMaxDenseMiners) {
    rd.fail(prof, path + ".profiles", "explicit profiles support at most 16 miners; use 'symmetric'");
    return std::nullopt;
  }
  const std::size_t count = std::size_t{1} << n;
  DensePayoffs dense;
  dense.rows.assign(count, {});
  std::vector<bool> seen(count, false);
  bool ok = true;
  for (std::size_t i = 0; i < prof.size(); ++i) {
    const std::string ppath = path + ".profiles." + std::to_string(i);
    const YAML::Node entry = prof[i];
    if (!rd.expect_map(entry, ppath)) {
      ok = false;
      continue;
    }
    rd.check_keys(entry, ppath, {"actions", "payoffs"});
    auto actions = rd.get<std::string>(entry, "actions", ppath, true);
    auto payoffs = rd.numbers(entry["payoffs"], ppath + ".payoffs");
    if (!actions || !payoffs) {
      ok = false;
      continue;
    }
    JointAction profile;
    try {
      profile = parse_profile(*actions);
    } catch (const ConfigError& e) {
      rd.fail(entry["actions"], ppath + ".actions", e.what());
      ok = false;
      continue;
    }
    if (profile.size() != n || payoffs->size() != n) {
      rd.fail(entry, ppath, "needs " + std::to_string(n) + " actions and " + std::to_string(n) + " payoffs");
      ok = false;
      continue;
    }
    const auto mask = profile_mask(profile);
    if (seen[mask]) {
      rd.fail(entry, ppath, "duplicate profile " + *actions);
      ok = false;
      continue;
    }
    seen[mask] = true;
    dense.rows[mask] = std::move(*payoffs);
  }
  for (std::size_t mask = 0; mask < count && ok; ++mask) {
    if (!seen[mask]) {
      rd.fail(prof, path + ".profiles", "missing profile " + to_string(profile_from_mask(mask, n)));
      ok = false;
    }
  }
  if (!ok) return std::nullopt;
  return dense;
}

}  // namespace

bool is_sweepable(const YAML::Node& document, std::string_view path) {
  if (path == "kernel.epsilon") return true;
  const YAML::Node node = lookup(document, split_path(path));
  return node && node.IsScalar() && parses_as_double(node.Scalar());
}

Scenario scenario_from_document(const YAML::Node& document, const std::vector<Override>& overrides) {
  YAML::Node doc = YAML::Clone(document);
  Reader rd;
  std::optional<double> epsilon_override;
  if (!doc.IsMap()) throw ValidationError({"scenario document must be a mapping"});
  for (const auto& [key, value] : overrides) {
    try {
      if (key == "kernel.epsilon") {
        YAML::Node v(value);
        epsilon_override = v.as<double>();
        continue;
      }
      const auto segs = split_path(key);
      if (std::any_of(segs.begin(), segs.end(), [](const std::string& s) { return s.empty(); })) {
        throw ConfigError("override " + key + ": empty path segment");
      }
      assign_path(doc, segs, value, key);
    } catch (const YAML::Exception&) {
      rd.issues.push_back("override " + key + ": value '" + value + "' is not a number");
    } catch (const ConfigError& e) {
      rd.issues.emplace_back(e.what());
    }
  }

  rd.check_keys(doc, "", {"schema_version", "name", "horizon", "replica_count", "master_seed", "initial_state",
                          "trigger_on_mutation", "post_mutation_value", "spiral_threshold", "discount", "noise",
                          "theta", "game", "miners", "kernel", "meta_model", "investment"});

  const auto version = rd.get<int>(doc, "schema_version", "", true);
  if (version && *version != kSchemaVersion) {
    rd.fail(doc["schema_version"], "schema_version",
            "unsupported version " + std::to_string(*version) + " (expected " + std::to_string(kSchemaVersion) + ")");
  }
  const auto name = rd.get<std::string>(doc, "name", "", false);
  const auto horizon = rd.get<long long>(doc, "horizon", "", false);
  const auto replicas = rd.get<long long>(doc, "replica_count", "", true);
  const auto seed = rd.get<std::uint64_t>(doc, "master_seed", "", true);
  const auto initial = rd.get<long long>(doc, "initial_state", "", false);
  const auto trigger = rd.get<bool>(doc, "trigger_on_mutation", "", false);
  const auto post_value = rd.get<double>(doc, "post_mutation_value", "", false);
  const auto spiral = rd.get<double>(doc, "spiral_threshold", "", false);

  if (horizon && *horizon < 1) rd.fail(doc["horizon"], "horizon", "must be at least 1");
  if (replicas && *replicas < 1) rd.fail(doc["replica_count"], "replica_count", "must be at least 1");
  if (initial && *initial < 0) rd.fail(doc["initial_state"], "initial_state", "must be nonnegative");

  // discount
  std::optional<DiscountFactor> delta;
  std::optional<RiskAversion> aversion;
  if (const YAML::Node d = doc["discount"]; !d) {
    rd.fail(doc, "discount", "missing required section");
  } else if (rd.expect_map(d, "discount")) {
    rd.check_keys(d, "discount", {"delta", "risk_aversion"});
    if (auto v = rd.get<double>(d, "delta", "discount", true)) {
      try {
        delta.emplace(*v);
      } catch (const ConfigError& e) {
        rd.fail(d["delta"], "discount.delta", e.what());
      }
    }
    try {
      aversion.emplace(rd.get<double>(d, "risk_aversion", "discount", false).value_or(0.0));
    } catch (const ConfigError& e) {
      rd.fail(d["risk_aversion"], "discount.risk_aversion", e.what());
    }
  }

  // noise
  std::optional<NoisePath> noise;
  if (const YAML::Node nz = doc["noise"]; nz && rd.expect_map(nz, "noise")) {
    rd.check_keys(nz, "noise", {"rho", "segments"});
    const auto rho = rd.get<double>(nz, "rho", "noise", true);
    std::vector<NoiseSegment> segments;
    bool ok = static_cast<bool>(rho);
    if (const YAML::Node segs = nz["segments"]; segs) {
      if (!segs.IsSequence()) {
        rd.fail(segs, "noise.segments", "expected a list of {start, value}");
        ok = false;
      } else {
        for (std::size_t i = 0; i < segs.size(); ++i) {
          const std::string p = "noise.segments." + std::to_string(i);
          if (!rd.expect_map(segs[i], p)) {
            ok = false;
            continue;
          }
          rd.check_keys(segs[i], p, {"start", "value"});
          const auto start = rd.get<long long>(segs[i], "start", p, true);
          const auto value = rd.get<double>(segs[i], "value", p, true);
          if (!start || !value || *start < 0) {
            if (start && *start < 0) rd.fail(segs[i], p + ".start", "must be nonnegative");
            ok = false;
            continue;
          }
          segments.push_back(NoiseSegment{static_cast<std::size_t>(*start), *value});
        }
      }
    }
    if (ok) {
      try {
        noise.emplace(*rho, std::move(segments));
      } catch (const ConfigError& e) {
        rd.fail(nz, "noise", e.what());
      }
    }
  }

  // theta
  std::optional<ThetaProcess> theta;
  if (const YAML::Node th = doc["theta"]; th && rd.expect_map(th, "theta")) {
    rd.check_keys(th, "theta", {"mean", "variance", "clamp"});
    const auto mean = rd.get<double>(th, "mean", "theta", true);
    const auto var = rd.get<double>(th, "variance", "theta", true);
    const auto clamp = rd.get<bool>(th, "clamp", "theta", false);
    if (mean && var) {
      ThetaProcess tp{*mean, *var, clamp.value_or(true)};
      try {
        tp.validate();
        theta = tp;
      } catch (const ConfigError& e) {
        rd.fail(th, "theta", e.what());
      }
    }
  }

  // miners
  std::vector<MinerConfig> miners;
  const YAML::Node ms = doc["miners"];
  if (!ms || !ms.IsSequence() || ms.size() == 0) {
    rd.fail(ms ? ms : doc, "miners", "expected a nonempty list of miners");
  } else {
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::string p = "miners." + std::to_string(i);
      if (!rd.expect_map(ms[i], p)) continue;
      rd.check_keys(ms[i], p, {"share", "strategy", "meta_budget", "preferred_state"});
      const auto share = rd.get<double>(ms[i], "share", p, true);
      const auto strat = rd.get<std::string>(ms[i], "strategy", p, true);
      const auto budget = rd.get<double>(ms[i], "meta_budget", p, false);
      const auto preferred = rd.get<long long>(ms[i], "preferred_state", p, false);
      if (!share || !strat) continue;
      const auto tag = parse_strategy_tag(*strat);
      if (!tag) {
        rd.fail(ms[i]["strategy"], p + ".strategy", "unknown strategy '" + *strat + "'");
        continue;
      }
      if (*tag == StrategyTag::MetaInvestor) {
        if (!budget || !preferred) {
          rd.fail(ms[i], p, "MetaInvestor needs meta_budget and preferred_state");
          continue;
        }
        if (*preferred < 0) {
          rd.fail(ms[i]["preferred_state"], p + ".preferred_state", "must be nonnegative");
          continue;
        }
        try {
          miners.push_back(MinerConfig{*share, Strategy::meta_investor(*budget, static_cast<StateId>(*preferred))});
        } catch (const ConfigError& e) {
          rd.fail(ms[i]["meta_budget"], p + ".meta_budget", e.what());
        }
      } else {
        if (budget || preferred) {
          rd.fail(ms[i], p, "meta_budget and preferred_state are only valid for MetaInvestor");
          continue;
        }
        miners.push_back(MinerConfig{*share, Strategy::of(*tag)});
      }
    }
    if (miners.size() == ms.size()) {
      std::vector<double> shares;
      for (const auto& m : miners) shares.push_back(m.share);
      if (auto problem = check_shares(shares)) rd.fail(ms, "miners", *problem);
    }
  }
  const std::size_t n = ms && ms.IsSequence() ? ms.size() : 0;

  // game
  std::optional<StageGameSpec> game;
  if (const YAML::Node g = doc["game"]; !g) {
    rd.fail(doc, "game", "missing required section");
  } else if (rd.expect_map(g, "game")) {
    rd.check_keys(g, "game", {"lottery_mode", "states"});
    const auto lottery = rd.get<bool>(g, "lottery_mode", "game", false);
    const YAML::Node states = g["states"];
    if (!states || !states.IsSequence() || states.size() == 0) {
      rd.fail(states ? states : g, "game.states", "expected a nonempty list of protocol states");
    } else if (n > 0) {
      std::vector<std::string> labels;
      std::vector<StatePayoffs> tables;
      bool ok = true;
      for (std::size_t s = 0; s < states.size(); ++s) {
        const std::string p = "game.states." + std::to_string(s);
        if (!rd.expect_map(states[s], p)) {
          ok = false;
          continue;
        }
        rd.check_keys(states[s], p, {"label", "symmetric", "profiles"});
        labels.push_back(rd.get<std::string>(states[s], "label", p, false).value_or("state" + std::to_string(s)));
        if (auto t = read_state_payoffs(rd, states[s], p, n)) {
          tables.push_back(std::move(*t));
        } else {
          ok = false;
        }
      }
      if (ok) {
        try {
          game.emplace(std::move(labels), StagePayoffTable(n, std::move(tables)), lottery.value_or(false));
        } catch (const std::exception& e) {
          rd.fail(g, "game", e.what());
        }
      }
    }
  }

  // kernel
  std::optional<TransitionKernel> kernel;
  if (const YAML::Node k = doc["kernel"]; !k || !k.IsSequence() || k.size() == 0) {
    rd.fail(k ? k : doc, "kernel", "expected a square list of probability rows");
  } else {
    std::vector<std::vector<double>> rows;
    bool ok = true;
    for (std::size_t r = 0; r < k.size(); ++r) {
      if (auto row = rd.numbers(k[r], "kernel." + std::to_string(r))) {
        rows.push_back(std::move(*row));
      } else {
        ok = false;
      }
    }
    if (ok) {
      const auto row_issues = check_kernel_rows(rows);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::string prefix = "kernel row " + std::to_string(r) + " ";
        for (const auto& issue : row_issues) {
          if (issue.rfind(prefix, 0) == 0) rd.fail(k[r], "kernel." + std::to_string(r), issue);
        }
      }
      if (row_issues.empty()) {
        kernel.emplace(std::move(rows));
        if (epsilon_override) {
          try {
            kernel = with_mutation_rate(*kernel, *epsilon_override);
          } catch (const ConfigError& e) {
            rd.issues.push_back(std::string("override kernel.epsilon: ") + e.what());
          }
        }
      }
    }
  }

  // meta model
  MetaModelConfig meta;
  if (const YAML::Node mm = doc["meta_model"]; mm && rd.expect_map(mm, "meta_model")) {
    rd.check_keys(mm, "meta_model", {"enabled", "influence_strength", "contest_exponent"});
    meta.enabled = rd.get<bool>(mm, "enabled", "meta_model", false).value_or(false);
    meta.influence_strength = rd.get<double>(mm, "influence_strength", "meta_model", false).value_or(0.0);
    meta.contest_exponent = rd.get<double>(mm, "contest_exponent", "meta_model", false).value_or(1.0);
  }

  // investment
  std::optional<InvestmentConfig> investment;
  if (const YAML::Node inv = doc["investment"]; inv && rd.expect_map(inv, "investment")) {
    rd.check_keys(inv, "investment", {"upfront_cost", "expected_returns", "max_horizon"});
    const auto cost = rd.get<double>(inv, "upfront_cost", "investment", true);
    auto returns = rd.numbers(inv["expected_returns"], "investment.expected_returns");
    const auto max_h = rd.get<long long>(inv, "max_horizon", "investment", false);
    if (max_h && *max_h < 1) rd.fail(inv["max_horizon"], "investment.max_horizon", "must be at least 1");
    if (cost && returns) {
      try {
        investment.emplace(InvestmentConfig{InvestmentPlan(*cost, std::move(*returns)),
                                            static_cast<std::size_t>(std::max<long long>(1, max_h.value_or(100)))});
      } catch (const ConfigError& e) {
        rd.fail(inv, "investment", e.what());
      }
    }
  }

  if (!rd.issues.empty() || !game || !kernel || !delta || !aversion) {
    if (rd.issues.empty()) rd.issues.emplace_back("scenario is incomplete");
    throw ValidationError(std::move(rd.issues));
  }

  std::size_t rounds = 0;
  if (horizon) {
    rounds = static_cast<std::size_t>(*horizon);
  } else {
    // sum over t = 0..T, so T + 1 rounds
    rounds = truncation_horizon(*delta, game->table().max_abs_payoff()) + 1;
  }

  Scenario sc{
      .name = name.value_or("scenario"),
      .miners = std::move(miners),
      .game = std::move(*game),
      .kernel = std::move(*kernel),
      .initial_state = static_cast<StateId>(initial.value_or(0)),
      .horizon = rounds,
      .discount = *delta,
      .noise = std::move(noise),
      .theta = theta,
      .risk_aversion = *aversion,
      .meta_model = meta,
      .replica_count = static_cast<std::size_t>(*replicas),
      .master_seed = *seed,
      .trigger_on_mutation = trigger.value_or(false),
      .post_mutation_value = post_value.value_or(0.0),
      .spiral_threshold = spiral.value_or(0.5),
      .investment = std::move(investment),
  };
  if (auto issues = validate_scenario(sc); !issues.empty()) throw ValidationError(std::move(issues));
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path, const std::vector<Override>& overrides) {
  return scenario_from_document(load_document(path), overrides);
}

namespace {

constexpr std::string_view kFixedRules = R"(# Preset fixed_rules: an immutable protocol (identity kernel, one state) with a
# grim-trigger population playing a prisoner's-dilemma stage game.
# All payoff constants below are illustrative, not measured values.
schema_version: 1
name: fixed_rules
horizon: 200
replica_count: 200
master_seed: 42
initial_state: 0
trigger_on_mutation: true
post_mutation_value: 0.0
spiral_threshold: 0.5
discount:
  delta: 0.9
  risk_aversion: 0.5
noise:
  rho: 0.05
  segments:
    - {start: 0, value: 0.0}
game:
  lottery_mode: false
  states:
    - label: immutable
      # payoff by own action, indexed by the number of cooperating opponents
      symmetric:
        cooperate: [0, 3]   # S, R
        defect: [1, 5]      # P, T
miners:
  - {share: 0.55, strategy: GrimTrigger}
  - {share: 0.45, strategy: GrimTrigger}
kernel:
  - [1.0]
meta_model:
  enabled: false
  influence_strength: 0.0
  contest_exponent: 1.0
investment:
  upfront_cost: 250
  expected_returns: [100, 100, 100, 100, 100]
  max_horizon: 100
)";

constexpr std::string_view kMutableCore = R"(# Preset mutable_core: three protocol states that the governance process can
# switch between (about 10% per round), a mixed miner population including one
# meta-game investor, institutional noise on the discount rate and Gaussian
# payoff perturbation.
# All payoff constants below are illustrative, not measured values.
schema_version: 1
name: mutable_core
horizon: 200
replica_count: 200
master_seed: 42
initial_state: 0
trigger_on_mutation: true
post_mutation_value: 0.0
spiral_threshold: 0.5
discount:
  delta: 0.75
  risk_aversion: 0.5
noise:
  rho: 0.05
  segments:
    - {start: 0, value: 0.0}
    - {start: 20, value: 0.1}
theta:
  mean: 1.0
  variance: 0.04
  clamp: true
game:
  lottery_mode: false
  states:
    - label: baseline
      symmetric:
        cooperate: [0, 1, 2, 3]
        defect: [1, 2.5, 4, 5]
    - label: restricted_capacity
      # lower cooperative payoffs
      symmetric:
        cooperate: [0, 0.6, 1.2, 1.8]
        defect: [1, 2.2, 3.4, 4.5]
    - label: fee_spike
      # higher temptation to defect
      symmetric:
        cooperate: [0, 1, 2, 3]
        defect: [1, 3.5, 6, 8]
miners:
  - {share: 0.35, strategy: GrimTrigger}
  - {share: 0.25, strategy: TitForTat}
  - {share: 0.25, strategy: MyopicBestResponse}
  - {share: 0.15, strategy: MetaInvestor, meta_budget: 0.3, preferred_state: 2}
kernel:
  - [0.9, 0.05, 0.05]
  - [0.05, 0.9, 0.05]
  - [0.05, 0.05, 0.9]
meta_model:
  enabled: true
  influence_strength: 0.5
  contest_exponent: 1.0
investment:
  upfront_cost: 250
  expected_returns: [100, 100, 100, 100, 100]
  max_horizon: 100
)";

}  // namespace

std::vector<std::string> preset_names() { return {"fixed_rules", "mutable_core"}; }

std::string preset_text(std::string_view name) {
  if (name == "fixed_rules") return std::string(kFixedRules);
  if (name == "mutable_core") return std::string(kMutableCore);
  throw ConfigError("unknown preset '" + std::string(name) + "' (available: fixed_rules, mutable_core)");
}

}  // namespace mutagame
