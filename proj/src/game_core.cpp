#include "mutagame/game_core.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <sstream>
#include <utility>

#include "mutagame/equilibrium.hpp"
#include "mutagame/errors.hpp"

namespace mutagame {

char to_char(Action a) noexcept { return a == Action::Cooperate ? 'C' : 'D'; }

std::string to_string(std::span<const Action> profile) {
  std::string out;
  out.reserve(profile.size());
  for (Action a : profile) out.push_back(to_char(a));
  return out;
}

JointAction parse_profile(std::string_view text) {
  JointAction out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == 'C' || c == 'c') {
      out.push_back(Action::Cooperate);
    } else if (c == 'D' || c == 'd') {
      out.push_back(Action::Defect);
    } else {
      throw ConfigError("action profile '" + std::string(text) + "' may only contain C and D");
    }
  }
  return out;
}

std::uint64_t profile_mask(std::span<const Action> profile) {
  if (profile.size() > kMaxMiners) throw ConfigError("profile longer than 64 miners");
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i] == Action::Defect) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

JointAction profile_from_mask(std::uint64_t mask, std::size_t n) {
  JointAction out(n, Action::Cooperate);
  for (std::size_t i = 0; i < n; ++i) {
    if ((mask >> i) & 1U) out[i] = Action::Defect;
  }
  return out;
}

namespace {

constexpr std::array<std::pair<StrategyTag, std::string_view>, 8> kStrategyNames{{
    {StrategyTag::Honest, "Honest"},
    {StrategyTag::Withhold, "Withhold"},
    {StrategyTag::Collude, "Collude"},
    {StrategyTag::GrimTrigger, "GrimTrigger"},
    {StrategyTag::TitForTat, "TitForTat"},
    {StrategyTag::AlwaysDefect, "AlwaysDefect"},
    {StrategyTag::MyopicBestResponse, "MyopicBestResponse"},
    {StrategyTag::MetaInvestor, "MetaInvestor"},
}};

}  // namespace

std::string_view to_string(StrategyTag tag) noexcept {
  for (const auto& [t, name] : kStrategyNames) {
    if (t == tag) return name;
  }
  return "?";
}

std::optional<StrategyTag> parse_strategy_tag(std::string_view name) noexcept {
  for (const auto& [t, n] : kStrategyNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

Strategy Strategy::of(StrategyTag tag) {
  if (tag == StrategyTag::MetaInvestor) {
    throw ConfigError("MetaInvestor requires a meta budget and preferred state");
  }
  return Strategy(tag, std::nullopt);
}

Strategy Strategy::meta_investor(double budget, StateId preferred_state) {
  if (!(budget >= 0.0 && budget <= 1.0)) {
    throw ConfigError("meta_budget must lie in [0, 1]");
  }
  return Strategy(StrategyTag::MetaInvestor, MetaInvestment{budget, preferred_state});
}

std::optional<std::string> check_shares(std::span<const double> alpha) {
  if (alpha.empty()) return "at least one miner is required";
  double sum = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (!std::isfinite(alpha[i]) || alpha[i] < 0.0 || alpha[i] > 1.0) {
      std::ostringstream os;
      os << "hash share of miner " << i << " is " << alpha[i] << ", must lie in [0, 1]";
      return os.str();
    }
    sum += alpha[i];
  }
  if (std::abs(sum - 1.0) > HashShares::kTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "hash shares sum to " << sum << "; shares must be normalized (|sum - 1| <= 1e-12)";
    return os.str();
  }
  return std::nullopt;
}

HashShares::HashShares(std::vector<double> alpha) : alpha_(std::move(alpha)) {
  if (auto problem = check_shares(alpha_)) throw ConfigError(*problem);
}

StagePayoffTable::StagePayoffTable(std::size_t n, std::vector<StatePayoffs> states)
    : n_(n), states_(std::move(states)) {
  if (n_ == 0) throw ConfigError("payoff table needs at least one miner");
  if (n_ > kMaxMiners) throw CapacityError("payoff tables support at most 64 miners");
  if (states_.empty()) throw ConfigError("payoff table needs at least one protocol state");
  for (std::size_t s = 0; s < states_.size(); ++s) {
    const std::string where = "payoff table for state " + std::to_string(s);
    if (const auto* dense = std::get_if<DensePayoffs>(&states_[s])) {
      if (n_ > kMaxDenseMiners) {
        throw CapacityError(where + ": explicit profiles support at most 16 miners; use the symmetric form");
      }
      if (dense->rows.size() != (std::size_t{1} << n_)) {
        throw ConfigError(where + " must define all " + std::to_string(std::size_t{1} << n_) +
                          " joint profiles");
      }
      for (const auto& row : dense->rows) {
        if (row.size() != n_) throw ConfigError(where + ": every profile needs one payoff per miner");
        for (double v : row) {
          if (!std::isfinite(v)) throw ConfigError(where + ": payoffs must be finite");
        }
      }
    } else {
      const auto& sym = std::get<SymmetricPayoffs>(states_[s]);
      if (sym.cooperate.size() != n_ || sym.defect.size() != n_) {
        throw ConfigError(where + ": symmetric form needs " + std::to_string(n_) +
                          " entries (0..n-1 cooperating opponents) per action");
      }
      for (double v : sym.cooperate) {
        if (!std::isfinite(v)) throw ConfigError(where + ": payoffs must be finite");
      }
      for (double v : sym.defect) {
        if (!std::isfinite(v)) throw ConfigError(where + ": payoffs must be finite");
      }
    }
  }
}

double StagePayoffTable::payoff(StateId s, MinerId i, std::uint64_t defect_mask) const {
  const auto& st = states_.at(s);
  if (const auto* dense = std::get_if<DensePayoffs>(&st)) {
    return dense->rows[defect_mask][i];
  }
  const auto& sym = std::get<SymmetricPayoffs>(st);
  const std::uint64_t own_bit = std::uint64_t{1} << i;
  const auto defecting_opponents = static_cast<std::size_t>(std::popcount(defect_mask & ~own_bit));
  const std::size_t cooperating_opponents = (n_ - 1) - defecting_opponents;
  return (defect_mask & own_bit) ? sym.defect[cooperating_opponents] : sym.cooperate[cooperating_opponents];
}

double StagePayoffTable::max_abs_payoff() const {
  double best = 0.0;
  for (const auto& st : states_) {
    if (const auto* dense = std::get_if<DensePayoffs>(&st)) {
      for (const auto& row : dense->rows) {
        for (double v : row) best = std::max(best, std::abs(v));
      }
    } else {
      const auto& sym = std::get<SymmetricPayoffs>(st);
      for (double v : sym.cooperate) best = std::max(best, std::abs(v));
      for (double v : sym.defect) best = std::max(best, std::abs(v));
    }
  }
  return best;
}

StageGameSpec::StageGameSpec(std::vector<std::string> state_labels, StagePayoffTable table,
                             bool lottery_mode)
    : table_(std::move(table)), lottery_mode_(lottery_mode) {
  if (state_labels.size() != table_.state_count()) {
    throw ConfigError("state label count does not match payoff table state count");
  }
  states_.reserve(state_labels.size());
  for (std::size_t s = 0; s < state_labels.size(); ++s) {
    states_.push_back(ProtocolState{s, std::move(state_labels[s])});
  }
}

std::vector<double> stage_payoffs(const StageGameSpec& spec, StateId state,
                                  std::span<const Action> profile) {
  if (state >= spec.state_count()) {
    throw ConfigError("unknown protocol state " + std::to_string(state));
  }
  if (profile.size() != spec.miner_count()) {
    throw ConfigError("profile has " + std::to_string(profile.size()) + " actions, game has " +
                      std::to_string(spec.miner_count()) + " miners");
  }
  const std::uint64_t mask = profile_mask(profile);
  std::vector<double> out(profile.size());
  for (MinerId i = 0; i < profile.size(); ++i) out[i] = spec.table().payoff(state, i, mask);
  return out;
}

MinerId block_lottery(std::span<const double> shares, RandomStream& rng) {
  if (auto problem = check_shares(shares)) throw ConfigError(*problem);
  const double u = rng.uniform();
  double cumulative = 0.0;
  MinerId last_positive = 0;
  for (MinerId i = 0; i < shares.size(); ++i) {
    if (shares[i] <= 0.0) continue;
    last_positive = i;
    cumulative += shares[i];
    if (u < cumulative) return i;
  }
  // rounding left u beyond the accumulated sum
  return last_positive;
}

PlayHistory::PlayHistory(std::size_t n) : n_(n), opponent_defected_(n, false) {}

void PlayHistory::record(JointAction profile, bool protocol_mutated) {
  if (profile.size() != n_) throw ConfigError("history profile length mismatch");
  std::size_t defectors = 0;
  for (Action a : profile) defectors += (a == Action::Defect);
  for (MinerId i = 0; i < n_; ++i) {
    const std::size_t others = defectors - (profile[i] == Action::Defect ? 1 : 0);
    if (others > 0) opponent_defected_[i] = true;
  }
  mutation_observed_ = mutation_observed_ || protocol_mutated;
  past_.push_back(std::move(profile));
}

namespace {

Action majority_of_opponents(const JointAction& prev, MinerId self) {
  std::size_t coop = 0;
  std::size_t defect = 0;
  for (MinerId j = 0; j < prev.size(); ++j) {
    if (j == self) continue;
    (prev[j] == Action::Cooperate ? coop : defect) += 1;
  }
  return defect > coop ? Action::Defect : Action::Cooperate;
}

Action myopic_choice(MinerId self, const JointAction* prev, std::size_t n, const ResolveContext& ctx) {
  if (ctx.game == nullptr) throw ConfigError("MyopicBestResponse needs the stage game");
  const StagePayoffTable& table = ctx.game->table();
  // opponents held at their previous actions; before round 0 they are assumed to cooperate
  std::uint64_t others = prev ? profile_mask(*prev) : 0;
  const std::uint64_t own_bit = std::uint64_t{1} << self;
  others &= ~own_bit;
  const double if_coop = table.payoff(ctx.state, self, others);
  const double if_defect = table.payoff(ctx.state, self, others | own_bit);

  if (ctx.continuation && others == 0) {
    // cooperative path intact: defect only if the one-shot gain beats the
    // discounted premium that grim punishment would destroy
    const std::uint64_t all_defect = n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    const double temptation_gain = if_defect - if_coop;
    if (temptation_gain <= 0.0) return Action::Cooperate;
    const double premium = if_coop - table.payoff(ctx.state, self, all_defect);
    if (premium <= 0.0) return Action::Defect;
    const auto& c = *ctx.continuation;
    const DiscountFactor delta(c.delta);
    const double continuation = effective_coop_value(premium, delta, c.epsilon, c.post_mutation_value);
    const auto verdict = cooperation_condition(c.delta, continuation / c.delta, temptation_gain);
    return verdict.holds ? Action::Cooperate : Action::Defect;
  }
  return if_defect > if_coop ? Action::Defect : Action::Cooperate;
}

}  // namespace

JointAction resolve_actions(std::span<const Strategy> strategies, const PlayHistory& history,
                            std::size_t round, const ResolveContext& ctx) {
  const std::size_t n = strategies.size();
  if (history.miner_count() != n) throw ConfigError("history miner count does not match strategies");
  if (history.rounds() != round) {
    throw ConfigError("history holds " + std::to_string(history.rounds()) + " rounds, expected " +
                      std::to_string(round));
  }
  const JointAction* prev = history.previous();
  JointAction out(n, Action::Cooperate);
  for (MinerId i = 0; i < n; ++i) {
    switch (strategies[i].tag()) {
      case StrategyTag::Honest:
      case StrategyTag::MetaInvestor:
        out[i] = Action::Cooperate;
        break;
      case StrategyTag::Withhold:
      case StrategyTag::Collude:
      case StrategyTag::AlwaysDefect:
        out[i] = Action::Defect;
        break;
      case StrategyTag::GrimTrigger: {
        const bool triggered = history.opponent_defected(i) ||
                               (ctx.trigger_on_mutation && history.mutation_observed());
        out[i] = triggered ? Action::Defect : Action::Cooperate;
        break;
      }
      case StrategyTag::TitForTat:
        out[i] = prev ? majority_of_opponents(*prev, i) : Action::Cooperate;
        break;
      case StrategyTag::MyopicBestResponse:
        out[i] = myopic_choice(i, prev, n, ctx);
        break;
    }
  }
  return out;
}

}  // namespace mutagame
