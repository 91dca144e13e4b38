#include "mutagame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "mutagame/errors.hpp"

namespace mutagame {

NormalFormGame::NormalFormGame(const StageGameSpec& spec, StateId state) : n_(spec.miner_count()) {
  if (state >= spec.state_count()) throw ConfigError("unknown protocol state " + std::to_string(state));
  auto table = std::make_shared<const StagePayoffTable>(spec.table());
  payoff_ = [table, state](MinerId i, std::uint64_t mask) { return table->payoff(state, i, mask); };
}

NormalFormGame::NormalFormGame(std::size_t n, std::function<double(MinerId, std::uint64_t)> payoff)
    : n_(n), payoff_(std::move(payoff)) {
  if (n_ == 0) throw ConfigError("game needs at least one player");
  if (n_ > kMaxMiners) throw CapacityError("games support at most 64 players");
}

double NormalFormGame::payoff(MinerId i, std::span<const Action> profile) const {
  if (profile.size() != n_) throw ConfigError("profile length does not match player count");
  return payoff_(i, profile_mask(profile));
}

std::vector<JointAction> pure_nash(const NormalFormGame& game) {
  const std::size_t n = game.player_count();
  if (n > kMaxNashPlayers) {
    throw CapacityError("pure Nash enumeration supports at most " + std::to_string(kMaxNashPlayers) +
                        " players, game has " + std::to_string(n));
  }
  std::vector<JointAction> out;
  const std::uint64_t count = std::uint64_t{1} << n;
  // code's most significant bit is player 0, so increasing codes are lexicographic
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((code >> (n - 1 - i)) & 1U) mask |= std::uint64_t{1} << i;
    }
    bool stable = true;
    for (MinerId i = 0; i < n && stable; ++i) {
      const std::uint64_t flipped = mask ^ (std::uint64_t{1} << i);
      if (game.payoff(i, flipped) > game.payoff(i, mask)) stable = false;
    }
    if (stable) out.push_back(profile_from_mask(mask, n));
  }
  return out;
}

GrimThreshold grim_trigger_threshold(const NormalFormGame& game, std::span<const Action> coop_profile,
                                     std::span<const Action> punish_profile) {
  const std::size_t n = game.player_count();
  if (coop_profile.size() != n || punish_profile.size() != n) {
    throw ConfigError("cooperative and punishment profiles must have one action per player");
  }
  const std::uint64_t coop = profile_mask(coop_profile);
  const std::uint64_t punish = profile_mask(punish_profile);
  if (coop == punish) throw ConfigError("cooperative and punishment profiles must differ");

  GrimThreshold out;
  out.per_player.reserve(n);
  bool any_threshold = false;
  for (MinerId i = 0; i < n; ++i) {
    PlayerThreshold p;
    p.reward = game.payoff(i, coop);
    p.temptation = game.payoff(i, coop ^ (std::uint64_t{1} << i));
    p.punishment = game.payoff(i, punish);
    if (p.reward <= p.punishment) {
      p.never_sustainable = true;
      p.delta_star = 1.0;
    } else if (p.temptation <= p.reward) {
      p.always_sustainable = true;
      p.delta_star = 0.0;
    } else {
      p.delta_star = (p.temptation - p.reward) / (p.temptation - p.punishment);
      any_threshold = true;
    }
    out.per_player.push_back(p);
  }
  const bool never = std::any_of(out.per_player.begin(), out.per_player.end(),
                                 [](const PlayerThreshold& p) { return p.never_sustainable; });
  if (never) {
    out.never_sustainable = true;
    out.delta_star = 1.0;
  } else if (!any_threshold) {
    out.always_sustainable = true;
    out.delta_star = 0.0;
  } else {
    for (const auto& p : out.per_player) out.delta_star = std::max(out.delta_star, p.delta_star);
  }
  return out;
}

GrimThreshold grim_trigger_threshold(const NormalFormGame& game) {
  const JointAction coop(game.player_count(), Action::Cooperate);
  const JointAction punish(game.player_count(), Action::Defect);
  return grim_trigger_threshold(game, coop, punish);
}

CooperationCondition cooperation_condition(double delta, double expected_coop, double defect_now) {
  return CooperationCondition{delta, expected_coop, defect_now, delta * expected_coop >= defect_now};
}

double effective_coop_value(double stage_coop_payoff, DiscountFactor delta, double epsilon,
                            double post_mutation_value) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ConfigError("mutation probability must lie in [0, 1]");
  const double d = delta.value();
  const double survive = d * (1.0 - epsilon);
  const double denom = 1.0 - survive;
  return stage_coop_payoff * survive / denom + post_mutation_value * d * epsilon / denom;
}

DeviationIncentive deviation_incentive(const NormalFormGame& game, MinerId player) {
  const std::size_t n = game.player_count();
  if (player >= n) throw ConfigError("player index out of range");
  const std::uint64_t all_defect = n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  const double reward = game.payoff(player, std::uint64_t{0});
  const double temptation = game.payoff(player, std::uint64_t{1} << player);
  const double punishment = game.payoff(player, all_defect);
  return DeviationIncentive{reward - punishment, temptation - reward};
}

CooperationCondition mutation_cooperation_condition(const DeviationIncentive& incentive,
                                                    DiscountFactor delta, double epsilon,
                                                    double post_mutation_value) {
  const double continuation = effective_coop_value(incentive.premium, delta, epsilon, post_mutation_value);
  return cooperation_condition(delta.value(), continuation / delta.value(), incentive.gain);
}

double critical_mutation_rate(const DeviationIncentive& incentive, DiscountFactor delta,
                              double post_mutation_value) {
  if (!mutation_cooperation_condition(incentive, delta, 0.0, post_mutation_value).holds) return 0.0;
  if (mutation_cooperation_condition(incentive, delta, 1.0, post_mutation_value).holds) return 1.0;
  // solve c*d(1-e) + p*d*e = g*(1 - d + d*e) for e
  const double c = incentive.premium;
  const double g = incentive.gain;
  const double d = delta.value();
  const double eps = (c * d + g * d - g) / (d * (c + g - post_mutation_value));
  return std::clamp(eps, 0.0, 1.0);
}

std::optional<MixedEquilibrium2x2> mixed_equilibrium_2x2(const NormalFormGame& game) {
  if (game.player_count() != 2) throw ConfigError("mixed 2x2 diagnostic needs exactly two players");
  // u(i, a0, a1) with masks: bit 0 = player 0 defects, bit 1 = player 1 defects
  auto u = [&](MinerId i, int a0, int a1) {
    return game.payoff(i, static_cast<std::uint64_t>(a0) | (static_cast<std::uint64_t>(a1) << 1));
  };
  // player 0's Cooperate weight p makes player 1 indifferent
  const double denom1 = u(1, 0, 0) - u(1, 1, 0) - u(1, 0, 1) + u(1, 1, 1);
  const double denom0 = u(0, 0, 0) - u(0, 0, 1) - u(0, 1, 0) + u(0, 1, 1);
  if (denom1 == 0.0 || denom0 == 0.0) return std::nullopt;
  const double p = (u(1, 1, 1) - u(1, 1, 0)) / denom1;
  const double q = (u(0, 1, 1) - u(0, 0, 1)) / denom0;
  if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) return std::nullopt;
  return MixedEquilibrium2x2{p, q};
}

}  // namespace mutagame
