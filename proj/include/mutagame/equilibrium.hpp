#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mutagame/discounting.hpp"
#include "mutagame/game_core.hpp"

namespace mutagame {

inline constexpr std::size_t kMaxNashPlayers = 20;

/// Binary-action normal-form game: the stage game frozen at one protocol state.
class NormalFormGame {
 public:
  NormalFormGame(const StageGameSpec& spec, StateId state);
  /// payoff(i, defect_mask) must be defined for all masks below 2^n.
  NormalFormGame(std::size_t n, std::function<double(MinerId, std::uint64_t)> payoff);

  std::size_t player_count() const noexcept { return n_; }
  double payoff(MinerId i, std::uint64_t defect_mask) const { return payoff_(i, defect_mask); }
  double payoff(MinerId i, std::span<const Action> profile) const;

 private:
  std::size_t n_;
  std::function<double(MinerId, std::uint64_t)> payoff_;
};

/// Profiles where no player gains strictly by a unilateral switch, ordered
/// lexicographically with C < D in player order. Throws CapacityError above 20 players.
std::vector<JointAction> pure_nash(const NormalFormGame& game);

struct PlayerThreshold {
  double temptation = 0.0;   // best unilateral deviation payoff from the cooperative profile
  double reward = 0.0;       // payoff on the cooperative profile
  double punishment = 0.0;   // payoff on the punishment profile
  double delta_star = 0.0;
  bool always_sustainable = false;
  bool never_sustainable = false;
};

struct GrimThreshold {
  double delta_star = 0.0;  // max over players; 1 when never sustainable
  bool always_sustainable = false;
  bool never_sustainable = false;
  std::vector<PlayerThreshold> per_player;
};

/// delta*_i = (T_i - R_i) / (T_i - P_i) for T_i > R_i > P_i.
GrimThreshold grim_trigger_threshold(const NormalFormGame& game, std::span<const Action> coop_profile,
                                     std::span<const Action> punish_profile);
GrimThreshold grim_trigger_threshold(const NormalFormGame& game);

struct CooperationCondition {
  double delta = 0.0;
  double expected_coop = 0.0;
  double defect_now = 0.0;
  bool holds = false;  // delta * expected_coop >= defect_now, ties cooperative
};

CooperationCondition cooperation_condition(double delta, double expected_coop, double defect_now);

/// Value at t of cooperating from t+1 on when the rules survive each round with
/// probability 1 - epsilon and a mutation collapses the continuation to
/// post_mutation_value:
///   stage * d(1-e)/(1-d(1-e)) + post * d*e/(1-d(1-e)).
double effective_coop_value(double stage_coop_payoff, DiscountFactor delta, double epsilon,
                            double post_mutation_value = 0.0);

/// Cooperation premium R - P and one-shot gain T - R of one player.
struct DeviationIncentive {
  double premium = 0.0;
  double gain = 0.0;
};

DeviationIncentive deviation_incentive(const NormalFormGame& game, MinerId player);

/// Cooperation test under mutation: E[pi^coop_{t+1}] = effective_coop_value(premium)/delta
/// against defect_now = gain.
CooperationCondition mutation_cooperation_condition(const DeviationIncentive& incentive,
                                                    DiscountFactor delta, double epsilon,
                                                    double post_mutation_value = 0.0);

/// Largest epsilon keeping the condition above (0 when even epsilon = 0 fails, 1 when
/// cooperation survives any rate).
double critical_mutation_rate(const DeviationIncentive& incentive, DiscountFactor delta,
                              double post_mutation_value = 0.0);

/// Fully mixed equilibrium of a two-player game, if one exists: probability
/// each player puts on Cooperate.
struct MixedEquilibrium2x2 {
  double p_cooperate_0 = 0.0;
  double p_cooperate_1 = 0.0;
};

std::optional<MixedEquilibrium2x2> mixed_equilibrium_2x2(const NormalFormGame& game);

}  // namespace mutagame
