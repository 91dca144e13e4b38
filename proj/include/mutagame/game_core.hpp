#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mutagame/random.hpp"

namespace mutagame {

using MinerId = std::size_t;
using StateId = std::size_t;

// Tables and profile encodings use a 64-bit mask (bit i set = miner i defects).
inline constexpr std::size_t kMaxMiners = 64;
// Dense tables store 2^n rows per state.
inline constexpr std::size_t kMaxDenseMiners = 16;

enum class Action : std::uint8_t { Cooperate, Defect };

using JointAction = std::vector<Action>;

char to_char(Action a) noexcept;
std::string to_string(std::span<const Action> profile);
/// Parses "CDC"-style strings; throws ConfigError on other characters.
JointAction parse_profile(std::string_view text);

std::uint64_t profile_mask(std::span<const Action> profile);
JointAction profile_from_mask(std::uint64_t mask, std::size_t n);

enum class StrategyTag {
  Honest,
  Withhold,
  Collude,
  GrimTrigger,
  TitForTat,
  AlwaysDefect,
  MyopicBestResponse,
  MetaInvestor,
};

std::string_view to_string(StrategyTag tag) noexcept;
std::optional<StrategyTag> parse_strategy_tag(std::string_view name) noexcept;

struct MetaInvestment {
  double budget = 0.0;          // fraction of the miner's effort diverted to the meta-game
  StateId preferred_state = 0;  // protocol state the miner lobbies for
};

class Strategy {
 public:
  /// Any tag except MetaInvestor, which needs a budget.
  static Strategy of(StrategyTag tag);
  static Strategy meta_investor(double budget, StateId preferred_state);

  StrategyTag tag() const noexcept { return tag_; }
  const std::optional<MetaInvestment>& investment() const noexcept { return investment_; }

  bool operator==(const Strategy&) const = default;

 private:
  Strategy(StrategyTag tag, std::optional<MetaInvestment> inv) : tag_(tag), investment_(inv) {}

  StrategyTag tag_;
  std::optional<MetaInvestment> investment_;
};

/// Normalized hash-power shares; construction enforces |sum - 1| <= 1e-12.
class HashShares {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit HashShares(std::vector<double> alpha);

  std::span<const double> values() const noexcept { return alpha_; }
  std::size_t size() const noexcept { return alpha_.size(); }
  double operator[](MinerId i) const { return alpha_.at(i); }

 private:
  std::vector<double> alpha_;
};

/// Checks the share invariant without constructing; returns an explanation on failure.
std::optional<std::string> check_shares(std::span<const double> alpha);

/// Payoffs of one protocol state given explicitly for every joint profile.
struct DensePayoffs {
  // rows[mask][i] = payoff of miner i when the defectors are the set bits of mask
  std::vector<std::vector<double>> rows;
};

/// Anonymous game: a miner's payoff depends on its own action and on how many
/// opponents cooperate. cooperate[k] / defect[k] for k cooperating opponents.
struct SymmetricPayoffs {
  std::vector<double> cooperate;
  std::vector<double> defect;
};

using StatePayoffs = std::variant<DensePayoffs, SymmetricPayoffs>;

/// Per-protocol-state payoff tables over joint action profiles.
class StagePayoffTable {
 public:
  StagePayoffTable(std::size_t n, std::vector<StatePayoffs> states);

  std::size_t miner_count() const noexcept { return n_; }
  std::size_t state_count() const noexcept { return states_.size(); }
  const StatePayoffs& state(StateId s) const { return states_.at(s); }

  double payoff(StateId s, MinerId i, std::uint64_t defect_mask) const;
  double max_abs_payoff() const;

 private:
  std::size_t n_;
  std::vector<StatePayoffs> states_;
};

struct ProtocolState {
  StateId id = 0;
  std::string label;
};

/// The stage game G_P for every protocol state in the scenario.
class StageGameSpec {
 public:
  StageGameSpec(std::vector<std::string> state_labels, StagePayoffTable table,
                bool lottery_mode = false);

  std::size_t miner_count() const noexcept { return table_.miner_count(); }
  std::size_t state_count() const noexcept { return states_.size(); }
  const std::vector<ProtocolState>& states() const noexcept { return states_; }
  const StagePayoffTable& table() const noexcept { return table_; }
  bool lottery_mode() const noexcept { return lottery_mode_; }

 private:
  std::vector<ProtocolState> states_;
  StagePayoffTable table_;
  bool lottery_mode_;
};

std::vector<double> stage_payoffs(const StageGameSpec& spec, StateId state,
                                  std::span<const Action> profile);

/// Picks the block winner with probability alpha_i using exactly one uniform draw.
MinerId block_lottery(std::span<const double> shares, RandomStream& rng);

/// Observed history of play. Keeps the standing flags incrementally so a
/// round costs O(n) regardless of how long the replica has run.
class PlayHistory {
 public:
  explicit PlayHistory(std::size_t n);

  /// protocol_mutated: the state in force this round differs from the previous round's.
  void record(JointAction profile, bool protocol_mutated);

  std::size_t miner_count() const noexcept { return n_; }
  std::size_t rounds() const noexcept { return past_.size(); }
  const JointAction& at(std::size_t round) const { return past_.at(round); }
  const JointAction* previous() const noexcept { return past_.empty() ? nullptr : &past_.back(); }

  bool opponent_defected(MinerId i) const { return opponent_defected_.at(i); }
  bool mutation_observed() const noexcept { return mutation_observed_; }

 private:
  std::size_t n_;
  std::vector<JointAction> past_;
  std::vector<bool> opponent_defected_;
  bool mutation_observed_ = false;
};

/// Forward-looking information for MyopicBestResponse: when present, a miner on
/// the cooperative path weighs the one-shot gain against the discounted
/// cooperation premium under per-round mutation probability epsilon.
struct ContinuationContext {
  double delta = 0.9;
  double epsilon = 0.0;
  double post_mutation_value = 0.0;
};

struct ResolveContext {
  const StageGameSpec* game = nullptr;  // required by MyopicBestResponse
  StateId state = 0;
  bool trigger_on_mutation = false;
  std::optional<ContinuationContext> continuation;
};

JointAction resolve_actions(std::span<const Strategy> strategies, const PlayHistory& history,
                            std::size_t round, const ResolveContext& ctx);

}  // namespace mutagame
