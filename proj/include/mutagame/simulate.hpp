#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mutagame/discounting.hpp"
#include "mutagame/game_core.hpp"
#include "mutagame/protocol_dynamics.hpp"

namespace mutagame {

struct MinerConfig {
  double share = 0.0;
  Strategy strategy = Strategy::of(StrategyTag::Honest);
};

struct MetaModelConfig {
  bool enabled = false;
  double influence_strength = 0.0;  // beta in [0, 1]
  double contest_exponent = 1.0;    // Tullock exponent r > 0
};

struct InvestmentConfig {
  InvestmentPlan plan;
  std::size_t max_horizon = 100;  // search bound for the breakeven horizon
};

struct Scenario {
  std::string name;
  std::vector<MinerConfig> miners;
  StageGameSpec game;
  TransitionKernel kernel;
  StateId initial_state = 0;
  std::size_t horizon = 1;
  DiscountFactor discount{0.9};
  std::optional<NoisePath> noise;
  std::optional<ThetaProcess> theta;
  RiskAversion risk_aversion{0.0};
  MetaModelConfig meta_model;
  std::size_t replica_count = 1;
  std::uint64_t master_seed = 0;
  bool trigger_on_mutation = false;
  double post_mutation_value = 0.0;
  double spiral_threshold = 0.5;
  std::optional<InvestmentConfig> investment;

  std::vector<double> shares() const;
  std::vector<Strategy> strategies() const;
};

/// Every cross-component invariant violation; empty when the scenario is runnable.
std::vector<std::string> validate_scenario(const Scenario& scenario);

struct RoundRecord {
  std::size_t t = 0;
  StateId state = 0;
  std::optional<double> theta;  // raw draw, before clamping
  JointAction actions;
  std::vector<double> payoffs;
  std::vector<double> kernel_row;  // effective row used to draw the next state
  std::optional<MinerId> winner;   // lottery mode only
};

struct ReplicaTrace {
  std::size_t replica_index = 0;
  std::vector<RoundRecord> rounds;
  std::vector<double> discounted_utility;
  std::vector<double> risk_adjusted_utility;
  std::vector<double> endogenous_utility;  // under delta(t) when a noise path is set
  std::size_t mutation_count = 0;
  bool theta_clamped = true;
};

/// Payoff of miner i in one round given the recorded state, profile, theta and winner.
double realized_payoff(const Scenario& scenario, StateId state, std::span<const Action> profile,
                       std::optional<double> theta, std::optional<MinerId> winner, MinerId i);

ReplicaTrace run_replica(const Scenario& scenario, std::size_t replica_index);

struct MetaStake {
  double budget = 0.0;
  StateId preferred_state = 0;
  double share = 0.0;
};

/// Tullock contest over the next-state row: weights w_s proportional to
/// (sum of share*budget aimed at s)^r, blended in with lambda = beta * min(1, total effort).
std::vector<double> apply_meta_influence(std::span<const double> kernel_row,
                                         std::span<const MetaStake> investors,
                                         const MetaModelConfig& config);

struct SpiralReport {
  std::optional<std::size_t> onset_round;
  double final_cooperation_fraction = 1.0;
};

std::vector<double> cooperation_fractions(const ReplicaTrace& trace);

/// onset = first round from which the cooperating fraction stays below threshold.
SpiralReport detect_spiral(const ReplicaTrace& trace, double threshold = 0.5);

/// Rounds before the spiral onset, or the full horizon without one.
std::size_t cooperation_duration(const ReplicaTrace& trace, double threshold = 0.5);

struct SampleStats {
  double mean = 0.0;
  double stddev = 0.0;  // unbiased; 0 for a single replica
  double ci95 = 0.0;    // 1.96 * stddev / sqrt(count)
  double min = 0.0;
  double max = 0.0;
};

SampleStats summarize(std::span<const double> values);

struct BatchSummary {
  std::string scenario_name;
  std::size_t replica_count = 0;
  std::size_t horizon = 0;
  std::uint64_t master_seed = 0;
  std::vector<SampleStats> discounted_utility;      // per miner, across replicas
  std::vector<SampleStats> risk_adjusted_utility;   // per miner, across replicas
  std::vector<double> ensemble_risk_adjusted_utility;  // per miner, per-round samples pooled over replicas
  std::vector<SampleStats> endogenous_utility;      // empty when no noise path
  SampleStats mean_utility;                         // replica mean over miners
  SampleStats cooperation_duration;
  double spiral_frequency = 0.0;
  double spiral_frequency_ci95 = 0.0;
  SampleStats final_cooperation_fraction;
  SampleStats mutation_count;
  double round0_defection_rate = 0.0;  // replicas with any Defect at round 0
  double defection_free_rate = 0.0;    // replicas without a single Defect
};

struct BatchResult {
  BatchSummary summary;
  std::vector<ReplicaTrace> traces;  // ordered by replica index
};

/// Deterministic fold of the traces; independent of how they were produced.
BatchSummary summarize_batch(const Scenario& scenario, std::span<const ReplicaTrace> traces);

/// threads = 0 picks MUTAGAME_THREADS or the hardware concurrency.
BatchResult run_batch(const Scenario& scenario, unsigned threads = 0);

unsigned default_thread_count();

}  // namespace mutagame
