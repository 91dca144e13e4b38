#include "mutagame/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "mutagame/errors.hpp"

namespace mutagame {

std::vector<double> Scenario::shares() const {
  std::vector<double> out;
  out.reserve(miners.size());
  for (const auto& m : miners) out.push_back(m.share);
  return out;
}

std::vector<Strategy> Scenario::strategies() const {
  std::vector<Strategy> out;
  out.reserve(miners.size());
  for (const auto& m : miners) out.push_back(m.strategy);
  return out;
}

std::vector<std::string> validate_scenario(const Scenario& sc) {
  std::vector<std::string> issues;
  const std::size_t k = sc.kernel.size();
  const auto shares = sc.shares();
  if (auto problem = check_shares(shares)) issues.push_back(*problem);
  if (sc.miners.size() != sc.game.miner_count()) {
    issues.push_back("scenario has " + std::to_string(sc.miners.size()) + " miners but the payoff table has " +
                     std::to_string(sc.game.miner_count()));
  }
  if (sc.game.state_count() != k) {
    issues.push_back("game defines " + std::to_string(sc.game.state_count()) + " protocol states but the kernel has " +
                     std::to_string(k));
  }
  if (sc.initial_state >= k) issues.push_back("initial_state " + std::to_string(sc.initial_state) + " is not a kernel state");
  for (std::size_t i = 0; i < sc.miners.size(); ++i) {
    if (const auto& inv = sc.miners[i].strategy.investment()) {
      if (inv->preferred_state >= k) {
        issues.push_back("miner " + std::to_string(i) + " prefers unknown protocol state " +
                         std::to_string(inv->preferred_state));
      }
    }
  }
  if (sc.horizon < 1) issues.emplace_back("horizon must be at least 1");
  if (sc.replica_count < 1) issues.emplace_back("replica_count must be at least 1");
  if (!(sc.meta_model.influence_strength >= 0.0 && sc.meta_model.influence_strength <= 1.0)) {
    issues.emplace_back("meta_model.influence_strength must lie in [0, 1] to keep kernel rows stochastic");
  }
  if (!(sc.meta_model.contest_exponent > 0.0) || !std::isfinite(sc.meta_model.contest_exponent)) {
    issues.emplace_back("meta_model.contest_exponent must be positive");
  }
  if (!(sc.spiral_threshold > 0.0 && sc.spiral_threshold <= 1.0)) {
    issues.emplace_back("spiral_threshold must lie in (0, 1]");
  }
  if (!std::isfinite(sc.post_mutation_value)) issues.emplace_back("post_mutation_value must be finite");
  if (sc.theta) {
    try {
      sc.theta->validate();
    } catch (const ConfigError& e) {
      issues.emplace_back(e.what());
    }
  }
  return issues;
}

double realized_payoff(const Scenario& sc, StateId state, std::span<const Action> profile,
                       std::optional<double> theta, std::optional<MinerId> winner, MinerId i) {
  double value = sc.game.table().payoff(state, i, profile_mask(profile));
  if (theta && sc.theta) value *= sc.theta->scale(*theta);
  if (sc.game.lottery_mode()) value *= (winner && *winner == i) ? 1.0 : 0.0;
  if (const auto& inv = sc.miners[i].strategy.investment()) value *= 1.0 - inv->budget;
  return value;
}

std::vector<double> apply_meta_influence(std::span<const double> kernel_row,
                                         std::span<const MetaStake> investors,
                                         const MetaModelConfig& config) {
  std::vector<double> row(kernel_row.begin(), kernel_row.end());
  if (!config.enabled || config.influence_strength == 0.0 || investors.empty()) return row;

  std::vector<double> effort(row.size(), 0.0);
  double total = 0.0;
  for (const auto& inv : investors) {
    if (inv.preferred_state >= row.size()) throw ConfigError("meta investor prefers an unknown state");
    const double e = inv.share * inv.budget;
    effort[inv.preferred_state] += e;
    total += e;
  }
  if (!(total > 0.0)) return row;
  const double lambda = config.influence_strength * std::min(1.0, total);
  if (lambda == 0.0) return row;

  std::vector<double> weight(row.size(), 0.0);
  double weight_sum = 0.0;
  for (std::size_t s = 0; s < row.size(); ++s) {
    if (effort[s] > 0.0) {
      weight[s] = std::pow(effort[s], config.contest_exponent);
      weight_sum += weight[s];
    }
  }
  for (std::size_t s = 0; s < row.size(); ++s) {
    row[s] = (1.0 - lambda) * row[s] + lambda * (weight[s] / weight_sum);
  }
  return row;
}

ReplicaTrace run_replica(const Scenario& sc, std::size_t replica_index) {
  if (auto issues = validate_scenario(sc); !issues.empty()) throw ValidationError(std::move(issues));

  const std::size_t n = sc.miners.size();
  const auto strategies = sc.strategies();
  const auto shares = sc.shares();
  std::vector<MetaStake> stakes;
  for (const auto& m : sc.miners) {
    if (const auto& inv = m.strategy.investment()) stakes.push_back(MetaStake{inv->budget, inv->preferred_state, m.share});
  }

  RandomStream rng = RandomStream::for_replica(sc.master_seed, replica_index);
  PlayHistory history(n);
  ReplicaTrace trace;
  trace.replica_index = replica_index;
  trace.theta_clamped = sc.theta ? sc.theta->clamp : true;
  trace.rounds.reserve(sc.horizon);

  std::vector<std::vector<std::vector<double>>> samples(n);  // [miner][round] -> sample set
  for (auto& s : samples) s.reserve(sc.horizon);

  StateId state = sc.initial_state;
  const std::vector<double>* previous_row = nullptr;
  for (std::size_t t = 0; t < sc.horizon; ++t) {
    RoundRecord rec;
    rec.t = t;
    rec.state = state;
    // an absorbing row is an immutable rule set; lobbying cannot move it
    const auto base_row = sc.kernel.row(state);
    rec.kernel_row = base_row[state] == 1.0 ? std::vector<double>(base_row.begin(), base_row.end())
                                            : apply_meta_influence(base_row, stakes, sc.meta_model);

    ResolveContext ctx;
    ctx.game = &sc.game;
    ctx.state = state;
    ctx.trigger_on_mutation = sc.trigger_on_mutation;
    ctx.continuation = ContinuationContext{sc.discount.value(), 1.0 - rec.kernel_row[state], sc.post_mutation_value};
    rec.actions = resolve_actions(strategies, history, t, ctx);

    // fixed draw order: protocol step, theta, lottery
    const StateId next = sample_from_row(rec.kernel_row, rng);
    if (sc.theta) rec.theta = sample_theta(*sc.theta, rng);
    if (sc.game.lottery_mode()) rec.winner = block_lottery(shares, rng);

    rec.payoffs.resize(n);
    for (MinerId i = 0; i < n; ++i) {
      rec.payoffs[i] = realized_payoff(sc, state, rec.actions, rec.theta, rec.winner, i);
      std::vector<double> round_samples;
      if (previous_row == nullptr) {
        round_samples.push_back(rec.payoffs[i]);
      } else {
        for (StateId q = 0; q < previous_row->size(); ++q) {
          if ((*previous_row)[q] > 0.0) {
            round_samples.push_back(realized_payoff(sc, q, rec.actions, rec.theta, rec.winner, i));
          }
        }
      }
      samples[i].push_back(std::move(round_samples));
    }

    const bool mutated = t > 0 && state != trace.rounds.back().state;
    if (mutated) ++trace.mutation_count;
    history.record(rec.actions, mutated);
    trace.rounds.push_back(std::move(rec));
    previous_row = &trace.rounds.back().kernel_row;
    state = next;
  }

  std::vector<double> endogenous_path;
  if (sc.noise) endogenous_path = endogenous_discount_path(*sc.noise, sc.horizon - 1);
  std::vector<double> stream(sc.horizon);
  for (MinerId i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < sc.horizon; ++t) stream[t] = trace.rounds[t].payoffs[i];
    trace.discounted_utility.push_back(discounted_utility(stream, sc.discount));
    trace.risk_adjusted_utility.push_back(risk_adjusted_utility(samples[i], sc.discount, sc.risk_aversion));
    if (sc.noise) trace.endogenous_utility.push_back(discounted_utility(stream, endogenous_path));
  }
  return trace;
}

std::vector<double> cooperation_fractions(const ReplicaTrace& trace) {
  std::vector<double> out;
  out.reserve(trace.rounds.size());
  for (const auto& r : trace.rounds) {
    const auto coop = std::count(r.actions.begin(), r.actions.end(), Action::Cooperate);
    out.push_back(r.actions.empty() ? 1.0 : static_cast<double>(coop) / static_cast<double>(r.actions.size()));
  }
  return out;
}

SpiralReport detect_spiral(const ReplicaTrace& trace, double threshold) {
  const auto fractions = cooperation_fractions(trace);
  SpiralReport out;
  if (fractions.empty()) return out;
  out.final_cooperation_fraction = fractions.back();
  // walk back over the suffix that stays below the threshold
  std::size_t start = fractions.size();
  while (start > 0 && fractions[start - 1] < threshold) --start;
  if (start < fractions.size()) out.onset_round = start;
  return out;
}

std::size_t cooperation_duration(const ReplicaTrace& trace, double threshold) {
  const auto report = detect_spiral(trace, threshold);
  return report.onset_round.value_or(trace.rounds.size());
}

SampleStats summarize(std::span<const double> values) {
  SampleStats s;
  if (values.empty()) return s;
  s.mean = sample_mean(values);
  s.stddev = values.size() > 1 ? payoff_variance(values).sigma : 0.0;
  s.ci95 = 1.96 * s.stddev / std::sqrt(static_cast<double>(values.size()));
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  return s;
}

BatchSummary summarize_batch(const Scenario& sc, std::span<const ReplicaTrace> traces) {
  BatchSummary out;
  out.scenario_name = sc.name;
  out.replica_count = traces.size();
  out.horizon = sc.horizon;
  out.master_seed = sc.master_seed;
  if (traces.empty()) return out;
  const std::size_t n = sc.miners.size();
  const auto count = static_cast<double>(traces.size());

  std::vector<double> column(traces.size());
  auto per_replica = [&](auto&& get) {
    for (std::size_t r = 0; r < traces.size(); ++r) column[r] = get(traces[r]);
    return summarize(column);
  };

  for (MinerId i = 0; i < n; ++i) {
    out.discounted_utility.push_back(per_replica([i](const ReplicaTrace& tr) { return tr.discounted_utility[i]; }));
    out.risk_adjusted_utility.push_back(
        per_replica([i](const ReplicaTrace& tr) { return tr.risk_adjusted_utility[i]; }));
    if (sc.noise) {
      out.endogenous_utility.push_back(per_replica([i](const ReplicaTrace& tr) { return tr.endogenous_utility[i]; }));
    }
    std::vector<std::vector<double>> pooled(sc.horizon, std::vector<double>(traces.size()));
    for (std::size_t t = 0; t < sc.horizon; ++t) {
      for (std::size_t r = 0; r < traces.size(); ++r) pooled[t][r] = traces[r].rounds[t].payoffs[i];
    }
    out.ensemble_risk_adjusted_utility.push_back(risk_adjusted_utility(pooled, sc.discount, sc.risk_aversion));
  }
  out.mean_utility = per_replica([](const ReplicaTrace& tr) { return sample_mean(tr.discounted_utility); });
  out.cooperation_duration = per_replica([&](const ReplicaTrace& tr) {
    return static_cast<double>(cooperation_duration(tr, sc.spiral_threshold));
  });
  out.final_cooperation_fraction = per_replica([&](const ReplicaTrace& tr) {
    return detect_spiral(tr, sc.spiral_threshold).final_cooperation_fraction;
  });
  out.mutation_count = per_replica([](const ReplicaTrace& tr) { return static_cast<double>(tr.mutation_count); });

  std::size_t spirals = 0;
  std::size_t round0_defect = 0;
  std::size_t clean = 0;
  for (const auto& tr : traces) {
    if (detect_spiral(tr, sc.spiral_threshold).onset_round) ++spirals;
    const auto& first = tr.rounds.front().actions;
    if (std::find(first.begin(), first.end(), Action::Defect) != first.end()) ++round0_defect;
    const bool any_defect = std::any_of(tr.rounds.begin(), tr.rounds.end(), [](const RoundRecord& r) {
      return std::find(r.actions.begin(), r.actions.end(), Action::Defect) != r.actions.end();
    });
    if (!any_defect) ++clean;
  }
  out.spiral_frequency = static_cast<double>(spirals) / count;
  out.spiral_frequency_ci95 = 1.96 * std::sqrt(out.spiral_frequency * (1.0 - out.spiral_frequency) / count);
  out.round0_defection_rate = static_cast<double>(round0_defect) / count;
  out.defection_free_rate = static_cast<double>(clean) / count;
  return out;
}

unsigned default_thread_count() {
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MUTAGAME_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) threads = static_cast<unsigned>(cap);
  }
  return threads;
}

BatchResult run_batch(const Scenario& sc, unsigned threads) {
  if (auto issues = validate_scenario(sc); !issues.empty()) throw ValidationError(std::move(issues));
  if (threads == 0) threads = default_thread_count();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, sc.replica_count));

  BatchResult result;
  result.traces.resize(sc.replica_count);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::optional<std::pair<std::size_t, std::string>> first_error;

  auto worker = [&] {
    for (std::size_t r = next.fetch_add(1); r < sc.replica_count; r = next.fetch_add(1)) {
      try {
        result.traces[r] = run_replica(sc, r);
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (!first_error || r < first_error->first) first_error.emplace(r, e.what());
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (first_error) {
    throw ConfigError("replica " + std::to_string(first_error->first) + ": " + first_error->second);
  }
  result.summary = summarize_batch(sc, result.traces);
  return result;
}

}  // namespace mutagame
