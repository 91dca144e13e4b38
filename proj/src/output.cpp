#include "mutagame/output.hpp"

#include <charconv>
#include <ostream>
#include <system_error>

namespace mutagame {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  if (res.ec != std::errc{}) return "nan";
  return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& out, std::span<const ReplicaTrace> traces, std::size_t miner_count) {
  out << "replica,t,state,theta,actions";
  for (std::size_t i = 0; i < miner_count; ++i) out << ",payoff_" << i;
  out << '\n';
  for (const auto& tr : traces) {
    for (const auto& r : tr.rounds) {
      out << tr.replica_index << ',' << r.t << ',' << r.state << ',';
      if (r.theta) out << format_number(*r.theta);
      out << ',' << to_string(r.actions);
      for (double p : r.payoffs) out << ',' << format_number(p);
      out << '\n';
    }
  }
}

namespace {

nlohmann::ordered_json stats_json(const SampleStats& s) {
  nlohmann::ordered_json j;
  j["mean"] = s.mean;
  j["std"] = s.stddev;
  j["ci95"] = s.ci95;
  j["min"] = s.min;
  j["max"] = s.max;
  return j;
}

nlohmann::ordered_json stats_list(const std::vector<SampleStats>& v) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : v) arr.push_back(stats_json(s));
  return arr;
}

}  // namespace

nlohmann::ordered_json summary_to_json(const BatchSummary& s) {
  nlohmann::ordered_json j;
  j["scenario"] = s.scenario_name;
  j["replica_count"] = s.replica_count;
  j["horizon"] = s.horizon;
  j["master_seed"] = s.master_seed;
  j["discounted_utility"] = stats_list(s.discounted_utility);
  j["risk_adjusted_utility"] = stats_list(s.risk_adjusted_utility);
  j["ensemble_risk_adjusted_utility"] = s.ensemble_risk_adjusted_utility;
  if (!s.endogenous_utility.empty()) j["endogenous_utility"] = stats_list(s.endogenous_utility);
  j["mean_utility"] = stats_json(s.mean_utility);
  j["cooperation_duration"] = stats_json(s.cooperation_duration);
  j["spiral_frequency"] = s.spiral_frequency;
  j["spiral_frequency_ci95"] = s.spiral_frequency_ci95;
  j["final_cooperation_fraction"] = stats_json(s.final_cooperation_fraction);
  j["mutation_count"] = stats_json(s.mutation_count);
  j["round0_defection_rate"] = s.round0_defection_rate;
  j["defection_free_rate"] = s.defection_free_rate;
  return j;
}

}  // namespace mutagame
