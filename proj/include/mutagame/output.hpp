#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "json.hpp"
#include "mutagame/simulate.hpp"

namespace mutagame {

/// Shortest round-trip decimal form of a double.
std::string format_number(double value);

/// Column schema: replica,t,state,theta,actions,payoff_0..payoff_{n-1}.
/// theta is empty when the scenario has no theta process; actions is a C/D string.
void write_trace_csv(std::ostream& out, std::span<const ReplicaTrace> traces, std::size_t miner_count);

nlohmann::ordered_json summary_to_json(const BatchSummary& summary);

}  // namespace mutagame
