#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "mutagame/scenario_io.hpp"

namespace testing {

// Two-player prisoner's dilemma written as a scenario document. Every state
// carries the same table, so the kernel only controls when the rules "move".
struct PdScenario {
  std::string name = "pd";
  double temptation = 5, reward = 3, punishment = 1, sucker = 0;
  std::size_t states = 1;
  std::vector<std::string> strategies{"GrimTrigger", "GrimTrigger"};
  double delta = 0.9;
  double risk_aversion = 0.0;
  std::size_t horizon = 100;
  std::size_t replicas = 1;
  std::uint64_t seed = 1;
  bool trigger_on_mutation = true;
  std::vector<std::vector<double>> kernel;  // identity when empty
  std::string extra;                        // appended verbatim

  std::string yaml() const {
    std::ostringstream y;
    y << std::setprecision(17);
    y << "schema_version: 1\nname: " << name << "\nhorizon: " << horizon << "\nreplica_count: " << replicas
      << "\nmaster_seed: " << seed << "\ninitial_state: 0\ntrigger_on_mutation: "
      << (trigger_on_mutation ? "true" : "false") << "\ndiscount:\n  delta: " << delta
      << "\n  risk_aversion: " << risk_aversion << "\ngame:\n  states:\n";
    // n-player extension: payoffs interpolate linearly in the number of cooperating opponents
    const std::size_t n = strategies.size();
    auto series = [&](double none, double all) {
      std::ostringstream r;
      r << std::setprecision(17) << '[';
      for (std::size_t k = 0; k < n; ++k) {
        const double w = n == 1 ? 1.0 : static_cast<double>(k) / static_cast<double>(n - 1);
        r << (k ? ", " : "") << none + (all - none) * w;
      }
      r << ']';
      return r.str();
    };
    for (std::size_t s = 0; s < states; ++s) {
      y << "    - label: s" << s << "\n      symmetric:\n        cooperate: " << series(sucker, reward)
        << "\n        defect: " << series(punishment, temptation) << "\n";
    }
    y << "miners:\n";
    const double share = 1.0 / static_cast<double>(strategies.size());
    for (std::size_t i = 0; i < strategies.size(); ++i) {
      const double a = i + 1 == strategies.size() ? 1.0 - share * static_cast<double>(i) : share;
      y << "  - {share: " << a << ", strategy: " << strategies[i] << "}\n";
    }
    y << "kernel:\n";
    for (std::size_t p = 0; p < states; ++p) {
      y << "  - [";
      for (std::size_t q = 0; q < states; ++q) {
        const double v = kernel.empty() ? (p == q ? 1.0 : 0.0) : kernel[p][q];
        y << (q ? ", " : "") << v;
      }
      y << "]\n";
    }
    y << extra;
    return y.str();
  }

  mutagame::Scenario build(const std::vector<mutagame::Override>& overrides = {}) const {
    return mutagame::scenario_from_document(mutagame::parse_document(yaml()), overrides);
  }
};

// Exhaustive pure-equilibrium check written without any bit tricks: profiles
// are vectors of 0 (cooperate) / 1 (defect) produced by an odometer, and the
// result is a set of strings such as "CD".
inline std::set<std::string> brute_force_nash(std::size_t n,
                                              const std::function<double(std::size_t, const std::vector<int>&)>& u) {
  std::set<std::string> out;
  std::vector<int> a(n, 0);
  while (true) {
    bool stable = true;
    for (std::size_t i = 0; i < n && stable; ++i) {
      std::vector<int> b = a;
      b[i] = 1 - b[i];
      if (u(i, b) > u(i, a)) stable = false;
    }
    if (stable) {
      std::string s;
      for (int x : a) s += x ? 'D' : 'C';
      out.insert(s);
    }
    std::size_t k = n;
    while (k > 0 && a[k - 1] == 1) a[--k] = 0;
    if (k == 0) break;
    a[k - 1] = 1;
  }
  return out;
}

inline double row_entropy(const std::vector<double>& row) {
  double h = 0.0;
  for (double p : row) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

// Random row-stochastic matrix with strictly positive entries.
inline std::vector<std::vector<double>> random_kernel(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<std::vector<double>> rows(k, std::vector<double>(k));
  for (auto& row : rows) {
    double sum = 0.0;
    for (auto& x : row) sum += (x = u(rng));
    for (auto& x : row) x /= sum;
    double acc = 0.0;
    for (std::size_t q = 0; q + 1 < k; ++q) acc += row[q];
    row[k - 1] = 1.0 - acc;
  }
  return rows;
}

}  // namespace testing
