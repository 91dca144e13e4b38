// Acceptance gate: one PASS/FAIL line per criterion.
// Usage: acceptance [criterion-number]   (no argument runs all of them)

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "mutagame/discounting.hpp"
#include "mutagame/equilibrium.hpp"
#include "mutagame/protocol_dynamics.hpp"
#include "mutagame/scenario_io.hpp"
#include "mutagame/simulate.hpp"
#include "support.hpp"

using namespace mutagame;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

std::size_t defections(const ReplicaTrace& tr) {
  std::size_t d = 0;
  for (const auto& r : tr.rounds) {
    for (auto a : r.actions) d += a == Action::Defect;
  }
  return d;
}

Outcome geometric_utility() {
  Outcome o;
  std::string summary;
  {
    const DiscountFactor d(0.9);
    const auto T = truncation_horizon(d, 1.0);
    const std::vector<double> stream(T + 1, 1.0);
    const double u = discounted_utility(stream, d);
    o.require(std::abs(u - 10.0) <= 1e-9, "pi=1, delta=0.9: got " + num(u));
    summary = "U = " + num(u) + " over " + std::to_string(T + 1) + " rounds; 6-point grid within bound";
  }
  for (double delta : {0.5, 0.9, 0.99}) {
    for (double pi : {1.0, 7.0}) {
      const DiscountFactor d(delta);
      const auto T = truncation_horizon(d, pi);
      const std::vector<double> stream(T + 1, pi);
      const double exact = pi / (1 - delta);
      const double gap = std::abs(discounted_utility(stream, d) - exact);
      const double bound = std::pow(delta, static_cast<double>(T + 1)) * std::abs(pi) / (1 - delta);
      // the remainder equals the bound exactly; leave room for rounding only
      o.require(gap <= bound * (1 + 1e-9) + 1e-12 * exact,
                "delta=" + num(delta) + " pi=" + num(pi) + ": gap " + num(gap) + " > bound " + num(bound));
      o.require(bound <= 1e-9 * (1 + 1e-9), "truncation bound above tolerance at delta=" + num(delta));
    }
  }
  if (o.pass) o.detail = summary;
  return o;
}

Outcome folk_threshold() {
  Outcome o;
  testing::PdScenario pd;
  pd.strategies = {"GrimTrigger", "MyopicBestResponse"};
  pd.horizon = 100;
  const auto game = NormalFormGame(pd.build().game, 0);
  const double star = grim_trigger_threshold(game).delta_star;
  o.require(std::abs(star - 0.5) <= 1e-12, "delta_star = " + num(star));
  std::size_t coop_runs = 0, defect_runs = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    pd.seed = seed;
    pd.delta = 0.55;
    const auto hi = run_replica(pd.build(), 0);
    const bool clean = defections(hi) == 0 && hi.rounds.size() == 100;
    coop_runs += clean;
    o.require(clean, "defection at delta=0.55, seed " + std::to_string(seed));
    pd.delta = 0.45;
    const auto lo = run_replica(pd.build(), 0);
    const bool deviates = lo.rounds[0].actions[1] == Action::Defect;
    defect_runs += deviates;
    o.require(deviates, "no round-0 defection at delta=0.45, seed " + std::to_string(seed));
  }
  if (o.pass) {
    o.detail = "delta* = " + num(star) + "; cooperative at 0.55 in " + std::to_string(coop_runs) +
               "/50 seeds, round-0 defection at 0.45 in " + std::to_string(defect_runs) + "/50";
  }
  return o;
}

Outcome defection_bridge() {
  Outcome o;
  const double v = effective_coop_value(1.0, DiscountFactor(0.9), 0.1, 0.0);
  o.require(std::abs(v - 4.263158) <= 1e-6, "effective_coop_value = " + num(v));

  // PD temptation: gain T-R = 2, premium R-P = 2, delta fixed at 0.9.
  // Cooperation holds iff c*x/(1-x) >= g with x = delta*(1-eps), i.e. eps <= 1 - g/(delta*(c+g)).
  const double delta = 0.9, gain = 2.0, premium = 2.0;
  const double eps_star = 1.0 - gain / (delta * (premium + gain));
  const DeviationIncentive inc{premium, gain};
  const double step = 0.005;
  std::optional<double> flip;
  bool previous = true;
  for (int k = 0; k <= 200; ++k) {
    const double eps = k * step;
    const bool holds = mutation_cooperation_condition(inc, DiscountFactor(delta), eps).holds;
    if (k == 0) o.require(holds, "condition fails at eps = 0");
    if (!holds && previous && !flip) flip = eps;
    o.require(!(holds && !previous), "verdict returns to hold at eps = " + num(eps));
    previous = holds;
  }
  o.require(flip.has_value(), "verdict never flips on the grid");
  if (flip) {
    o.require(*flip > eps_star && *flip - eps_star <= step,
              "flip at " + num(*flip) + " vs eps* = " + num(eps_star));
  }
  const double lib = critical_mutation_rate(inc, DiscountFactor(delta));
  o.require(std::abs(lib - eps_star) <= 1e-12, "critical_mutation_rate = " + num(lib));
  if (o.pass) {
    o.detail = "value " + num(v) + "; eps* = " + num(eps_star) + ", first failing grid point " + num(*flip);
  }
  return o;
}

Outcome mutation_monotonicity() {
  Outcome o;
  testing::PdScenario pd;
  pd.states = 2;
  pd.delta = 0.9;
  pd.trigger_on_mutation = true;
  pd.replicas = 200;
  pd.horizon = 200;
  pd.seed = 42;
  std::vector<BatchSummary> s;
  for (const char* eps : {"0", "0.05", "0.2"}) s.push_back(run_batch(pd.build({{"kernel.epsilon", eps}})).summary);
  const auto& d = s;
  o.require(d[0].cooperation_duration.mean > d[1].cooperation_duration.mean &&
                d[1].cooperation_duration.mean > d[2].cooperation_duration.mean,
            "durations not strictly ordered");
  o.require(d[0].cooperation_duration.mean - d[0].cooperation_duration.ci95 >
                d[2].cooperation_duration.mean + d[2].cooperation_duration.ci95,
            "95% intervals overlap between eps=0 and eps=0.2");
  o.require(d[0].spiral_frequency == 0.0, "spirals at eps=0: " + num(d[0].spiral_frequency));
  o.require(d[2].spiral_frequency >= 0.9, "spiral frequency at eps=0.2: " + num(d[2].spiral_frequency));
  std::ostringstream msg;
  msg << "duration " << num(d[0].cooperation_duration.mean) << " > " << num(d[1].cooperation_duration.mean) << " > "
      << num(d[2].cooperation_duration.mean) << " (ci95 " << num(d[0].cooperation_duration.ci95) << ", "
      << num(d[2].cooperation_duration.ci95) << "); spiral " << num(d[0].spiral_frequency) << " / "
      << num(d[2].spiral_frequency);
  if (o.pass) o.detail = msg.str();
  return o;
}

Outcome nash_oracle() {
  Outcome o;
  std::mt19937_64 gen(20240611);
  std::uniform_int_distribution<int> pay(-5, 5);
  std::size_t games = 0, equilibria = 0;
  for (std::size_t n : {2u, 3u, 4u}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<std::vector<double>> table(std::size_t{1} << n, std::vector<double>(n));
      for (auto& row : table) {
        for (auto& v : row) v = pay(gen);
      }
      const NormalFormGame game(n, [&](MinerId i, std::uint64_t m) { return table[m][i]; });
      const auto oracle = testing::brute_force_nash(n, [&](std::size_t i, const std::vector<int>& a) {
        std::uint64_t m = 0;
        for (std::size_t j = 0; j < n; ++j) m |= static_cast<std::uint64_t>(a[j]) << j;
        return table[m][i];
      });
      std::set<std::string> got;
      for (const auto& p : pure_nash(game)) got.insert(to_string(p));
      o.require(got == oracle, "mismatch for n=" + std::to_string(n) + " trial " + std::to_string(trial));
      ++games;
      equilibria += oracle.size();
    }
  }
  if (o.pass) o.detail = std::to_string(games) + " games, " + std::to_string(equilibria) + " equilibria matched";
  return o;
}

Outcome endogenous_path() {
  Outcome o;
  const NoisePath piecewise(0.05, {{0, 0.0}, {5, 0.10}});
  const auto path = endogenous_discount_path(piecewise, 10);
  o.require(std::abs(path[10] - std::exp(-1.0)) <= 1e-12, "delta(10) = " + num(path[10]));
  std::vector<NoisePath> cases{piecewise, NoisePath::constant(0.05), NoisePath::constant(0.0)};
  std::mt19937_64 gen(61);
  std::uniform_real_distribution<double> rate(0.0, 0.4);
  for (int k = 0; k < 200; ++k) {
    std::vector<NoiseSegment> segs{{0, rate(gen)}};
    std::size_t start = 0;
    for (int s = 0, m = static_cast<int>(gen() % 5); s < m; ++s) segs.push_back({start += 1 + gen() % 15, rate(gen)});
    cases.emplace_back(rate(gen) / 4, segs);
  }
  for (const auto& c : cases) {
    const auto p = endogenous_discount_path(c, 100);
    for (std::size_t t = 1; t < p.size(); ++t) o.require(p[t] <= p[t - 1], "path increases at t=" + std::to_string(t));
  }
  if (o.pass) o.detail = "delta(10) = " + num(path[10]) + "; " + std::to_string(cases.size()) + " paths nonincreasing";
  return o;
}

Outcome npv_oracle() {
  Outcome o;
  const InvestmentPlan plan(250, {100, 100, 100});
  const double base = npv(plan, NoisePath::constant(0.05));
  o.require(std::abs(base - 22.3248) <= 1e-4, "npv = " + num(base));
  const double noisy = npv(plan, NoisePath::constant(0.05, 0.05));
  o.require(noisy < base, "npv under eta=0.05 not smaller: " + num(noisy));
  const auto h0 = breakeven_horizon(100, 250, NoisePath::constant(0.05), 100);
  o.require(h0 == 3u, "base breakeven not 3");
  std::size_t prev = h0.value_or(0);
  std::string grid;
  for (double eta : {0.01, 0.02, 0.05, 0.1, 0.2}) {
    const auto h = breakeven_horizon(100, 250, NoisePath::constant(0.05, eta), 100);
    const std::size_t v = h.value_or(SIZE_MAX);
    o.require(v >= prev, "breakeven shrank at eta=" + num(eta));
    prev = v;
    grid += (grid.empty() ? "" : ",") + (h ? std::to_string(*h) : std::string("none"));
  }
  if (o.pass) o.detail = "npv " + num(base) + ", eta=0.05 " + num(noisy) + "; breakeven 3 then [" + grid + "]";
  return o;
}

Outcome risk_adjustment() {
  Outcome o;
  std::mt19937_64 gen(808);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<double>> samples(1 + gen() % 30);
    std::vector<double> means;
    for (auto& round : samples) {
      round.resize(2 + gen() % 8);
      for (auto& v : round) v = u(gen);
      means.push_back(sample_mean(round));
    }
    const DiscountFactor d(0.05 + 0.9 * (gen() % 1000) / 1000.0);
    const double plain = discounted_utility(means, d);
    o.require(risk_adjusted_utility(samples, d, RiskAversion(0.0)) == plain,
              "eta_risk = 0 differs on trial " + std::to_string(trial));
    const double eta = 0.01 + 2.0 * (gen() % 1000) / 1000.0;
    o.require(risk_adjusted_utility(samples, d, RiskAversion(eta)) < plain,
              "eta_risk > 0 not below U on trial " + std::to_string(trial));
  }
  if (o.pass) o.detail = "100 sample sets: U' == U at eta 0, U' < U at eta > 0";
  return o;
}

Outcome protocol_dynamics() {
  Outcome o;
  // identity kernels: a three-state grim/TFT/myopic mix, and the mutable preset with mutation switched off
  testing::PdScenario pd;
  pd.states = 3;
  pd.strategies = {"GrimTrigger", "TitForTat", "MyopicBestResponse"};
  pd.replicas = 20;
  std::vector<Scenario> frozen{pd.build()};
  frozen.push_back(scenario_from_document(parse_document(preset_text("mutable_core")),
                                          {{"kernel.epsilon", "0"}, {"replica_count", "20"}}));
  std::size_t traces = 0;
  for (const auto& sc : frozen) {
    o.require(sc.kernel.is_identity(), "kernel is not the identity");
    for (const auto& tr : run_batch(sc).traces) {
      ++traces;
      for (const auto& r : tr.rounds) o.require(r.state == sc.initial_state, "state moved under identity kernel");
    }
  }
  const double h = kernel_entropy(TransitionKernel::uniform(4)).value;
  o.require(std::abs(h - std::log(4.0)) <= 1e-12, "entropy(uniform 4) = " + num(h));
  o.require(integrity(TransitionKernel::identity(4)).theta == 1.0, "integrity(identity) != 1");
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + gen() % 5;
    auto rows = testing::random_kernel(gen, k);
    const double before = integrity(TransitionKernel(rows)).theta;
    const std::size_t p = gen() % k;
    const std::size_t q = (p + 1 + gen() % (k - 1)) % k;
    const double moved = rows[p][p] * frac(gen);
    rows[p][p] -= moved;
    rows[p][q] += moved;
    o.require(integrity(TransitionKernel(rows)).theta <= before, "integrity rose on trial " + std::to_string(trial));
  }
  if (o.pass) {
    o.detail = std::to_string(traces) + " identity-kernel traces state-constant; entropy " + num(h) +
               "; 100 perturbations antitone";
  }
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / ("mutagame_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  std::size_t compared = 0;
  for (const std::string name : {"fixed_rules", "mutable_core"}) {
    const auto scenario = root / (name + ".yaml");
    std::ofstream(scenario, std::ios::binary) << preset_text(name);
    auto invoke = [&](const std::string& threads, const std::string& tag) {
      const auto out = root / (name + "_" + tag);
      const std::string cmd = "MUTAGAME_THREADS=" + threads + " " + MUTAGAME_CLI + " run " + scenario.string() +
                              " --seed 42 --out " + out.string() + " >/dev/null 2>&1";
      o.require(std::system(cmd.c_str()) == 0, "run failed: " + cmd);
      return std::pair{slurp(out / "trace.csv"), slurp(out / "summary.json")};
    };
    const auto first = invoke("1", "t1a");
    const auto second = invoke("1", "t1b");
    const auto wide = invoke("8", "t8");
    o.require(!first.first.empty() && !first.second.empty(), name + ": empty outputs");
    o.require(first == second, name + ": outputs differ between invocations");
    o.require(first == wide, name + ": outputs differ between 1 and 8 threads");
    compared += 2;
  }
  fs::remove_all(root);
  if (o.pass) o.detail = std::to_string(compared) + " file pairs byte-identical across runs and thread counts";
  return o;
}

Outcome meta_conservation() {
  Outcome o;
  std::mt19937_64 gen(31337);
  std::size_t points = 0;
  const std::vector<double> betas{0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
  const std::vector<double> exponents{0.25, 0.5, 1.0, 2.0, 4.0};
  const std::vector<double> budgets{0.0, 0.05, 0.2, 0.5, 0.8, 1.0};
  for (double beta : betas) {
    for (double r : exponents) {
      for (double budget : budgets) {
        for (int rep = 0; rep < 3; ++rep) {
          const auto rows = testing::random_kernel(gen, 2 + gen() % 4);
          const auto& row = rows[0];
          const std::vector<MetaStake> inv{{budget, static_cast<StateId>(gen() % row.size()), 0.3},
                                           {budget / 2, static_cast<StateId>(gen() % row.size()), 0.2}};
          const MetaModelConfig cfg{true, beta, r};
          const auto out = apply_meta_influence(row, inv, cfg);
          double sum = 0.0;
          for (double v : out) sum += v;
          o.require(std::abs(sum - 1.0) <= 1e-12, "row sum " + num(sum));
          if (beta == 0.0) o.require(out == row, "beta = 0 changed the row");
          ++points;
        }
      }
    }
  }
  o.require(points >= 500, "grid too small");
  const std::vector<MetaStake> twins{{0.5, 0, 0.4}, {0.5, 1, 0.4}};
  for (double beta : {0.1, 0.5, 1.0}) {
    const auto out = apply_meta_influence(std::vector<double>{0.5, 0.5}, twins, MetaModelConfig{true, beta, 1.0});
    o.require(std::abs(out[0] - 0.5) <= 1e-12 && std::abs(out[1] - 0.5) <= 1e-12, "symmetric row moved");
  }
  if (o.pass) o.detail = std::to_string(points) + " grid points conserve mass; beta=0 bit-identical; symmetric fixed";
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "geometric-utility exactness", geometric_utility},
      {2, "folk-theorem threshold reproduction", folk_threshold},
      {3, "defection-condition bridge", defection_bridge},
      {4, "mutation to short-termism monotonicity", mutation_monotonicity},
      {5, "Nash oracle equivalence", nash_oracle},
      {6, "endogenous discount path", endogenous_path},
      {7, "NPV oracle", npv_oracle},
      {8, "risk-adjustment properties", risk_adjustment},
      {9, "protocol dynamics", protocol_dynamics},
      {10, "determinism", determinism},
      {11, "meta-game conservation", meta_conservation},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all = true;
  bool ran = false;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ran = true;
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << ": " << o.detail << std::endl;
    all = all && o.pass;
  }
  if (!ran) {
    std::cerr << "no criterion " << only << '\n';
    return 2;
  }
  return all ? 0 : 1;
}
