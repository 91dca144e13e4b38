#include "mutagame/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "mutagame/equilibrium.hpp"
#include "mutagame/errors.hpp"
#include "mutagame/output.hpp"

namespace mutagame::cli {

namespace {

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "invalid scenario (" << e.issues().size() << " violation" << (e.issues().size() == 1 ? "" : "s")
        << "):\n";
    for (const auto& issue : e.issues()) err << "  - " << issue << '\n';
    return kValidationFailure;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kCapacityError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const ConfigError& e) {
    err << "invalid scenario: " << e.what() << '\n';
    return kValidationFailure;
  }
}

std::vector<Override> effective_overrides(const RunOptions& options) {
  std::vector<Override> all = options.overrides;
  if (options.seed) all.emplace_back("master_seed", std::to_string(*options.seed));
  if (options.replicas) all.emplace_back("replica_count", std::to_string(*options.replicas));
  return all;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path.string());
  f << contents;
  f.close();
  if (!f) throw IoError("failed writing " + path.string());
}

void prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

void print_summary(std::ostream& out, const BatchSummary& s) {
  out << "scenario " << s.scenario_name << ": " << s.replica_count << " replicas x " << s.horizon
      << " rounds, seed " << s.master_seed << '\n';
  out << std::fixed << std::setprecision(4);
  out << "  cooperation duration   " << s.cooperation_duration.mean << " +/- " << s.cooperation_duration.ci95 << '\n';
  out << "  spiral frequency       " << s.spiral_frequency << " +/- " << s.spiral_frequency_ci95 << '\n';
  out << "  final coop fraction    " << s.final_cooperation_fraction.mean << '\n';
  out << "  mutations per replica  " << s.mutation_count.mean << '\n';
  out << "  miner  U(mean)      U(std)      U'(mean)    U'(ensemble)\n";
  for (std::size_t i = 0; i < s.discounted_utility.size(); ++i) {
    out << "  " << std::setw(5) << i << "  " << std::setw(10) << s.discounted_utility[i].mean << "  "
        << std::setw(10) << s.discounted_utility[i].stddev << "  " << std::setw(10)
        << s.risk_adjusted_utility[i].mean << "  " << std::setw(10) << s.ensemble_risk_adjusted_utility[i] << '\n';
  }
  out.unsetf(std::ios::floatfield);
  out << std::setprecision(6);
}

}  // namespace

int cmd_validate(const std::filesystem::path& path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    (void)load_scenario(path);
    out << "OK\n";
    return kOk;
  });
}

int cmd_run(const std::filesystem::path& path, const RunOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario sc = load_scenario(path, effective_overrides(options));
    const BatchResult result = run_batch(sc, options.threads);

    std::ostringstream csv;
    write_trace_csv(csv, result.traces, sc.miners.size());
    const std::string json = summary_to_json(result.summary).dump(2) + "\n";

    prepare_dir(options.output_dir);
    write_file(options.output_dir / "trace.csv", csv.str());
    write_file(options.output_dir / "summary.json", json);
    print_summary(out, result.summary);
    return kOk;
  });
}

int cmd_sweep(const std::filesystem::path& path, const SweepSpec& sweep, const RunOptions& options,
              std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (sweep.values.size() < 2) throw ConfigError("a sweep needs at least two values");
    const YAML::Node doc = load_document(path);
    if (!is_sweepable(doc, sweep.parameter)) {
      throw ConfigError("'" + sweep.parameter + "' does not name a sweepable numeric parameter");
    }
    std::ostringstream csv;
    csv << "value,mean_cooperation_duration,cooperation_duration_ci95,spiral_frequency,spiral_frequency_ci95,"
           "mean_utility,mean_utility_ci95,round0_defection_rate,defection_free_rate\n";
    for (const auto& value : sweep.values) {
      auto overrides = effective_overrides(options);
      overrides.emplace_back(sweep.parameter, value);
      const Scenario sc = scenario_from_document(doc, overrides);
      const BatchSummary s = run_batch(sc, options.threads).summary;
      csv << value << ',' << format_number(s.cooperation_duration.mean) << ','
          << format_number(s.cooperation_duration.ci95) << ',' << format_number(s.spiral_frequency) << ','
          << format_number(s.spiral_frequency_ci95) << ',' << format_number(s.mean_utility.mean) << ','
          << format_number(s.mean_utility.ci95) << ',' << format_number(s.round0_defection_rate) << ','
          << format_number(s.defection_free_rate) << '\n';
    }
    prepare_dir(options.output_dir);
    write_file(options.output_dir / "sweep.csv", csv.str());
    out << csv.str();
    return kOk;
  });
}

int cmd_analyze(const std::filesystem::path& path, const RunOptions& options, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    const Scenario sc = load_scenario(path, effective_overrides(options));
    const std::size_t n = sc.miners.size();
    const auto eps = mutation_rate(sc.kernel);
    out << std::setprecision(10);
    out << "scenario: " << sc.name << '\n';
    out << "miners: " << n << '\n';
    out << "protocol_states: " << sc.kernel.size() << '\n';
    out << "discount_delta: " << sc.discount.value() << '\n';

    for (StateId s = 0; s < sc.game.state_count(); ++s) {
      const NormalFormGame game(sc.game, s);
      out << "state " << s << " (" << sc.game.states()[s].label << "):\n";
      const auto nash = pure_nash(game);
      out << "  pure_nash: [";
      for (std::size_t k = 0; k < nash.size(); ++k) out << (k ? ", " : "") << to_string(nash[k]);
      out << "]\n";
      if (n == 2) {
        if (auto mixed = mixed_equilibrium_2x2(game)) {
          out << "  mixed_equilibrium: p_cooperate = (" << mixed->p_cooperate_0 << ", " << mixed->p_cooperate_1
              << ")\n";
        }
      }
      const auto grim = grim_trigger_threshold(game);
      out << "  grim_trigger_delta_star: ";
      if (grim.never_sustainable) {
        out << "never_sustainable\n";
      } else if (grim.always_sustainable) {
        out << "always_sustainable\n";
      } else {
        out << grim.delta_star << '\n';
      }
      out << "  mutation_rate: " << eps.epsilon_per_state[s] << '\n';
      bool all_hold = true;
      double critical = 1.0;
      for (MinerId i = 0; i < n; ++i) {
        const auto incentive = deviation_incentive(game, i);
        const auto cond = mutation_cooperation_condition(incentive, sc.discount, eps.epsilon_per_state[s],
                                                         sc.post_mutation_value);
        all_hold = all_hold && cond.holds;
        critical = std::min(critical, critical_mutation_rate(incentive, sc.discount, sc.post_mutation_value));
      }
      out << "  cooperation_condition: " << (all_hold ? "holds" : "fails") << '\n';
      out << "  critical_mutation_rate: " << critical << '\n';
    }

    out << "mutation_rates: [";
    for (std::size_t s = 0; s < eps.epsilon_per_state.size(); ++s) {
      out << (s ? ", " : "") << eps.epsilon_per_state[s];
    }
    out << "]\n";
    out << "epsilon_max: " << eps.epsilon_max << '\n';
    out << "kernel_entropy_uniform: " << kernel_entropy(sc.kernel, EntropyWeighting::Uniform).value << '\n';
    const auto stationary = kernel_entropy(sc.kernel, EntropyWeighting::Stationary);
    out << "kernel_entropy_stationary: " << stationary.value
        << (stationary.fell_back ? " (kernel not irreducible and aperiodic; uniform weighting used)" : "") << '\n';
    out << "integrity: " << integrity(sc.kernel).theta << '\n';
    out << "truncation_horizon: " << truncation_horizon(sc.discount, sc.game.table().max_abs_payoff()) << '\n';

    if (sc.investment) {
      const NoisePath noise = sc.noise.value_or(NoisePath::constant(0.0));
      const auto& plan = sc.investment->plan;
      out << "npv: " << npv(plan, noise) << '\n';
      const double per_period = plan.expected_returns().front();
      if (per_period > 0.0) {
        const auto be = breakeven_horizon(per_period, plan.upfront_cost(), noise, sc.investment->max_horizon);
        out << "breakeven_horizon: " << (be ? std::to_string(*be) : std::string("none")) << '\n';
      }
    }
    return kOk;
  });
}

int cmd_preset(const std::string& name, const std::filesystem::path& destination, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    std::string text;
    try {
      text = preset_text(name);
    } catch (const ConfigError& e) {
      err << e.what() << '\n';
      return kValidationFailure;
    }
    if (destination.empty()) {
      out << text;
    } else {
      if (destination.has_parent_path()) prepare_dir(destination.parent_path());
      write_file(destination, text);
      out << "wrote " << destination.string() << '\n';
    }
    return kOk;
  });
}

}  // namespace mutagame::cli
