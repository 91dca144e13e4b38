#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mutagame/game_core.hpp"
#include "mutagame/random.hpp"

namespace mutagame {

/// Row-stochastic Markov kernel over protocol states 0..k-1.
class TransitionKernel {
 public:
  static constexpr double kRowTolerance = 1e-12;

  /// Throws ConfigError naming the first offending row.
  explicit TransitionKernel(std::vector<std::vector<double>> rows);

  static TransitionKernel identity(std::size_t k);
  static TransitionKernel uniform(std::size_t k);

  std::size_t size() const noexcept { return rows_.size(); }
  std::span<const double> row(StateId p) const { return rows_.at(p); }
  double operator()(StateId p, StateId q) const { return rows_.at(p).at(q); }
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }

  bool is_identity() const noexcept;

 private:
  std::vector<std::vector<double>> rows_;
};

/// All problems with a candidate matrix, one message per row ("row 2 sums to 0.9 ...").
std::vector<std::string> check_kernel_rows(const std::vector<std::vector<double>>& rows);

/// Samples an index from a probability row with one uniform draw.
StateId sample_from_row(std::span<const double> row, RandomStream& rng);

StateId step_protocol(const TransitionKernel& kernel, StateId current, RandomStream& rng);

struct MutationRate {
  std::vector<double> epsilon_per_state;  // 1 - mu(p, p)
  double epsilon_max = 0.0;
};

MutationRate mutation_rate(const TransitionKernel& kernel);

enum class EntropyWeighting { Uniform, Stationary };

struct KernelEntropy {
  double value = 0.0;  // nats
  EntropyWeighting weighting_used = EntropyWeighting::Uniform;
  bool fell_back = false;  // stationary weighting requested but kernel not irreducible+aperiodic
};

KernelEntropy kernel_entropy(const TransitionKernel& kernel,
                             EntropyWeighting weighting = EntropyWeighting::Uniform);

/// Irreducible and aperiodic, checked as positivity of A^((k-1)^2+1) on the support graph.
bool is_primitive(const TransitionKernel& kernel);

/// Unique stationary distribution for a primitive kernel, nullopt otherwise.
std::optional<std::vector<double>> stationary_distribution(const TransitionKernel& kernel);

struct IntegrityScore {
  double theta = 1.0;
};

/// Worst-case per-step stay probability, min_p mu(p, p).
IntegrityScore integrity(const TransitionKernel& kernel);

/// Rescales every row so that mu(p, p) = 1 - epsilon, keeping the relative
/// weights of the off-diagonal entries (uniform if the row had none).
TransitionKernel with_mutation_rate(const TransitionKernel& kernel, double epsilon);

/// Gaussian protocol-state perturbation theta_t ~ N(mean, variance), i.i.d. per round.
struct ThetaProcess {
  double mean = 1.0;
  double variance = 0.0;
  bool clamp = true;  // payoff scale max(0, theta)

  void validate() const;
  /// Payoff multiplier for a raw draw.
  double scale(double theta) const noexcept { return clamp && theta < 0.0 ? 0.0 : theta; }
};

double sample_theta(const ThetaProcess& process, RandomStream& rng);

}  // namespace mutagame
