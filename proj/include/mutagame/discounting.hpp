#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace mutagame {

/// Per-round discount factor, strictly inside (0, 1).
class DiscountFactor {
 public:
  explicit DiscountFactor(double delta);
  double value() const noexcept { return delta_; }

 private:
  double delta_;
};

/// Weight on per-round payoff standard deviation in risk-adjusted utility.
class RiskAversion {
 public:
  explicit RiskAversion(double eta_risk = 0.0);
  double value() const noexcept { return eta_; }

 private:
  double eta_;
};

struct NoiseSegment {
  std::size_t start_round = 0;
  double value = 0.0;
};

/// Baseline time preference rho plus a piecewise-constant institutional noise
/// path eta(t). Segment i covers [start_i, start_{i+1}); the last one runs forever.
class NoisePath {
 public:
  NoisePath(double baseline_rate, std::vector<NoiseSegment> segments);
  /// rho only, eta = 0 everywhere
  static NoisePath constant(double baseline_rate, double eta = 0.0);

  double baseline_rate() const noexcept { return rho_; }
  const std::vector<NoiseSegment>& segments() const noexcept { return segments_; }

  double eta_at(std::size_t round) const;
  /// Integral of rho + eta(s) over [0, t).
  double integrated_rate(std::size_t t) const;

 private:
  double rho_;
  std::vector<NoiseSegment> segments_;
};

class InvestmentPlan {
 public:
  InvestmentPlan(double upfront_cost, std::vector<double> expected_returns);

  double upfront_cost() const noexcept { return upfront_cost_; }
  /// E[R_t] for t = 1..T, stored at index t-1.
  const std::vector<double>& expected_returns() const noexcept { return returns_; }
  std::size_t horizon() const noexcept { return returns_.size(); }

 private:
  double upfront_cost_;
  std::vector<double> returns_;
};

struct PayoffVariance {
  double sigma2 = 0.0;
  double sigma = 0.0;
  bool degenerate = false;  // single sample, reported as zero variance
};

/// Sum_{t=0}^{T} delta^t * payoffs[t].
double discounted_utility(std::span<const double> payoffs, DiscountFactor delta);

/// Sum_t factors[t] * payoffs[t] for an arbitrary discount path (e.g. the endogenous one).
double discounted_utility(std::span<const double> payoffs, std::span<const double> factors);

double sample_mean(std::span<const double> samples);

/// Unbiased sample variance (divisor n-1).
PayoffVariance payoff_variance(std::span<const double> samples);

/// Sum_t delta^t * (mean_t - eta_risk * sigma_t), the penalty applied inside the discounted sum.
double risk_adjusted_utility(std::span<const std::vector<double>> per_round_samples,
                             DiscountFactor delta, RiskAversion aversion);

/// delta(t) = exp(-integral_0^t (rho + eta(s)) ds) for t = 0..horizon.
std::vector<double> endogenous_discount_path(const NoisePath& noise, std::size_t horizon);

/// Sum_{t=1}^{T} E[R_t] / (1 + rho + eta(t))^t - C_0, compound per period.
double npv(const InvestmentPlan& plan, const NoisePath& noise);

/// Smallest T <= max_horizon with a nonnegative NPV for a constant return stream.
std::optional<std::size_t> breakeven_horizon(double per_period_return, double upfront_cost,
                                             const NoisePath& noise, std::size_t max_horizon);

/// Smallest T with delta^{T+1} * max_abs_payoff / (1 - delta) below tolerance:
/// T = ceil(ln(tol * (1 - delta) / max_abs_payoff) / ln delta), at least 0.
std::size_t truncation_horizon(DiscountFactor delta, double max_abs_payoff, double tolerance = 1e-9);

}  // namespace mutagame
