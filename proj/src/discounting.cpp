#include "mutagame/discounting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mutagame/errors.hpp"

namespace mutagame {

namespace {

// Neumaier-compensated running sum; long horizons at delta near 1 add thousands of terms.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

DiscountFactor::DiscountFactor(double delta) : delta_(delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ConfigError("discount factor must lie strictly inside (0, 1), got " + std::to_string(delta));
  }
}

RiskAversion::RiskAversion(double eta_risk) : eta_(eta_risk) {
  if (!(eta_risk >= 0.0) || !std::isfinite(eta_risk)) {
    throw ConfigError("risk aversion must be a finite nonnegative number");
  }
}

NoisePath::NoisePath(double baseline_rate, std::vector<NoiseSegment> segments)
    : rho_(baseline_rate), segments_(std::move(segments)) {
  if (!(rho_ >= 0.0) || !std::isfinite(rho_)) throw ConfigError("baseline rate rho must be >= 0");
  if (segments_.empty()) segments_.push_back(NoiseSegment{0, 0.0});
  if (segments_.front().start_round != 0) throw ConfigError("noise segments must start at round 0");
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (!(segments_[i].value >= 0.0) || !std::isfinite(segments_[i].value)) {
      throw ConfigError("noise segment " + std::to_string(i) + " has a negative or non-finite value");
    }
    if (i > 0 && segments_[i].start_round <= segments_[i - 1].start_round) {
      throw ConfigError("noise segment start rounds must be strictly increasing");
    }
  }
}

NoisePath NoisePath::constant(double baseline_rate, double eta) {
  return NoisePath(baseline_rate, {NoiseSegment{0, eta}});
}

double NoisePath::eta_at(std::size_t round) const {
  auto it = std::upper_bound(segments_.begin(), segments_.end(), round,
                             [](std::size_t r, const NoiseSegment& s) { return r < s.start_round; });
  return std::prev(it)->value;
}

double NoisePath::integrated_rate(std::size_t t) const {
  double noise = 0.0;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const std::size_t begin = segments_[i].start_round;
    if (begin >= t) break;
    const std::size_t end = i + 1 < segments_.size() ? std::min(segments_[i + 1].start_round, t) : t;
    noise += segments_[i].value * static_cast<double>(end - begin);
  }
  return rho_ * static_cast<double>(t) + noise;
}

InvestmentPlan::InvestmentPlan(double upfront_cost, std::vector<double> expected_returns)
    : upfront_cost_(upfront_cost), returns_(std::move(expected_returns)) {
  if (!(upfront_cost_ >= 0.0) || !std::isfinite(upfront_cost_)) {
    throw ConfigError("upfront cost must be finite and >= 0");
  }
  if (returns_.empty()) throw ConfigError("investment plan needs at least one period");
  for (double r : returns_) {
    if (!std::isfinite(r)) throw ConfigError("expected returns must be finite");
  }
}

double discounted_utility(std::span<const double> payoffs, DiscountFactor delta) {
  CompensatedSum sum;
  for (std::size_t t = 0; t < payoffs.size(); ++t) {
    sum.add(std::pow(delta.value(), static_cast<double>(t)) * payoffs[t]);
  }
  return sum.value();
}

double discounted_utility(std::span<const double> payoffs, std::span<const double> factors) {
  if (factors.size() < payoffs.size()) throw ConfigError("discount path shorter than payoff stream");
  CompensatedSum sum;
  for (std::size_t t = 0; t < payoffs.size(); ++t) sum.add(factors[t] * payoffs[t]);
  return sum.value();
}

double sample_mean(std::span<const double> samples) {
  if (samples.empty()) throw ConfigError("empty sample set");
  double sum = 0.0;
  for (double x : samples) sum += x;
  return sum / static_cast<double>(samples.size());
}

PayoffVariance payoff_variance(std::span<const double> samples) {
  if (samples.empty()) throw ConfigError("empty sample set");
  if (samples.size() == 1) return PayoffVariance{0.0, 0.0, true};
  const double mean = sample_mean(samples);
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double var = ss / static_cast<double>(samples.size() - 1);
  return PayoffVariance{var, std::sqrt(var), false};
}

double risk_adjusted_utility(std::span<const std::vector<double>> per_round_samples,
                             DiscountFactor delta, RiskAversion aversion) {
  std::vector<double> penalized;
  penalized.reserve(per_round_samples.size());
  for (std::size_t t = 0; t < per_round_samples.size(); ++t) {
    const auto& samples = per_round_samples[t];
    if (samples.empty()) throw ConfigError("round " + std::to_string(t) + " has no payoff samples");
    const double mean = sample_mean(samples);
    if (aversion.value() == 0.0) {
      penalized.push_back(mean);
    } else {
      penalized.push_back(mean - aversion.value() * payoff_variance(samples).sigma);
    }
  }
  return discounted_utility(penalized, delta);
}

std::vector<double> endogenous_discount_path(const NoisePath& noise, std::size_t horizon) {
  std::vector<double> path(horizon + 1);
  for (std::size_t t = 0; t <= horizon; ++t) path[t] = std::exp(-noise.integrated_rate(t));
  return path;
}

double npv(const InvestmentPlan& plan, const NoisePath& noise) {
  CompensatedSum sum;
  const auto& returns = plan.expected_returns();
  for (std::size_t t = 1; t <= returns.size(); ++t) {
    const double rate = noise.baseline_rate() + noise.eta_at(t);
    sum.add(returns[t - 1] / std::pow(1.0 + rate, static_cast<double>(t)));
  }
  sum.add(-plan.upfront_cost());
  return sum.value();
}

std::optional<std::size_t> breakeven_horizon(double per_period_return, double upfront_cost,
                                             const NoisePath& noise, std::size_t max_horizon) {
  if (!(per_period_return > 0.0)) throw ConfigError("breakeven needs a positive per-period return");
  if (!(upfront_cost >= 0.0)) throw ConfigError("upfront cost must be >= 0");
  // accumulate the same terms npv() would produce for each truncated plan
  CompensatedSum pv;
  for (std::size_t t = 1; t <= max_horizon; ++t) {
    const double rate = noise.baseline_rate() + noise.eta_at(t);
    pv.add(per_period_return / std::pow(1.0 + rate, static_cast<double>(t)));
    if (pv.value() - upfront_cost >= 0.0) return t;
  }
  return std::nullopt;
}

std::size_t truncation_horizon(DiscountFactor delta, double max_abs_payoff, double tolerance) {
  if (!(tolerance > 0.0)) throw ConfigError("truncation tolerance must be positive");
  if (max_abs_payoff <= 0.0) return 0;
  const double target = tolerance * (1.0 - delta.value()) / max_abs_payoff;
  if (target >= 1.0) return 0;
  const double t = std::ceil(std::log(target) / std::log(delta.value()));
  return t > 0.0 ? static_cast<std::size_t>(t) : 0;
}

}  // namespace mutagame
