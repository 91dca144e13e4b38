#include <doctest.h>

#include <cmath>
#include <random>

#include "mutagame/discounting.hpp"
#include "mutagame/errors.hpp"

using namespace mutagame;

TEST_CASE("discount factor and risk aversion domains") {
  CHECK_THROWS_AS(DiscountFactor(0.0), ConfigError);
  CHECK_THROWS_AS(DiscountFactor(1.0), ConfigError);
  CHECK_NOTHROW(DiscountFactor(0.999));
  CHECK_THROWS_AS(RiskAversion(-0.1), ConfigError);
}

TEST_CASE("discounted utility basics") {
  CHECK(discounted_utility(std::vector<double>{5}, DiscountFactor(0.5)) == 5.0);
  CHECK(discounted_utility(std::vector<double>{1, 2, 3}, DiscountFactor(0.5)) == 2.75);
  const std::vector<double> ones(501, 1.0);
  CHECK(std::abs(discounted_utility(ones, DiscountFactor(0.9)) - 10.0) <= 1e-9);
  CHECK(discounted_utility(std::vector<double>{}, DiscountFactor(0.5)) == 0.0);
}

TEST_CASE("property: truncation bound on a grid") {
  for (double delta : {0.3, 0.5, 0.9, 0.95}) {
    for (double pi : {-2.0, 1.0, 7.0}) {
      for (std::size_t T : {0u, 5u, 20u, 100u}) {
        const std::vector<double> stream(T + 1, pi);
        const double gap = std::abs(discounted_utility(stream, DiscountFactor(delta)) - pi / (1 - delta));
        const double bound = std::pow(delta, static_cast<double>(T + 1)) * std::abs(pi) / (1 - delta);
        CHECK(gap <= bound * (1 + 1e-9) + 1e-12 * std::abs(pi) / (1 - delta));
      }
    }
  }
}

TEST_CASE("truncation horizon") {
  // T = ceil(ln(tol (1 - delta) / pi) / ln delta): the smallest T with delta^T pi / (1 - delta) <= tol
  for (double pi : {1.0, 5.0}) {
    const auto T = truncation_horizon(DiscountFactor(0.9), pi);
    CHECK(std::pow(0.9, static_cast<double>(T)) * pi / 0.1 <= 1e-9 * (1 + 1e-12));
    CHECK(std::pow(0.9, static_cast<double>(T - 1)) * pi / 0.1 > 1e-9);
  }
  CHECK(truncation_horizon(DiscountFactor(0.5), 0.0) == 0);
}

TEST_CASE("sample variance") {
  CHECK(payoff_variance(std::vector<double>{2, 2, 2}).sigma2 == 0.0);
  const auto two = payoff_variance(std::vector<double>{0, 2});
  CHECK(two.sigma2 == 2.0);
  CHECK(two.sigma == doctest::Approx(std::sqrt(2.0)));
  const auto one = payoff_variance(std::vector<double>{4});
  CHECK(one.degenerate);
  CHECK(one.sigma2 == 0.0);
  CHECK_THROWS_AS(payoff_variance(std::vector<double>{}), ConfigError);

  std::mt19937_64 gen(8);
  std::normal_distribution<double> n(0.0, 2.0);
  std::vector<double> x(100000);
  for (auto& v : x) v = n(gen);
  CHECK(std::abs(payoff_variance(x).sigma2 - 4.0) <= 0.2);
}

TEST_CASE("risk-adjusted utility") {
  const DiscountFactor d(0.9);
  const std::vector<std::vector<double>> one{{0, 2}};
  CHECK(risk_adjusted_utility(one, d, RiskAversion(1.0)) == doctest::Approx(1.0 - std::sqrt(2.0)).epsilon(1e-14));
  const std::vector<std::vector<double>> flat{{3, 3}, {3, 3, 3}};
  CHECK(risk_adjusted_utility(flat, d, RiskAversion(5.0)) == discounted_utility(std::vector<double>{3, 3}, d));
  const std::vector<std::vector<double>> hole{{1}, {}};
  CHECK_THROWS_AS(risk_adjusted_utility(hole, d, RiskAversion(0.0)), ConfigError);
}

TEST_CASE("property: risk penalty is nonnegative and vanishes without aversion") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<double>> samples(1 + gen() % 20);
    std::vector<double> means;
    for (auto& round : samples) {
      round.resize(1 + gen() % 6);
      for (auto& v : round) v = u(gen);
      means.push_back(sample_mean(round));
    }
    const DiscountFactor d(0.5 + 0.49 * (gen() % 100) / 100.0);
    const double plain = discounted_utility(means, d);
    CHECK(risk_adjusted_utility(samples, d, RiskAversion(0.0)) == plain);
    CHECK(risk_adjusted_utility(samples, d, RiskAversion(0.3)) <= plain);
  }
}

TEST_CASE("endogenous discount path") {
  const auto flat = endogenous_discount_path(NoisePath::constant(0.05), 10);
  REQUIRE(flat.size() == 11);
  CHECK(flat[0] == 1.0);
  CHECK(flat[10] == doctest::Approx(0.606531).epsilon(1e-6));
  for (double v : endogenous_discount_path(NoisePath::constant(0.0), 20)) CHECK(v == 1.0);

  const NoisePath piecewise(0.05, {{0, 0.0}, {5, 0.10}});
  CHECK(std::abs(endogenous_discount_path(piecewise, 10)[10] - std::exp(-1.0)) <= 1e-12);
  CHECK(piecewise.eta_at(4) == 0.0);
  CHECK(piecewise.eta_at(5) == 0.10);
  CHECK(piecewise.integrated_rate(10) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("noise path validation") {
  CHECK_THROWS_AS(NoisePath(0.05, {{1, 0.0}}), ConfigError);
  CHECK_THROWS_AS(NoisePath(0.05, {{0, 0.0}, {0, 0.1}}), ConfigError);
  CHECK_THROWS_AS(NoisePath(0.05, {{0, -0.1}}), ConfigError);
  CHECK_THROWS_AS(NoisePath(-0.05, {{0, 0.0}}), ConfigError);
}

TEST_CASE("property: discount path monotone in time and in noise") {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> rate(0.0, 0.3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<NoiseSegment> segs{{0, rate(gen)}};
    std::size_t start = 0;
    const int extra = static_cast<int>(gen() % 4);
    for (int s = 0; s < extra; ++s) segs.push_back({start += 1 + gen() % 10, rate(gen)});
    const NoisePath base(rate(gen), segs);
    const auto path = endogenous_discount_path(base, 60);
    for (std::size_t t = 1; t < path.size(); ++t) CHECK(path[t] <= path[t - 1]);

    auto bumped = segs;
    bumped[gen() % bumped.size()].value += 0.05;
    const auto higher = endogenous_discount_path(NoisePath(base.baseline_rate(), bumped), 60);
    for (std::size_t t = 0; t < path.size(); ++t) CHECK(higher[t] <= path[t]);
  }
}

TEST_CASE("npv") {
  const InvestmentPlan plan(250, {100, 100, 100});
  const double oracle = 100 / 1.05 + 100 / (1.05 * 1.05) + 100 / (1.05 * 1.05 * 1.05) - 250;
  CHECK(std::abs(npv(plan, NoisePath::constant(0.05)) - 22.3248) <= 1e-4);
  CHECK(npv(plan, NoisePath::constant(0.05)) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(npv(InvestmentPlan(0, {0, 0}), NoisePath::constant(0.05)) == 0.0);
  CHECK(npv(plan, NoisePath::constant(0.05, 0.05)) < npv(plan, NoisePath::constant(0.05)));
  CHECK(npv(InvestmentPlan(260, {100, 100, 100}), NoisePath::constant(0.05)) < npv(plan, NoisePath::constant(0.05)));
}

TEST_CASE("npv strictly decreasing in any touched noise segment") {
  const InvestmentPlan plan(100, {10, 20, 30, 40, 50, 60});
  const NoisePath base(0.03, {{0, 0.01}, {2, 0.02}, {4, 0.0}});
  const double v = npv(plan, base);
  for (std::size_t s = 0; s < 3; ++s) {
    auto segs = base.segments();
    segs[s].value += 0.01;
    CHECK(npv(plan, NoisePath(0.03, segs)) < v);
  }
}

TEST_CASE("breakeven horizon") {
  const auto base = NoisePath::constant(0.05);
  CHECK(breakeven_horizon(100, 250, base, 100) == 3u);
  CHECK(npv(InvestmentPlan(250, {100, 100}), base) == doctest::Approx(-64.06).epsilon(1e-4));
  CHECK(breakeven_horizon(100, 0, base, 100) == 1u);
  CHECK_FALSE(breakeven_horizon(1, 1e6, base, 100).has_value());
  CHECK_THROWS_AS(breakeven_horizon(0, 10, base, 100), ConfigError);
  std::optional<std::size_t> prev = breakeven_horizon(100, 250, base, 100);
  for (double eta : {0.01, 0.02, 0.05, 0.1, 0.3}) {
    const auto h = breakeven_horizon(100, 250, NoisePath::constant(0.05, eta), 100);
    if (prev) CHECK((!h || *h >= *prev));
    prev = h;
  }
}

TEST_CASE("continuous and compound discounting agree to first order") {
  for (double r : {0.01, 0.05, 0.1}) {
    for (int t : {1, 5, 10, 30}) {
      std::vector<double> single(static_cast<std::size_t>(t), 0.0);
      single.back() = 1.0;
      const double compound = npv(InvestmentPlan(0, single), NoisePath::constant(r));
      const double continuous = endogenous_discount_path(NoisePath::constant(r), t)[t];
      const double gap = std::abs(continuous - compound);
      CHECK(gap <= r * r * t * std::pow(1 + r, -t));
    }
  }
}
