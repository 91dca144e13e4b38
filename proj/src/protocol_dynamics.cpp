#include "mutagame/protocol_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "mutagame/errors.hpp"

namespace mutagame {

std::vector<std::string> check_kernel_rows(const std::vector<std::vector<double>>& rows) {
  std::vector<std::string> issues;
  if (rows.empty()) {
    issues.emplace_back("kernel needs at least one state");
    return issues;
  }
  const std::size_t k = rows.size();
  for (std::size_t p = 0; p < k; ++p) {
    const auto& row = rows[p];
    std::ostringstream os;
    os.precision(17);
    if (row.size() != k) {
      os << "kernel row " << p << " has " << row.size() << " entries, expected " << k;
      issues.push_back(os.str());
      continue;
    }
    double sum = 0.0;
    bool bad_entry = false;
    for (std::size_t q = 0; q < k; ++q) {
      if (!(row[q] >= 0.0 && row[q] <= 1.0)) {
        os << "kernel row " << p << " entry " << q << " is " << row[q] << ", must lie in [0, 1]";
        bad_entry = true;
        break;
      }
      sum += row[q];
    }
    if (!bad_entry && std::abs(sum - 1.0) > TransitionKernel::kRowTolerance) {
      os << "kernel row " << p << " sums to " << sum << "; rows must sum to 1 within 1e-12";
    }
    if (!os.str().empty()) issues.push_back(os.str());
  }
  return issues;
}

TransitionKernel::TransitionKernel(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
  auto issues = check_kernel_rows(rows_);
  if (!issues.empty()) throw ConfigError(issues.front());
}

TransitionKernel TransitionKernel::identity(std::size_t k) {
  std::vector<std::vector<double>> rows(k, std::vector<double>(k, 0.0));
  for (std::size_t p = 0; p < k; ++p) rows[p][p] = 1.0;
  return TransitionKernel(std::move(rows));
}

TransitionKernel TransitionKernel::uniform(std::size_t k) {
  return TransitionKernel(std::vector<std::vector<double>>(k, std::vector<double>(k, 1.0 / static_cast<double>(k))));
}

bool TransitionKernel::is_identity() const noexcept {
  for (std::size_t p = 0; p < rows_.size(); ++p) {
    if (rows_[p][p] != 1.0) return false;
  }
  return true;
}

StateId sample_from_row(std::span<const double> row, RandomStream& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  StateId last_positive = 0;
  for (StateId q = 0; q < row.size(); ++q) {
    if (row[q] <= 0.0) continue;
    last_positive = q;
    cumulative += row[q];
    if (u < cumulative) return q;
  }
  return last_positive;
}

StateId step_protocol(const TransitionKernel& kernel, StateId current, RandomStream& rng) {
  if (current >= kernel.size()) {
    throw std::out_of_range("protocol state " + std::to_string(current) + " outside kernel");
  }
  return sample_from_row(kernel.row(current), rng);
}

MutationRate mutation_rate(const TransitionKernel& kernel) {
  MutationRate out;
  out.epsilon_per_state.reserve(kernel.size());
  for (StateId p = 0; p < kernel.size(); ++p) {
    const double eps = 1.0 - kernel(p, p);
    out.epsilon_per_state.push_back(eps);
    out.epsilon_max = std::max(out.epsilon_max, eps);
  }
  return out;
}

namespace {

double row_entropy(std::span<const double> row) {
  double h = 0.0;
  for (double m : row) {
    if (m > 0.0) h -= m * std::log(m);
  }
  return h;
}

}  // namespace

bool is_primitive(const TransitionKernel& kernel) {
  const std::size_t k = kernel.size();
  using Bool = std::vector<std::vector<char>>;
  Bool adj(k, std::vector<char>(k, 0));
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t q = 0; q < k; ++q) adj[p][q] = kernel(p, q) > 0.0;
  }
  auto multiply = [k](const Bool& a, const Bool& b) {
    Bool c(k, std::vector<char>(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t l = 0; l < k; ++l) {
        if (!a[i][l]) continue;
        for (std::size_t j = 0; j < k; ++j) c[i][j] = c[i][j] || b[l][j];
      }
    }
    return c;
  };
  // Wielandt: a primitive k x k matrix has A^m > 0 for m = (k-1)^2 + 1
  std::size_t exponent = (k - 1) * (k - 1) + 1;
  Bool result(k, std::vector<char>(k, 0));
  for (std::size_t i = 0; i < k; ++i) result[i][i] = 1;
  Bool base = adj;
  while (exponent > 0) {
    if (exponent & 1U) result = multiply(result, base);
    exponent >>= 1U;
    if (exponent > 0) base = multiply(base, base);
  }
  for (const auto& row : result) {
    for (char v : row) {
      if (!v) return false;
    }
  }
  return true;
}

std::optional<std::vector<double>> stationary_distribution(const TransitionKernel& kernel) {
  if (!is_primitive(kernel)) return std::nullopt;
  const auto k = static_cast<Eigen::Index>(kernel.size());
  // (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1
  Eigen::MatrixXd a(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      a(i, j) = kernel(static_cast<StateId>(j), static_cast<StateId>(i)) - (i == j ? 1.0 : 0.0);
    }
  }
  a.row(k - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
  b(k - 1) = 1.0;
  const Eigen::VectorXd pi = a.colPivHouseholderQr().solve(b);
  std::vector<double> out(pi.data(), pi.data() + k);
  for (double& v : out) v = std::max(v, 0.0);
  return out;
}

KernelEntropy kernel_entropy(const TransitionKernel& kernel, EntropyWeighting weighting) {
  const std::size_t k = kernel.size();
  std::vector<double> weights(k, 1.0 / static_cast<double>(k));
  KernelEntropy out;
  if (weighting == EntropyWeighting::Stationary) {
    if (auto pi = stationary_distribution(kernel)) {
      weights = std::move(*pi);
      out.weighting_used = EntropyWeighting::Stationary;
    } else {
      out.fell_back = true;
    }
  }
  for (StateId p = 0; p < k; ++p) out.value += weights[p] * row_entropy(kernel.row(p));
  return out;
}

IntegrityScore integrity(const TransitionKernel& kernel) {
  double theta = 1.0;
  for (StateId p = 0; p < kernel.size(); ++p) theta = std::min(theta, kernel(p, p));
  return IntegrityScore{theta};
}

TransitionKernel with_mutation_rate(const TransitionKernel& kernel, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in [0, 1]");
  const std::size_t k = kernel.size();
  if (k == 1) {
    if (epsilon == 0.0) return kernel;
    throw ConfigError("a single-state kernel cannot be given a nonzero mutation rate");
  }
  std::vector<std::vector<double>> rows(k, std::vector<double>(k, 0.0));
  for (StateId p = 0; p < k; ++p) {
    double off = 0.0;
    for (StateId q = 0; q < k; ++q) {
      if (q != p) off += kernel(p, q);
    }
    for (StateId q = 0; q < k; ++q) {
      if (q == p) continue;
      const double share = off > 0.0 ? kernel(p, q) / off : 1.0 / static_cast<double>(k - 1);
      rows[p][q] = epsilon * share;
    }
    double rest = 0.0;
    for (StateId q = 0; q < k; ++q) {
      if (q != p) rest += rows[p][q];
    }
    rows[p][p] = 1.0 - rest;
  }
  return TransitionKernel(std::move(rows));
}

void ThetaProcess::validate() const {
  if (!std::isfinite(mean)) throw ConfigError("theta mean must be finite");
  if (!(variance >= 0.0) || !std::isfinite(variance)) throw ConfigError("theta variance must be >= 0");
}

double sample_theta(const ThetaProcess& process, RandomStream& rng) {
  if (process.variance == 0.0) {
    // keep the draw count independent of the variance
    rng.uniform();
    return process.mean;
  }
  return rng.normal(process.mean, std::sqrt(process.variance));
}

}  // namespace mutagame
