#pragma once

#include <cstdint>
#include <random>

namespace mutagame {

/// Deterministic random stream owned by a single replica.
///
/// Every replica derives its own stream from (master_seed, replica_index), so
/// results never depend on scheduling or thread count.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  /// Splitting rule: seed = splitmix64(master_seed XOR splitmix64(replica_index + 1)).
  static RandomStream for_replica(std::uint64_t master_seed, std::uint64_t replica_index);

  /// Uniform on [0, 1) from the top 53 bits of one engine output.
  double uniform();

  /// One Gaussian draw with the given mean and standard deviation.
  double normal(double mean, double stddev);

  std::uint64_t draws() const noexcept { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
  std::uint64_t draws_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace mutagame
