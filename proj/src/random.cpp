#include "mutagame/random.hpp"

#include "mutagame/errors.hpp"

#include <utility>

namespace mutagame {

ValidationError::ValidationError(std::vector<std::string> issues)
    : ConfigError([&] {
        std::string msg = "invalid scenario:";
        for (const auto& issue : issues) {
          msg += "\n  - ";
          msg += issue;
        }
        return msg;
      }()),
      issues_(std::move(issues)) {}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : engine_(seed) {}

RandomStream RandomStream::for_replica(std::uint64_t master_seed, std::uint64_t replica_index) {
  return RandomStream(splitmix64(master_seed ^ splitmix64(replica_index + 1)));
}

double RandomStream::uniform() {
  ++draws_;
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::normal(double mean, double stddev) {
  ++draws_;
  return normal_(engine_, std::normal_distribution<double>::param_type(mean, stddev));
}

}  // namespace mutagame
