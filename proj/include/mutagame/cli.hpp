#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mutagame/scenario_io.hpp"

namespace mutagame::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kIoFailure = 2,
  kCapacityError = 3,
};

struct RunOptions {
  std::filesystem::path output_dir = "out";
  std::vector<Override> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replicas;
  unsigned threads = 0;  // 0: MUTAGAME_THREADS or hardware concurrency
};

struct SweepSpec {
  std::string parameter;
  std::vector<std::string> values;
};

int cmd_validate(const std::filesystem::path& path, std::ostream& out, std::ostream& err);
int cmd_run(const std::filesystem::path& path, const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const std::filesystem::path& path, const SweepSpec& sweep, const RunOptions& options,
              std::ostream& out, std::ostream& err);
int cmd_analyze(const std::filesystem::path& path, const RunOptions& options, std::ostream& out,
                std::ostream& err);
/// Writes the preset to `destination`, or to `out` when destination is empty.
int cmd_preset(const std::string& name, const std::filesystem::path& destination, std::ostream& out,
               std::ostream& err);

}  // namespace mutagame::cli
