#pragma once

// Scenario files: sectioned key = value text ([scenario], [field], [grid],
// [run], [trace], [compare]). Unknown sections or keys are rejected.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "contourmon/dfc.hpp"

namespace contourmon::scenario {

struct Scenario {
  std::string name = "default";
  /// Per-seed run settings; `mode` and `field.seed` are overridden per run.
  dfc::RunConfig config{};
  /// "dual-sg", "baseline" or "both".
  std::string mode = "both";
  std::string output_dir = "out";
  std::vector<std::uint64_t> seeds{1};
  std::vector<double> mae_db_targets{0.0, -5.0, -10.0};

  /// RunConfig for one (mode, seed) pair.
  dfc::RunConfig run_config(dfc::Mode mode, std::uint64_t seed) const;
};

/// Throws Error(Config) for unreadable or invalid files.
Scenario load(const std::filesystem::path& path);
Scenario parse(const std::string& text);

/// Comma-separated unsigned integers; throws Config on junk.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

}  // namespace contourmon::scenario
