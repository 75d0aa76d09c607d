// Static report emission: accuracy curves with std bands, performance
// profiles, runtime bars, and summary CSV/JSON. Byte-deterministic for
// identical inputs; nothing is written if validation fails.
#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "albatch/bench.hpp"
#include "albatch/profile.hpp"
#include "albatch/simulate.hpp"

namespace albatch {

struct ReportInputs {
  std::vector<RunRecord> records;  // must be non-empty
  std::optional<BenchTable> bench;
  std::optional<ProfileCurves> profiles;
};

// Returns the created files (relative to out_dir).
std::vector<std::string> emit_report(const ReportInputs& inputs,
                                     const std::filesystem::path& out_dir);

}  // namespace albatch
