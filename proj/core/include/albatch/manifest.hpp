// Run-directory manifest: records tool/format versions, the effective
// config, seeds, input hashes, produced files, and every wall-clock timing.
// Timings live only here so the primary outputs stay byte-reproducible; the
// `timing_artifacts` list names any sibling files that also carry timings
// (e.g. benchmark tables) and are therefore exempt from byte comparison.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace albatch {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kFormatVersion = 1;

struct ManifestData {
  std::string command;
  std::string config_json = "{}";  // canonical JSON of the effective config
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, std::string>> inputs;  // path -> content hash
  std::vector<std::string> outputs;                         // relative file names
  std::vector<std::string> timing_artifacts;
  std::string timings_json = "{}";
};

void write_manifest(const std::filesystem::path& dir, const ManifestData& data);

// FNV-1a 64-bit content hash, hex encoded.
std::string file_hash_hex(const std::filesystem::path& path);

}  // namespace albatch
