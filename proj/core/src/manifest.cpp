#include "albatch/manifest.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "albatch/errors.hpp"

namespace albatch {

void write_manifest(const std::filesystem::path& dir, const ManifestData& data) {
  nlohmann::json m;
  m["tool"] = "albatch";
  m["version"] = kToolVersion;
  m["format_version"] = kFormatVersion;
  m["command"] = data.command;
  m["config"] = nlohmann::json::parse(data.config_json);
  if (data.seed) m["seed"] = *data.seed;
  nlohmann::json inputs = nlohmann::json::object();
  for (const auto& [path, hash] : data.inputs) inputs[path] = hash;
  m["inputs"] = inputs;
  m["outputs"] = data.outputs;
  m["timing_artifacts"] = data.timing_artifacts;
  m["timings"] = nlohmann::json::parse(data.timings_json);

  std::ofstream out(dir / "manifest.json", std::ios::trunc);
  if (!out) throw IoError("cannot write manifest: " + (dir / "manifest.json").string());
  out << m.dump(2) << "\n";
}

std::string file_hash_hex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot hash missing file: " + path.string());
  std::uint64_t hash = 1469598103934665603ULL;
  char buf[8192];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 1099511628211ULL;
    }
    if (got < static_cast<std::streamsize>(sizeof(buf))) break;
  }
  char hex[20];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
  return hex;
}

}  // namespace albatch
