#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace rtdp {

struct ManifestFileEntry {
  std::string path;  // relative to the manifest directory
  std::uint64_t bytes = 0;
  std::string fnv1a64_hex;
};

// Hash of a file's raw bytes.
std::uint64_t file_fnv1a64(const std::string& path);
std::string hash_hex(std::uint64_t h);

// Writes manifest.json: the resolved config, its hash, per-run status
// entries and a hash per written file. Entries are sorted by path.
void write_manifest(const std::string& manifest_path, const nlohmann::json& config,
                    const nlohmann::json& runs,
                    std::vector<ManifestFileEntry> files);

// Re-hashes every listed file; returns a list of problems (empty = ok).
std::vector<std::string> verify_manifest(const std::string& manifest_path);

}  // namespace rtdp
