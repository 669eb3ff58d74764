#include "rtdp/harness/manifest.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rtdp/rng.hpp"

namespace rtdp {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t file_fnv1a64(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("manifest: cannot open file: " + path);
  std::uint64_t h = 1469598103934665603ull;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    const std::streamsize got = in.gcount();
    if (got > 0) h = fnv1a64(buf, static_cast<std::size_t>(got), h);
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

void write_manifest(const std::string& manifest_path, const json& config,
                    const json& runs, std::vector<ManifestFileEntry> files) {
  std::sort(files.begin(), files.end(),
            [](const ManifestFileEntry& a, const ManifestFileEntry& b) {
              return a.path < b.path;
            });
  json doc;
  doc["schema_version"] = 1;
  doc["tool"] = "rtdp_lab";
  doc["config"] = config;
  doc["config_hash"] = hash_hex(fnv1a64(config.dump().data(), config.dump().size()));
  doc["runs"] = runs;
  json file_list = json::array();
  for (const ManifestFileEntry& f : files) {
    file_list.push_back({{"path", f.path}, {"bytes", f.bytes}, {"fnv1a64", f.fnv1a64_hex}});
  }
  doc["files"] = file_list;

  std::ofstream out(manifest_path, std::ios::trunc);
  if (!out) throw std::runtime_error("manifest: cannot open for writing: " + manifest_path);
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("manifest: write failed: " + manifest_path);
}

std::vector<std::string> verify_manifest(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("manifest: cannot open: " + manifest_path);
  json doc;
  in >> doc;

  const fs::path base = fs::path(manifest_path).parent_path();
  std::vector<std::string> problems;
  for (const auto& entry : doc.at("files")) {
    const std::string rel = entry.at("path").get<std::string>();
    const fs::path full = base / rel;
    std::error_code ec;
    if (!fs::exists(full, ec)) {
      problems.push_back(rel + ": missing");
      continue;
    }
    const auto size = fs::file_size(full, ec);
    if (ec || size != entry.at("bytes").get<std::uint64_t>()) {
      problems.push_back(rel + ": size mismatch");
      continue;
    }
    if (hash_hex(file_fnv1a64(full.string())) != entry.at("fnv1a64").get<std::string>()) {
      problems.push_back(rel + ": hash mismatch");
    }
  }
  return problems;
}

}  // namespace rtdp
