#include "structcorr/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "structcorr/errors.hpp"

namespace structcorr {

std::string fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file for digest: " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
    if (got < static_cast<std::streamsize>(sizeof(buf))) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(hex);
}

namespace {

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buf);
}

}  // namespace

void write_manifest(const RunManifest& manifest, const std::string& path) {
  nlohmann::json j;  // map-backed: keys serialize in sorted order
  j["command"] = manifest.command;
  j["tool_version"] = manifest.tool_version;
  j["timestamp"] = utc_timestamp();
  j["config"] = nlohmann::json::object();
  for (const auto& [key, value] : manifest.config) j["config"][key] = value;
  j["inputs"] = nlohmann::json::object();
  for (const auto& [key, value] : manifest.inputs) j["inputs"][key] = value;
  j["outputs"] = manifest.outputs;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write manifest: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw DataError("failed writing manifest: " + path);
}

}  // namespace structcorr
