#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace structcorr {

// Run record written next to every command's outputs. Data files are
// byte-identical across reruns with equal inputs; the manifest's timestamp is
// the one field outside that contract.
struct RunManifest {
  std::string command;                          // reconstructed invocation
  std::string tool_version;
  std::map<std::string, std::string> config;    // effective settings
  std::map<std::string, std::string> inputs;    // path -> fnv1a64 digest
  std::vector<std::string> outputs;             // data files written
};

// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters. Throws
// DataError if the file cannot be read.
std::string fnv1a64_file(const std::string& path);

// Serialize (JSON, sorted keys, trailing newline) and write to path.
void write_manifest(const RunManifest& manifest, const std::string& path);

}  // namespace structcorr
