#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <string>

#include "hirenet/error.hpp"

namespace hirenet {

inline constexpr const char* kToolName = "hirenet";
inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64-bit content digest, hex encoded. Not cryptographic; it exists
/// so a manifest pins which input bytes produced an output.
inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return fnv1a_hex(bytes);
}

/// Reproducibility record embedded in every emitted JSON document. Fields
/// that vary between identical runs (wall-clock duration, thread count) are
/// deliberately kept out of the serialized form: same manifest, same bytes.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> config;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> input_digests;  // path -> digest
  std::string version = kToolVersion;
  double duration_seconds = 0.0;  // reported on stderr only

  void add_input(const std::string& path) { input_digests[path] = digest_file(path); }
};

}  // namespace hirenet
