#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace fontrec {

struct ManifestEntry {
  std::string path;    // relative to the manifest file
  int class_id = -1;   // -1 = unlabeled
  std::uint64_t seed = 0;
};

// Line-oriented UTF-8 index: '#'-prefixed header lines, then
// path <TAB> class_id <TAB> seed.
struct DatasetManifest {
  int version = 1;
  int height = 105;
  std::string domain;  // "syn" | "pseudo-real"
  int class_count = 0;
  std::vector<ManifestEntry> entries;
};

void write_manifest(const DatasetManifest& m, const std::filesystem::path& path);

// Throws DataError with a line-number diagnostic on malformed input.
DatasetManifest read_manifest(const std::filesystem::path& path);

}  // namespace fontrec
