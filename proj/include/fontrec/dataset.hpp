#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "fontrec/image.hpp"
#include "fontrec/manifest.hpp"

namespace fontrec {

// Manifest plus its images, held as 8-bit buffers and decoded on demand.
class ImageSet {
 public:
  static ImageSet load(const std::filesystem::path& manifest_path);

  int size() const { return int(manifest_.entries.size()); }
  int n_classes() const { return manifest_.class_count; }
  int label(int i) const { return manifest_.entries[size_t(i)].class_id; }
  const DatasetManifest& manifest() const { return manifest_; }

  GrayImage image(int i) const;

 private:
  DatasetManifest manifest_;
  std::vector<std::vector<std::uint8_t>> pixels_;
  std::vector<std::pair<int, int>> dims_;  // (height, width)
};

}  // namespace fontrec
