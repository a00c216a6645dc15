#include "fontrec/dataset.hpp"

#include <cmath>

#include "fontrec/common.hpp"

namespace fontrec {

ImageSet ImageSet::load(const std::filesystem::path& manifest_path) {
  ImageSet set;
  set.manifest_ = read_manifest(manifest_path);
  const auto base = manifest_path.parent_path();
  set.pixels_.reserve(set.manifest_.entries.size());
  set.dims_.reserve(set.manifest_.entries.size());
  for (const auto& e : set.manifest_.entries) {
    GrayImage img = read_pgm(base / e.path);
    if (img.height != set.manifest_.height)
      throw DataError(e.path + ": height " + std::to_string(img.height) +
                      " does not match manifest height " +
                      std::to_string(set.manifest_.height));
    std::vector<std::uint8_t> bytes(img.px.size());
    for (size_t i = 0; i < img.px.size(); ++i)
      bytes[i] = std::uint8_t(std::lround(img.px[i] * 255.0));
    set.pixels_.push_back(std::move(bytes));
    set.dims_.emplace_back(img.height, img.width);
  }
  return set;
}

GrayImage ImageSet::image(int i) const {
  const auto& [h, w] = dims_[size_t(i)];
  GrayImage img;
  img.height = h;
  img.width = w;
  img.px.resize(size_t(h) * size_t(w));
  const auto& bytes = pixels_[size_t(i)];
  for (size_t p = 0; p < bytes.size(); ++p) img.px[p] = bytes[p] / 255.0;
  return img;
}

}  // namespace fontrec
