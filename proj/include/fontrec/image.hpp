#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fontrec {

// Height-normalized single-channel raster; 0 = ink, 1 = background.
struct GrayImage {
  int height = 0;
  int width = 0;
  std::vector<double> px;  // row-major, values in [0, 1]

  static GrayImage blank(int h, int w, double value = 1.0) {
    GrayImage img;
    img.height = h;
    img.width = w;
    img.px.assign(size_t(h) * size_t(w), value);
    return img;
  }

  double& at(int y, int x) { return px[size_t(y) * size_t(width) + size_t(x)]; }
  double at(int y, int x) const { return px[size_t(y) * size_t(width) + size_t(x)]; }

  bool in_range() const {
    for (double v : px)
      if (!(v >= 0.0 && v <= 1.0)) return false;
    return true;
  }

  void clamp() {
    for (double& v : px) v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
  }
};

// Binary PGM (P5), maxval 255, pixel = round(value * 255).
void write_pgm(const GrayImage& img, const std::filesystem::path& path);
GrayImage read_pgm(const std::filesystem::path& path);

}  // namespace fontrec
