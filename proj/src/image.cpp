#include "fontrec/image.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>

#include "fontrec/common.hpp"

namespace fontrec {

void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for write: " + path.string());
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  std::vector<std::uint8_t> bytes(img.px.size());
  for (size_t i = 0; i < img.px.size(); ++i) {
    double v = img.px[i];
    v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    bytes[i] = std::uint8_t(std::lround(v * 255.0));
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            std::streamsize(bytes.size()));
  if (!out) throw DataError("short write: " + path.string());
}

namespace {

int next_pgm_token(std::istream& in, const std::filesystem::path& path) {
  // Skips whitespace and '#' comment lines between header fields.
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  if (c == EOF || !std::isdigit(c))
    throw DataError("malformed PGM header: " + path.string());
  int value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    c = in.get();
  }
  return value;
}

}  // namespace

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open: " + path.string());
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] != 'P' || magic[1] != '5')
    throw DataError("not a binary PGM: " + path.string());
  const int width = next_pgm_token(in, path);
  const int height = next_pgm_token(in, path);
  const int maxval = next_pgm_token(in, path);
  if (width <= 0 || height <= 0 || maxval != 255)
    throw DataError("unsupported PGM geometry/maxval: " + path.string());
  std::vector<std::uint8_t> bytes(size_t(width) * size_t(height));
  in.read(reinterpret_cast<char*>(bytes.data()), std::streamsize(bytes.size()));
  if (in.gcount() != std::streamsize(bytes.size()))
    throw DataError("truncated PGM payload: " + path.string());
  GrayImage img;
  img.height = height;
  img.width = width;
  img.px.resize(bytes.size());
  for (size_t i = 0; i < bytes.size(); ++i) img.px[i] = bytes[i] / 255.0;
  return img;
}

}  // namespace fontrec
