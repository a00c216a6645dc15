#include "fontrec/augment.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <numbers>

#include "fontrec/common.hpp"

namespace fontrec {

namespace {

// Nearest, ties to even — keeps resampled widths bit-stable.
int round_half_even(double x) { return int(std::nearbyint(x)); }

double bilinear_sample(const GrayImage& img, double y, double x, double bg) {
  if (y < -0.5 || x < -0.5 || y > img.height - 0.5 || x > img.width - 0.5)
    return bg;
  const int y0 = int(std::floor(y));
  const int x0 = int(std::floor(x));
  const double fy = y - y0;
  const double fx = x - x0;
  auto fetch = [&](int yy, int xx) {
    if (yy < 0 || xx < 0 || yy >= img.height || xx >= img.width) return bg;
    return img.at(yy, xx);
  };
  const double top = fetch(y0, x0) * (1 - fx) + fetch(y0, x0 + 1) * fx;
  const double bot = fetch(y0 + 1, x0) * (1 - fx) + fetch(y0 + 1, x0 + 1) * fx;
  return top * (1 - fy) + bot * fy;
}

}  // namespace

GrayImage add_noise(const GrayImage& img, Rng& rng, double std_gray) {
  GrayImage out = img;
  if (std_gray <= 0.0) return out;
  const double s = std_gray / 255.0;
  for (double& v : out.px) {
    v += s * rng.normal();
    v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
  }
  return out;
}

GrayImage gaussian_blur(const GrayImage& img, double sigma) {
  if (sigma <= 0.0) return img;
  const int radius = int(std::ceil(3.0 * sigma));
  std::vector<double> kernel(size_t(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-0.5 * (i / sigma) * (i / sigma));
    kernel[size_t(i + radius)] = w;
    sum += w;
  }
  for (double& w : kernel) w /= sum;

  GrayImage tmp = GrayImage::blank(img.height, img.width, 0.0);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int xx = std::clamp(x + i, 0, img.width - 1);
        acc += kernel[size_t(i + radius)] * img.at(y, xx);
      }
      tmp.at(y, x) = acc;
    }
  }
  GrayImage out = GrayImage::blank(img.height, img.width, 0.0);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int yy = std::clamp(y + i, 0, img.height - 1);
        acc += kernel[size_t(i + radius)] * tmp.at(yy, x);
      }
      out.at(y, x) = std::clamp(acc, 0.0, 1.0);
    }
  }
  return out;
}

GrayImage affine_apply(const GrayImage& img, const std::array<double, 4>& fwd) {
  // Invert the forward 2x2 map; sample source at M^{-1} (p - c) + c.
  const double det = fwd[0] * fwd[3] - fwd[1] * fwd[2];
  if (std::abs(det) < 1e-12) throw DimensionError("affine map is singular");
  const double inv[4] = {fwd[3] / det, -fwd[1] / det, -fwd[2] / det,
                         fwd[0] / det};
  const double cy = (img.height - 1) / 2.0;
  const double cx = (img.width - 1) / 2.0;
  GrayImage out = GrayImage::blank(img.height, img.width, 1.0);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const double dx = x - cx, dy = y - cy;
      const double sx = inv[0] * dx + inv[1] * dy + cx;
      const double sy = inv[2] * dx + inv[3] * dy + cy;
      out.at(y, x) = std::clamp(bilinear_sample(img, sy, sx, 1.0), 0.0, 1.0);
    }
  }
  return out;
}

GrayImage perspective_affine(const GrayImage& img, Rng& rng,
                             const AugmentConfig& config) {
  const double theta = rng.uniform(-config.affine_max_rotation_deg,
                                   config.affine_max_rotation_deg) *
                       std::numbers::pi / 180.0;
  const double shear = rng.uniform(-config.affine_max_shear,
                                   config.affine_max_shear);
  const double c = std::cos(theta), s = std::sin(theta);
  // rotation * shear
  const std::array<double, 4> fwd = {c, c * shear - s, s, s * shear + c};
  return affine_apply(img, fwd);
}

GrayImage shading(const GrayImage& img, Rng& rng, double max_delta) {
  GrayImage out = img;
  if (max_delta <= 0.0) return out;
  const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double amplitude = rng.uniform(0.0, max_delta) / 255.0;  // peak-to-peak
  const double ux = std::cos(phi), uy = std::sin(phi);
  double lo = 0.0, hi = 0.0;
  const double corners[4][2] = {{0, 0},
                                {double(img.width - 1), 0},
                                {0, double(img.height - 1)},
                                {double(img.width - 1), double(img.height - 1)}};
  lo = hi = corners[0][0] * ux + corners[0][1] * uy;
  for (const auto& p : corners) {
    const double proj = p[0] * ux + p[1] * uy;
    lo = std::min(lo, proj);
    hi = std::max(hi, proj);
  }
  const double span = std::max(hi - lo, 1e-9);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const double proj = (x * ux + y * uy - lo) / span;  // 0..1
      const double delta = amplitude * (proj - 0.5);
      out.at(y, x) = std::clamp(out.at(y, x) + delta, 0.0, 1.0);
    }
  }
  return out;
}

int sample_spacing(Rng& rng, const AugmentConfig& config) {
  double v = rng.normal(config.spacing_mean, config.spacing_std);
  v = std::clamp(v, double(config.spacing_min), double(config.spacing_max));
  return round_half_even(v);
}

GrayImage resample_width(const GrayImage& img, int new_width) {
  if (new_width < 1) throw DimensionError("resample_width needs width >= 1");
  if (new_width == img.width) return img;
  GrayImage out = GrayImage::blank(img.height, new_width, 1.0);
  const double scale = double(img.width) / double(new_width);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < new_width; ++x) {
      const double sx = (x + 0.5) * scale - 0.5;
      out.at(y, x) = std::clamp(bilinear_sample(img, y, sx, 1.0), 0.0, 1.0);
    }
  }
  return out;
}

GrayImage squeeze_aspect(const GrayImage& img, Rng& rng, double ratio_min,
                         double ratio_max) {
  const double r = rng.uniform(ratio_min, ratio_max);
  const int new_width = std::max(1, round_half_even(img.width / r));
  return resample_width(img, new_width);
}

GrayImage squeeze_to_ratio(const GrayImage& img, double target_ratio) {
  if (target_ratio <= 0.0) throw DimensionError("squeeze ratio must be positive");
  const int new_width = std::max(1, round_half_even(target_ratio * img.height));
  return resample_width(img, new_width);
}

Patch sample_patch(const GrayImage& img, Rng& rng, int source_id,
                   double squeeze_ratio) {
  if (img.height != kPatchSize)
    throw DimensionError("sample_patch expects height-105 input");
  const GrayImage* src = &img;
  GrayImage padded;
  if (img.width < kPatchSize) {
    padded = GrayImage::blank(kPatchSize, kPatchSize, 1.0);
    for (int y = 0; y < img.height; ++y)
      for (int x = 0; x < img.width; ++x) padded.at(y, x) = img.at(y, x);
    src = &padded;
  }
  const int max_off = src->width - kPatchSize;
  const int off = max_off > 0 ? int(rng.uniform_int(0, max_off)) : 0;
  Patch p;
  p.image = GrayImage::blank(kPatchSize, kPatchSize, 1.0);
  for (int y = 0; y < kPatchSize; ++y)
    for (int x = 0; x < kPatchSize; ++x) p.image.at(y, x) = src->at(y, x + off);
  p.source_id = source_id;
  p.offset_x = off;
  p.offset_y = 0;
  p.squeeze_ratio = squeeze_ratio;
  return p;
}

Patch center_patch(const GrayImage& img, int source_id, double squeeze_ratio) {
  if (img.height != kPatchSize)
    throw DimensionError("center_patch expects height-105 input");
  const GrayImage* src = &img;
  GrayImage padded;
  if (img.width < kPatchSize) {
    padded = GrayImage::blank(kPatchSize, kPatchSize, 1.0);
    for (int y = 0; y < img.height; ++y)
      for (int x = 0; x < img.width; ++x) padded.at(y, x) = img.at(y, x);
    src = &padded;
  }
  const int off = (src->width - kPatchSize) / 2;
  Patch p;
  p.image = GrayImage::blank(kPatchSize, kPatchSize, 1.0);
  for (int y = 0; y < kPatchSize; ++y)
    for (int x = 0; x < kPatchSize; ++x) p.image.at(y, x) = src->at(y, x + off);
  p.source_id = source_id;
  p.offset_x = off;
  p.squeeze_ratio = squeeze_ratio;
  return p;
}

GrayImage augment_pipeline(const GrayImage& img, const AugmentConfig& config,
                           Rng& rng) {
  GrayImage out = img;
  if (config.step_enabled(6))
    out = squeeze_aspect(out, rng, config.aspect_ratio_min,
                         config.aspect_ratio_max);
  if (config.step_enabled(3)) out = perspective_affine(out, rng, config);
  if (config.step_enabled(2))
    out = gaussian_blur(out,
                        rng.uniform(config.blur_sigma_min, config.blur_sigma_max));
  if (config.step_enabled(4)) out = shading(out, rng, config.shading_max_delta);
  if (config.step_enabled(1)) out = add_noise(out, rng, config.noise_std);
  return out;
}

}  // namespace fontrec
