#pragma once

#include <array>
#include <cstdint>

#include "fontrec/image.hpp"
#include "fontrec/rng.hpp"

namespace fontrec {

inline constexpr int kPatchSize = 105;
inline constexpr double kTrainSqueezeRatio = 2.5;

constexpr unsigned step_bit(int step) { return 1u << unsigned(step); }

// Augmentation step numbering: 1 noise, 2 blur, 3 affine, 4 shading,
// 5 spacing (acts at render time), 6 aspect ratio.
struct AugmentConfig {
  double noise_std = 3.0;  // gray levels on the 0-255 scale
  double blur_sigma_min = 2.5;
  double blur_sigma_max = 3.5;
  double affine_max_rotation_deg = 4.0;
  double affine_max_shear = 0.1;
  double shading_max_delta = 30.0;  // gray levels on the 0-255 scale
  double spacing_mean = 10.0;
  double spacing_std = 40.0;
  int spacing_min = 0;
  int spacing_max = 50;
  double aspect_ratio_min = 5.0 / 6.0;
  double aspect_ratio_max = 7.0 / 6.0;
  unsigned enabled_steps = step_bit(1) | step_bit(2) | step_bit(3) |
                           step_bit(4) | step_bit(5) | step_bit(6);

  bool step_enabled(int step) const { return enabled_steps & step_bit(step); }

  static AugmentConfig none() {
    AugmentConfig c;
    c.enabled_steps = 0;
    return c;
  }
  // Steps 1-4.
  static AugmentConfig standard() {
    AugmentConfig c;
    c.enabled_steps = step_bit(1) | step_bit(2) | step_bit(3) | step_bit(4);
    return c;
  }
  // Steps 1-6.
  static AugmentConfig full() { return AugmentConfig{}; }
};

struct Patch {
  GrayImage image;  // exactly kPatchSize x kPatchSize
  int source_id = -1;
  int offset_x = 0;
  int offset_y = 0;
  double squeeze_ratio = 1.0;
};

// Step 1: i.i.d. zero-mean Gaussian on the 0-255 scale, then clamp.
GrayImage add_noise(const GrayImage& img, Rng& rng, double std_gray);

// Step 2: separable Gaussian, radius ceil(3*sigma), clamp-to-edge borders.
GrayImage gaussian_blur(const GrayImage& img, double sigma);

// Affine resampling about the image center; bilinear, borders filled with
// background. `fwd` (row-major 2x2, acting on (x, y)) maps source coords to
// output coords; sampling inverts it.
GrayImage affine_apply(const GrayImage& img, const std::array<double, 4>& fwd);

// Step 3: random rotation/shear within config bounds.
GrayImage perspective_affine(const GrayImage& img, Rng& rng,
                             const AugmentConfig& config);

// Step 4: linear illumination ramp of random direction, peak-to-peak
// amplitude <= max_delta gray levels.
GrayImage shading(const GrayImage& img, Rng& rng, double max_delta);

// Step 5: Gaussian(mean, std) clamped into [min, max], rounded to pixels.
int sample_spacing(Rng& rng, const AugmentConfig& config = {});

// Step 6: width rescaled by 1/r with r uniform in [ratio_min, ratio_max].
GrayImage squeeze_aspect(const GrayImage& img, Rng& rng, double ratio_min,
                         double ratio_max);

// Width scaled to target_ratio * height (rounding: nearest, ties to even).
GrayImage squeeze_to_ratio(const GrayImage& img, double target_ratio);

// Horizontal bilinear resample to an explicit width.
GrayImage resample_width(const GrayImage& img, int new_width);

// Uniform random horizontal 105x105 crop; narrower images are padded with
// background on the right first.
Patch sample_patch(const GrayImage& img, Rng& rng, int source_id = -1,
                   double squeeze_ratio = 1.0);

// Deterministic centered crop, same padding rule. Used for validation views.
Patch center_patch(const GrayImage& img, int source_id = -1,
                   double squeeze_ratio = 1.0);

// Enabled steps in order 6, 3, 2, 4, 1 (geometry before photometry).
GrayImage augment_pipeline(const GrayImage& img, const AugmentConfig& config,
                           Rng& rng);

}  // namespace fontrec
