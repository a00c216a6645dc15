#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fontrec/augment.hpp"
#include "fontrec/image.hpp"
#include "fontrec/manifest.hpp"
#include "fontrec/rng.hpp"

namespace fontrec {

inline constexpr int kLineHeight = 105;
inline constexpr int kFontClassCount = 4200;

// One synthetic font: a parameter tuple over the skeleton alphabet.
struct FontClass {
  int id = 0;
  int stroke_width = 1;        // pixels, 1..7
  double slant = 0.0;          // shear factor, -0.4..0.4
  double width_scale = 1.0;    // glyph aspect multiplier, 0.6..1.4
  bool serif = false;
  int corner_radius = 0;       // pixels, 0..3
  int baseline_wobble = 0;     // pixels, 0..2
};

// Deterministic table; distinct ids map to distinct parameter tuples.
// Consecutive ids are scrambled across the parameter grid so small class
// sets stay visually spread.
FontClass font_class_for_id(int id);

struct RenderRequest {
  std::string text;      // non-empty, lowercase a-z
  int font = 0;          // FontClass id
  int height = kLineHeight;
  int spacing_px = 10;   // 0..50
};

// Deterministic for a fixed (request, seed). Width = 2*margin +
// round-up(sum of advances) + spacing*(len-1), margin independent of text.
GrayImage render_line(const RenderRequest& req, std::uint64_t seed);

const std::vector<std::string>& corpus_words();  // bundled 1,000-word list
std::string sample_corpus_word(Rng& rng, int min_len, int max_len);

enum class DomainTag { kSyn, kPseudoReal };

std::string domain_name(DomainTag tag);

struct DomainConfig {
  int n_classes = 10;
  bool labeled = true;
  int word_min_len = 4;
  int word_max_len = 10;
  // Steps applied to SYN renders at generation time (none by default; the
  // training loaders augment on the fly).
  AugmentConfig syn_augment = AugmentConfig::none();
  // Pseudo-real recipe: perturbations held out of the training augmentation.
  double pr_spacing_mean = 25.0;
  double pr_spacing_std = 40.0;
  double pr_blur_min = 3.5;
  double pr_blur_max = 4.5;
  double pr_gamma_min = 0.6;
  double pr_gamma_max = 1.5;
  int pr_occlusions_min = 1;
  int pr_occlusions_max = 3;
  double pr_occlusion_max_area = 0.10;  // total fraction of the image
  std::string image_subdir = "images";
};

// Held-out perturbation set: harsher blur, gamma shift, salt-and-pepper
// occlusion rectangles.
GrayImage pseudo_real_perturb(const GrayImage& img, Rng& rng,
                              const DomainConfig& config);

// Renders n_per_class images per class into out_dir and returns the manifest
// (also written to out_dir / "manifest.txt").
DatasetManifest make_domain(const DomainConfig& config, DomainTag tag,
                            int n_per_class, Rng& rng,
                            const std::filesystem::path& out_dir);

}  // namespace fontrec
