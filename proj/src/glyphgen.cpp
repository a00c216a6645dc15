#include "fontrec/glyphgen.hpp"

#include <algorithm>
#include <cmath>

#include "fontrec/common.hpp"
#include "fontrec/glyphs.hpp"

namespace fontrec {

namespace {

constexpr double kUnit = 60.0;      // ascender height in pixels
constexpr int kBaselineRow = 78;    // leaves 18 px above ascenders, 6 below descenders

struct Seg {
  double ax, ay, bx, by;
  double radius;
  double corner;  // cap rounding radius
};

double segment_coverage(const Seg& s, double px, double py) {
  const double dx = s.bx - s.ax, dy = s.by - s.ay;
  const double len = std::hypot(dx, dy);
  double lx, ly;  // longitudinal excess / perpendicular distance
  if (len < 1e-9) {
    lx = std::abs(px - s.ax);
    ly = std::abs(py - s.ay);
  } else {
    const double ux = dx / len, uy = dy / len;
    const double rx = px - s.ax, ry = py - s.ay;
    const double t = rx * ux + ry * uy;
    lx = std::max({0.0, -t, t - len});
    ly = std::abs(-rx * uy + ry * ux);
  }
  // Rounded-box brush: half-size radius, cap corner rounding `corner`.
  const double rho = std::min(s.corner, s.radius);
  const double qx = lx - (s.radius - rho);
  const double qy = ly - (s.radius - rho);
  const double d = std::min(std::max(qx, qy), 0.0) +
                   std::hypot(std::max(qx, 0.0), std::max(qy, 0.0)) - rho;
  return std::clamp(0.5 - d, 0.0, 1.0);
}

void rasterize(GrayImage& img, const Seg& s) {
  const double pad = s.radius + 1.5;
  const int x0 = std::max(0, int(std::floor(std::min(s.ax, s.bx) - pad)));
  const int x1 = std::min(img.width - 1, int(std::ceil(std::max(s.ax, s.bx) + pad)));
  const int y0 = std::max(0, int(std::floor(std::min(s.ay, s.by) - pad)));
  const int y1 = std::min(img.height - 1, int(std::ceil(std::max(s.ay, s.by) + pad)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double cov = segment_coverage(s, double(x), double(y));
      if (cov > 0.0) img.at(y, x) = std::min(img.at(y, x), 1.0 - cov);
    }
  }
}

double wobble_offset(std::uint64_t seed, int font_id, int position, int wobble) {
  if (wobble == 0) return 0.0;
  const std::uint64_t h =
      derive_seed(seed, 0x776f62626cull, std::uint64_t(font_id),
                  std::uint64_t(position));
  const double u = double(h >> 11) * 0x1.0p-53;
  return double(wobble) * (2.0 * u - 1.0);
}

}  // namespace

FontClass font_class_for_id(int id) {
  if (id < 0 || id >= kFontClassCount)
    throw DataError("font class id out of range: " + std::to_string(id));
  // Bijective scramble over the 2*5*7*5*4*3 parameter grid; 2741 is coprime
  // with 4200, and consecutive ids land far apart in the grid.
  int idx = int((std::int64_t(id) * 2741) % kFontClassCount);
  static constexpr int kWobble[3] = {0, 1, 2};
  static constexpr int kCorner[4] = {0, 1, 2, 3};
  static constexpr double kWidth[5] = {0.70, 0.85, 1.00, 1.15, 1.30};
  static constexpr int kStroke[7] = {1, 2, 3, 4, 5, 6, 7};
  static constexpr double kSlant[5] = {-0.30, -0.15, 0.0, 0.15, 0.30};
  FontClass f;
  f.id = id;
  f.baseline_wobble = kWobble[idx % 3];
  idx /= 3;
  f.corner_radius = kCorner[idx % 4];
  idx /= 4;
  f.width_scale = kWidth[idx % 5];
  idx /= 5;
  f.stroke_width = kStroke[idx % 7];
  idx /= 7;
  f.slant = kSlant[idx % 5];
  idx /= 5;
  f.serif = idx % 2 == 1;
  return f;
}

GrayImage render_line(const RenderRequest& req, std::uint64_t seed) {
  if (req.text.empty()) throw DataError("render_line: empty text");
  if (req.spacing_px < 0 || req.spacing_px > 50)
    throw DataError("render_line: spacing out of [0, 50]");
  if (req.height != kLineHeight)
    throw DataError("render_line: height must be 105");
  for (char c : req.text)
    if (!glyph_supported(c))
      throw DataError(std::string("render_line: unsupported character '") + c +
                      "'");

  const FontClass font = font_class_for_id(req.font);
  const double r = font.stroke_width / 2.0;
  const double serif_half = font.serif ? std::max(1.5, r + 1.0) : 0.0;
  const double slant_reach = std::abs(font.slant) * kUnit;
  const int margin = int(std::ceil(r + serif_half + slant_reach + 2.0));

  double adv_sum = 0.0;
  for (char c : req.text) adv_sum += glyph_for(c).advance * kUnit * font.width_scale;
  const int width = 2 * margin + int(std::ceil(adv_sum)) +
                    req.spacing_px * int(req.text.size() - 1);

  GrayImage img = GrayImage::blank(kLineHeight, width, 1.0);

  std::vector<Seg> segs;
  double pen = margin;
  for (size_t i = 0; i < req.text.size(); ++i) {
    const GlyphSkeleton& glyph = glyph_for(req.text[i]);
    const double dy =
        wobble_offset(seed, font.id, int(i), font.baseline_wobble);
    auto to_img = [&](double gx, double gy) -> std::array<double, 2> {
      const double x = pen + gx * kUnit * font.width_scale + font.slant * gy * kUnit;
      const double y = kBaselineRow - gy * kUnit + dy;
      return {x, y};
    };
    const double serif_radius = std::max(0.6, 0.55 * r);
    auto add_serif = [&](const std::array<double, 2>& tip,
                         const std::array<double, 2>& prev) {
      // Horizontal bar at a near-vertical stroke terminal.
      const double tx = tip[0] - prev[0], ty = tip[1] - prev[1];
      if (std::abs(ty) <= 1.3 * std::abs(tx)) return;
      segs.push_back({tip[0] - serif_half, tip[1], tip[0] + serif_half, tip[1],
                      serif_radius, serif_radius});
    };
    for (const auto& stroke : glyph.strokes) {
      for (size_t p = 0; p + 1 < stroke.size(); ++p) {
        const auto a = to_img(stroke[p][0], stroke[p][1]);
        const auto b = to_img(stroke[p + 1][0], stroke[p + 1][1]);
        segs.push_back({a[0], a[1], b[0], b[1], r, double(font.corner_radius)});
      }
      if (stroke.size() == 1) {  // dot
        const auto a = to_img(stroke[0][0], stroke[0][1]);
        segs.push_back({a[0], a[1], a[0], a[1], r, double(font.corner_radius)});
        continue;
      }
      const bool closed =
          std::hypot(stroke.front()[0] - stroke.back()[0],
                     stroke.front()[1] - stroke.back()[1]) < 1e-9;
      if (font.serif && !closed) {
        add_serif(to_img(stroke.front()[0], stroke.front()[1]),
                  to_img(stroke[1][0], stroke[1][1]));
        add_serif(to_img(stroke.back()[0], stroke.back()[1]),
                  to_img(stroke[stroke.size() - 2][0],
                         stroke[stroke.size() - 2][1]));
      }
    }
    pen += glyph.advance * kUnit * font.width_scale + req.spacing_px;
  }
  for (const auto& s : segs) rasterize(img, s);
  return img;
}

std::string domain_name(DomainTag tag) {
  return tag == DomainTag::kSyn ? "syn" : "pseudo-real";
}

std::string sample_corpus_word(Rng& rng, int min_len, int max_len) {
  const auto& words = corpus_words();
  std::vector<const std::string*> eligible;
  eligible.reserve(words.size());
  for (const auto& w : words)
    if (int(w.size()) >= min_len && int(w.size()) <= max_len)
      eligible.push_back(&w);
  if (eligible.empty())
    throw DataError("no corpus words with length in [" +
                    std::to_string(min_len) + ", " + std::to_string(max_len) + "]");
  return *eligible[size_t(rng.uniform_int(0, std::int64_t(eligible.size()) - 1))];
}

GrayImage pseudo_real_perturb(const GrayImage& img, Rng& rng,
                              const DomainConfig& config) {
  GrayImage out =
      gaussian_blur(img, rng.uniform(config.pr_blur_min, config.pr_blur_max));
  const double gamma = rng.uniform(config.pr_gamma_min, config.pr_gamma_max);
  for (double& v : out.px) v = std::pow(v, gamma);
  const int n_rects =
      int(rng.uniform_int(config.pr_occlusions_min, config.pr_occlusions_max));
  const double total_area = double(out.width) * double(out.height);
  double budget = config.pr_occlusion_max_area * total_area;
  for (int i = 0; i < n_rects && budget > 16.0; ++i) {
    const double frac = rng.uniform(0.01, config.pr_occlusion_max_area /
                                              config.pr_occlusions_max);
    const double area = std::min(frac * total_area, budget);
    budget -= area;
    const double aspect = rng.uniform(0.5, 2.0);
    int rh = std::max(2, int(std::sqrt(area / aspect)));
    int rw = std::max(2, int(area / rh));
    rh = std::min(rh, out.height);
    rw = std::min(rw, out.width);
    const int y0 = int(rng.uniform_int(0, out.height - rh));
    const int x0 = int(rng.uniform_int(0, out.width - rw));
    for (int y = y0; y < y0 + rh; ++y)
      for (int x = x0; x < x0 + rw; ++x)
        out.at(y, x) = rng.bernoulli(0.5) ? 0.0 : 1.0;
  }
  return out;
}

DatasetManifest make_domain(const DomainConfig& config, DomainTag tag,
                            int n_per_class, Rng& rng,
                            const std::filesystem::path& out_dir) {
  if (n_per_class < 1) throw DataError("make_domain: n_per_class must be >= 1");
  if (config.n_classes < 1) throw DataError("make_domain: need >= 1 class");
  std::filesystem::create_directories(out_dir / config.image_subdir);

  DatasetManifest m;
  m.height = kLineHeight;
  m.domain = domain_name(tag);
  m.class_count = config.n_classes;

  AugmentConfig spacing_cfg;  // step-5 sampler; pseudo-real shifts the mean
  if (tag == DomainTag::kPseudoReal) {
    spacing_cfg.spacing_mean = config.pr_spacing_mean;
    spacing_cfg.spacing_std = config.pr_spacing_std;
  }

  for (int c = 0; c < config.n_classes; ++c) {
    for (int i = 0; i < n_per_class; ++i) {
      const std::string word =
          sample_corpus_word(rng, config.word_min_len, config.word_max_len);
      const int spacing = sample_spacing(rng, spacing_cfg);
      const std::uint64_t render_seed = rng.next_u64();
      RenderRequest req{word, c, kLineHeight, spacing};
      GrayImage img = render_line(req, render_seed);
      if (tag == DomainTag::kSyn) {
        if (config.syn_augment.enabled_steps != 0)
          img = augment_pipeline(img, config.syn_augment, rng);
      } else {
        img = pseudo_real_perturb(img, rng, config);
      }
      char name[64];
      std::snprintf(name, sizeof(name), "c%04d_i%05d.pgm", c, i);
      const std::string rel = config.image_subdir + "/" + name;
      write_pgm(img, out_dir / rel);
      m.entries.push_back({rel, config.labeled ? c : -1, render_seed});
    }
  }
  write_manifest(m, out_dir / "manifest.txt");
  return m;
}

}  // namespace fontrec
