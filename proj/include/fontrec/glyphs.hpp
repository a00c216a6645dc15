#pragma once

#include <array>
#include <vector>

namespace fontrec {

// Letter skeletons in em units: baseline y=0, x-height 0.65, ascender 1.0,
// descender -0.35; x in [0, advance]. Single-point strokes are dots.
struct GlyphSkeleton {
  double advance;
  std::vector<std::vector<std::array<double, 2>>> strokes;
};

bool glyph_supported(char c);
const GlyphSkeleton& glyph_for(char c);  // DataError for unsupported chars

}  // namespace fontrec
