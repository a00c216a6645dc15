#include "fontrec/glyphs.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "fontrec/common.hpp"

namespace fontrec {

namespace {

using Pt = std::array<double, 2>;
using Stroke = std::vector<Pt>;

Stroke arc(double cx, double cy, double rx, double ry, double deg0, double deg1,
           int n = 12) {
  Stroke s;
  s.reserve(size_t(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double a = (deg0 + (deg1 - deg0) * i / n) * std::numbers::pi / 180.0;
    s.push_back({cx + rx * std::cos(a), cy + ry * std::sin(a)});
  }
  return s;
}

Stroke ellipse(double cx, double cy, double rx, double ry) {
  return arc(cx, cy, rx, ry, 0.0, 360.0, 16);
}

std::map<char, GlyphSkeleton> build_table() {
  std::map<char, GlyphSkeleton> t;
  const double bowl_rx = 0.23, bowl_ry = 0.305, bowl_cy = 0.325;

  t['a'] = {0.55,
            {ellipse(0.26, bowl_cy, bowl_rx, bowl_ry),
             {{0.49, 0.65}, {0.49, 0.0}}}};
  t['b'] = {0.58,
            {{{0.06, 1.0}, {0.06, 0.0}},
             ellipse(0.29, bowl_cy, bowl_rx, bowl_ry)}};
  t['c'] = {0.52, {arc(0.28, bowl_cy, 0.24, bowl_ry, 40.0, 320.0, 14)}};
  t['d'] = {0.58,
            {{{0.52, 1.0}, {0.52, 0.0}},
             ellipse(0.29, bowl_cy, bowl_rx, bowl_ry)}};
  t['e'] = {0.55,
            {{{0.04, 0.36}, {0.50, 0.36}},
             arc(0.27, bowl_cy, bowl_rx, bowl_ry, 5.0, 325.0, 14)}};
  t['f'] = {0.48,
            {{{0.22, 0.0}, {0.22, 0.80}, {0.26, 0.93}, {0.38, 1.0}, {0.46, 0.98}},
             {{0.04, 0.65}, {0.42, 0.65}}}};
  t['g'] = {0.55,
            {ellipse(0.26, bowl_cy, bowl_rx, bowl_ry),
             {{0.49, 0.65},
              {0.49, -0.12},
              {0.43, -0.28},
              {0.28, -0.35},
              {0.12, -0.30}}}};
  t['h'] = {0.56,
            {{{0.06, 1.0}, {0.06, 0.0}},
             {{0.06, 0.42},
              {0.14, 0.60},
              {0.30, 0.65},
              {0.44, 0.56},
              {0.48, 0.40},
              {0.48, 0.0}}}};
  t['i'] = {0.26, {{{0.13, 0.65}, {0.13, 0.0}}, {{0.13, 0.88}}}};
  t['j'] = {0.30,
            {{{0.20, 0.65}, {0.20, -0.15}, {0.15, -0.29}, {0.02, -0.35}},
             {{0.20, 0.88}}}};
  t['k'] = {0.52,
            {{{0.06, 1.0}, {0.06, 0.0}},
             {{0.44, 0.65}, {0.07, 0.26}},
             {{0.20, 0.40}, {0.46, 0.0}}}};
  t['l'] = {0.26, {{{0.13, 1.0}, {0.13, 0.0}}}};
  t['m'] = {0.76,
            {{{0.05, 0.65}, {0.05, 0.0}},
             {{0.05, 0.45},
              {0.12, 0.62},
              {0.22, 0.65},
              {0.32, 0.58},
              {0.36, 0.42},
              {0.36, 0.0}},
             {{0.36, 0.45},
              {0.43, 0.62},
              {0.53, 0.65},
              {0.63, 0.58},
              {0.67, 0.42},
              {0.67, 0.0}}}};
  t['n'] = {0.54,
            {{{0.06, 0.65}, {0.06, 0.0}},
             {{0.06, 0.45},
              {0.13, 0.62},
              {0.26, 0.65},
              {0.40, 0.56},
              {0.46, 0.40},
              {0.46, 0.0}}}};
  t['o'] = {0.56, {ellipse(0.27, bowl_cy, 0.235, bowl_ry)}};
  t['p'] = {0.58,
            {{{0.06, 0.65}, {0.06, -0.35}},
             ellipse(0.29, bowl_cy, bowl_rx, bowl_ry)}};
  t['q'] = {0.55,
            {ellipse(0.26, bowl_cy, bowl_rx, bowl_ry),
             {{0.49, 0.65}, {0.49, -0.35}}}};
  t['r'] = {0.42,
            {{{0.06, 0.65}, {0.06, 0.0}},
             {{0.06, 0.42}, {0.13, 0.60}, {0.26, 0.65}, {0.38, 0.60}}}};
  t['s'] = {0.52,
            {{{0.46, 0.57},
              {0.36, 0.64},
              {0.20, 0.65},
              {0.08, 0.58},
              {0.06, 0.47},
              {0.12, 0.38},
              {0.26, 0.33},
              {0.40, 0.28},
              {0.46, 0.19},
              {0.43, 0.08},
              {0.32, 0.01},
              {0.16, 0.0},
              {0.05, 0.07}}}};
  t['t'] = {0.46,
            {{{0.20, 0.90}, {0.20, 0.12}, {0.24, 0.03}, {0.34, 0.0}, {0.43, 0.04}},
             {{0.02, 0.65}, {0.40, 0.65}}}};
  t['u'] = {0.54,
            {{{0.06, 0.65},
              {0.06, 0.20},
              {0.10, 0.05},
              {0.25, 0.0},
              {0.40, 0.05},
              {0.46, 0.18}},
             {{0.46, 0.65}, {0.46, 0.0}}}};
  t['v'] = {0.50, {{{0.03, 0.65}, {0.24, 0.0}, {0.45, 0.65}}}};
  t['w'] = {0.66,
            {{{0.02, 0.65},
              {0.17, 0.0},
              {0.32, 0.50},
              {0.47, 0.0},
              {0.62, 0.65}}}};
  t['x'] = {0.52, {{{0.04, 0.65}, {0.46, 0.0}}, {{0.46, 0.65}, {0.04, 0.0}}}};
  t['y'] = {0.52, {{{0.04, 0.65}, {0.25, 0.12}}, {{0.46, 0.65}, {0.10, -0.35}}}};
  t['z'] = {0.52,
            {{{0.05, 0.65}, {0.45, 0.65}, {0.05, 0.0}, {0.45, 0.0}}}};
  return t;
}

const std::map<char, GlyphSkeleton>& table() {
  static const std::map<char, GlyphSkeleton> t = build_table();
  return t;
}

}  // namespace

bool glyph_supported(char c) { return table().count(c) > 0; }

const GlyphSkeleton& glyph_for(char c) {
  const auto& t = table();
  auto it = t.find(c);
  if (it == t.end())
    throw DataError(std::string("unsupported character '") + c + "'");
  return it->second;
}

}  // namespace fontrec
