#pragma once

// Colors, palettes and advance-width text measurement.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "topiccloud/error.hpp"
#include "topiccloud/geom.hpp"
#include "topiccloud/rng.hpp"
#include "topiccloud/text.hpp"

namespace topiccloud {

struct Rgb {
  int r = 0;
  int g = 0;
  int b = 0;

  std::string hex() const {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
  }

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Palette {
  std::vector<Rgb> colors;
};

/// Palette file: one `#RRGGBB` per line; blank lines and `#` comments (a `#` not followed by
/// exactly six hex digits) are ignored.
inline Palette parse_palette(std::string_view bytes) {
  Palette p;
  const auto all = text::lines(bytes);
  for (std::size_t n = 0; n < all.size(); ++n) {
    auto line = text::trim(all[n]);
    if (line.empty()) continue;
    auto is_hex = [](char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; };
    if (line.size() == 7 && line[0] == '#' && std::all_of(line.begin() + 1, line.end(), is_hex)) {
      auto channel = [&](int at) { return std::stoi(std::string(line.substr(at, 2)), nullptr, 16); };
      p.colors.push_back({channel(1), channel(3), channel(5)});
    } else if (line[0] != '#') {
      throw ParseError("expected #RRGGBB", n + 1);
    }
  }
  if (p.colors.empty()) throw ValidationError("palette is empty");
  return p;
}

inline constexpr std::string_view kDefaultSlicePalette =
    "# slice backgrounds\n"
    "#fde2e4\n"
    "#e2ece9\n"
    "#dfe7fd\n"
    "#fff1e6\n"
    "#eae4e9\n"
    "#f0efeb\n";

inline constexpr std::string_view kDefaultWordPalette =
    "# word base colors\n"
    "#8c1c13\n"
    "#1b4332\n"
    "#1d3557\n"
    "#9c4a00\n"
    "#4a1942\n"
    "#3d405b\n";

inline Palette default_slice_palette() { return parse_palette(kDefaultSlicePalette); }
inline Palette default_word_palette() { return parse_palette(kDefaultWordPalette); }

inline Rgb slice_color(std::size_t k, const Palette& bg) {
  return bg.colors.at(k % bg.colors.size());
}

inline Rgb base_word_color(std::size_t k, const Palette& fg) {
  return fg.colors.at(k % fg.colors.size());
}

/// Offsets each channel by a uniform integer in [-epsilon, epsilon] (draw order r, g, b), then
/// clamps to [0, 255].
inline Rgb perturb_color(Rgb base, int epsilon, Rng& rng) {
  if (epsilon <= 0) return base;
  auto channel = [&](int v) {
    return std::clamp(v + static_cast<int>(rng.between(-epsilon, epsilon)), 0, 255);
  };
  Rgb out;
  out.r = channel(base.r);
  out.g = channel(base.g);
  out.b = channel(base.b);
  return out;
}

struct FontMetrics {
  int units_per_em = 1000;
  std::unordered_map<char32_t, int> advance;
  int default_advance = 0;
  int ascent = 0;
  int descent = 0;
  std::string family_name;

  int advance_of(char32_t cp) const {
    auto it = advance.find(cp);
    return it == advance.end() ? default_advance : it->second;
  }
};

/// Metrics file. `#` comment lines (a `#` glyph entry is `#<TAB>advance`). Lines holding a TAB are `glyph<TAB>advance`, where glyph is one UTF-8 character
/// or `U+XXXX`. Other lines are `key value` for units_per_em, ascent, descent and family_name.
/// The space glyph's advance is the default for unmapped glyphs.
inline FontMetrics parse_metrics(std::string_view bytes) {
  FontMetrics fm;
  fm.units_per_em = 0;
  bool have_ascent = false, have_descent = false;
  const auto all = text::lines(bytes);
  for (std::size_t n = 0; n < all.size(); ++n) {
    const auto line = all[n];
    if (text::trim(line).empty()) continue;
    if (line.front() == '#' && (line.size() < 2 || line[1] != '\t')) continue;
    if (auto tab = line.find('\t'); tab != std::string_view::npos) {
      const auto glyph = line.substr(0, tab);
      auto adv = text::parse_int(line.substr(tab + 1));
      if (!adv || *adv < 0) throw ParseError("bad advance", n + 1);
      char32_t cp = 0;
      if (glyph.size() > 2 && glyph.substr(0, 2) == "U+") {
        auto code = std::string(glyph.substr(2));
        if (code.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos)
          throw ParseError("bad code point '" + std::string(glyph) + "'", n + 1);
        cp = static_cast<char32_t>(std::stoul(code, nullptr, 16));
      } else {
        auto cps = text::decode_utf8(glyph);
        if (cps.size() != 1) throw ParseError("glyph must be a single character", n + 1);
        cp = cps.front();
      }
      fm.advance[cp] = static_cast<int>(*adv);
      continue;
    }
    const auto trimmed = text::trim(line);
    const auto sp = trimmed.find_first_of(" \t");
    if (sp == std::string_view::npos) throw ParseError("expected 'key value'", n + 1);
    const auto key = trimmed.substr(0, sp);
    const auto value = text::trim(trimmed.substr(sp + 1));
    if (key == "family_name") {
      fm.family_name = std::string(value);
      continue;
    }
    auto v = text::parse_int(value);
    if (!v) throw ParseError("expected an integer for '" + std::string(key) + "'", n + 1);
    if (key == "units_per_em") {
      fm.units_per_em = static_cast<int>(*v);
    } else if (key == "ascent") {
      fm.ascent = static_cast<int>(*v);
      have_ascent = true;
    } else if (key == "descent") {
      // Accept the AFM sign convention (negative descender).
      fm.descent = static_cast<int>(*v < 0 ? -*v : *v);
      have_descent = true;
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", n + 1);
    }
  }
  if (fm.units_per_em <= 0) throw ValidationError("metrics: units_per_em must be positive");
  if (!have_ascent || !have_descent) throw ValidationError("metrics: ascent and descent required");
  if (fm.ascent + fm.descent <= 0) throw ValidationError("metrics: ascent + descent must be positive");
  if (fm.family_name.empty()) throw ValidationError("metrics: family_name required");
  fm.default_advance = fm.advance_of(U' ');
  return fm;
}

/// Helvetica advance widths (Adobe core-font AFM), printable ASCII.
inline constexpr std::string_view kDefaultMetrics =
    "units_per_em 1000\n"
    "ascent 718\n"
    "descent 207\n"
    "family_name Helvetica\n"
    "U+0020\t278\n!\t278\n\"\t355\n#\t556\n$\t556\n%\t889\n&\t667\n'\t191\n(\t333\n)\t333\n"
    "*\t389\n+\t584\n,\t278\n-\t333\n.\t278\n/\t278\n0\t556\n1\t556\n2\t556\n3\t556\n"
    "4\t556\n5\t556\n6\t556\n7\t556\n8\t556\n9\t556\n:\t278\n;\t278\n<\t584\n=\t584\n"
    ">\t584\n?\t556\n@\t1015\nA\t667\nB\t667\nC\t722\nD\t722\nE\t667\nF\t611\nG\t778\n"
    "H\t722\nI\t278\nJ\t500\nK\t667\nL\t556\nM\t833\nN\t722\nO\t778\nP\t667\nQ\t778\n"
    "R\t722\nS\t667\nT\t611\nU\t722\nV\t667\nW\t944\nX\t667\nY\t667\nZ\t611\n[\t278\n"
    "\\\t278\n]\t278\n^\t469\n_\t556\n`\t333\na\t556\nb\t556\nc\t500\nd\t556\ne\t556\n"
    "f\t278\ng\t556\nh\t556\ni\t222\nj\t222\nk\t500\nl\t222\nm\t833\nn\t556\no\t556\n"
    "p\t556\nq\t556\nr\t333\ns\t500\nt\t278\nu\t556\nv\t500\nw\t722\nx\t500\ny\t500\n"
    "z\t500\n{\t334\n|\t260\n}\t334\n~\t584\n";

inline FontMetrics default_metrics() { return parse_metrics(kDefaultMetrics); }

/// Advance-width bounding box: w = ceil(sum(advance) * size / upem),
/// h = ceil((ascent + descent) * size / upem), each at least 1 pixel.
inline Extent measure_text(std::string_view surface, double font_size, const FontMetrics& fm) {
  std::int64_t units = 0;
  for (char32_t cp : text::decode_utf8(surface)) units += fm.advance_of(cp);
  const double upem = fm.units_per_em;
  const auto w = static_cast<int>(std::ceil(static_cast<double>(units) * font_size / upem));
  const auto h = static_cast<int>(std::ceil((fm.ascent + fm.descent) * font_size / upem));
  return {std::max(w, 1), std::max(h, 1)};
}

}  // namespace topiccloud
