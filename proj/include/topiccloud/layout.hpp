#pragma once

// Topic-cloud layout: topic filtering, slice allocation, word sizing and collision-free placement.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "topiccloud/error.hpp"
#include "topiccloud/geom.hpp"
#include "topiccloud/rng.hpp"
#include "topiccloud/style.hpp"
#include "topiccloud/text.hpp"
#include "topiccloud/topicset.hpp"

namespace topiccloud {

struct LayoutParams {
  double beta = 1.0;
  double mu = 10.0;
  double sigma = 0.0;
  double f_max = 72.0;
  double f_min = 10.0;
  double f_floor = 4.0;
  double radius = 380.0;
  int epsilon = 20;
  std::uint64_t seed = 42;
  int width = 800;
  int height = 800;
  std::optional<std::size_t> max_topics;

  void validate() const {
    auto fail = [](const std::string& m) { throw ValidationError("layout parameters: " + m); };
    if (!(beta > 0) || !std::isfinite(beta)) fail("beta must be positive");
    if (!(mu > 1) || !std::isfinite(mu)) fail("mu must be greater than 1");
    if (!(sigma >= 0) || !std::isfinite(sigma)) fail("sigma must be non-negative");
    if (!(f_max > 0) || !std::isfinite(f_max)) fail("f_max must be positive");
    if (!(f_min > 0) || f_min > f_max) fail("f_min must be positive and at most f_max");
    if (!(f_floor > 0) || f_floor > f_min) fail("f_floor must be positive and at most f_min");
    if (epsilon < 0 || epsilon > 255) fail("epsilon must be in [0, 255]");
    if (width <= 0 || height <= 0) fail("canvas dimensions must be positive");
    if (!(radius > 0) || 2 * radius > std::min(width, height))
      fail("radius must be positive and fit the canvas (2r <= min(width, height))");
    if (max_topics && *max_topics == 0) fail("max_topics must be at least 1");
  }
};

struct SliceSpec {
  std::size_t topic_index = 0;   // position in the filtered, sorted topic list
  std::size_t source_index = 0;  // position in the input topic set
  double start_angle = 0.0;
  double sweep = 0.0;
  double normalized_proportion = 0.0;
  double proportion = 0.0;
  Rgb color;
};

struct PlacedWord {
  std::string surface;
  double weight = 0.0;
  double requested_size = 0.0;
  double font_size = 0.0;
  Cell anchor;
  Extent box;
  Rgb color;
  std::size_t topic_index = 0;
};

struct SkippedWord {
  std::size_t topic_index = 0;
  std::string surface;
  double weight = 0.0;
  std::string reason;  // "below-sigma" or "no-fit"
};

struct DroppedTopic {
  std::size_t source_index = 0;
  std::size_t word_count = 0;
  std::string reason;  // "below-mu" or "max-topics"
};

struct FontInfo {
  std::string family;
  int ascent = 0;
  int descent = 0;
  int units_per_em = 1000;
};

struct LayoutResult {
  std::vector<SliceSpec> slices;
  std::vector<PlacedWord> words;
  std::vector<SkippedWord> skipped;
  std::vector<DroppedTopic> dropped_topics;
  LayoutParams params;
  Point center;
  FontInfo font;
  std::optional<std::string> label;
};

/// Palettes and metrics used by `layout`.
struct Style {
  Palette slice_palette = default_slice_palette();
  Palette word_palette = default_word_palette();
  FontMetrics metrics = default_metrics();
};

struct RankedTopic {
  std::size_t source_index = 0;
  Topic topic;
};

/// Sorts by descending proportion (stable) and drops topics with p < p_max / mu.
inline std::vector<RankedTopic> filter_topics(const TopicSet& set, double mu) {
  std::vector<RankedTopic> ranked;
  ranked.reserve(set.topics.size());
  for (std::size_t i = 0; i < set.topics.size(); ++i) ranked.push_back({i, set.topics[i]});
  std::stable_sort(ranked.begin(), ranked.end(), [](const RankedTopic& a, const RankedTopic& b) {
    return a.topic.proportion > b.topic.proportion;
  });
  if (ranked.empty()) return ranked;
  const double cutoff = ranked.front().topic.proportion / mu;
  std::erase_if(ranked, [&](const RankedTopic& t) { return t.topic.proportion < cutoff; });
  return ranked;
}

/// p'_k = p_k^beta / sum_j p_j^beta.
inline std::vector<double> normalize_proportions(std::span<const double> ps, double beta) {
  if (ps.empty()) throw ValidationError("normalize_proportions: empty list");
  std::vector<double> out;
  out.reserve(ps.size());
  for (double p : ps) {
    if (!(p > 0)) throw ValidationError("normalize_proportions: proportions must be positive");
    out.push_back(std::pow(p, beta));
  }
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& v : out) v /= total;
  return out;
}

/// Contiguous slices. The first slice starts at 270 - 180 p'_1, which centers it on the top of the
/// canvas; each later slice starts where the previous one ends. Boundaries are cumulative so the
/// last slice closes exactly on the first.
inline std::vector<SliceSpec> compute_slices(std::span<const double> pprimes) {
  if (pprimes.empty()) throw ValidationError("compute_slices: no proportions");
  const double a0 = 270.0 - 180.0 * pprimes[0];
  std::vector<SliceSpec> slices;
  slices.reserve(pprimes.size());
  double cumulative = 0.0;
  double begin = a0;
  for (std::size_t k = 0; k < pprimes.size(); ++k) {
    cumulative += pprimes[k];
    const double end = (k + 1 == pprimes.size()) ? a0 + 360.0 : a0 + 360.0 * cumulative;
    SliceSpec s;
    s.topic_index = k;
    s.start_angle = std::fmod(begin, 360.0);
    if (s.start_angle < 0) s.start_angle += 360.0;
    s.sweep = end - begin;
    s.normalized_proportion = pprimes[k];
    slices.push_back(s);
    begin = end;
  }
  return slices;
}

/// f = max(f_max (q / q_max)^beta, f_min). Requires 0 < q <= q_max.
inline double word_font_size(double q, double q_max, const LayoutParams& params) {
  if (!(q > 0) || q > q_max)
    throw ValidationError("word_font_size: weight must satisfy 0 < q <= q_max");
  if (q == q_max) return params.f_max;
  return std::max(params.f_max * std::pow(q / q_max, params.beta), params.f_min);
}

/// Box sizes that already had no admissible anchor in one slice. Occupancy only grows, so any box
/// at least as wide and as tall stays unplaceable there.
class FailedBoxes {
public:
  bool known_empty(Extent box) const {
    return std::any_of(failed_.begin(), failed_.end(),
                       [&](Extent f) { return box.w >= f.w && box.h >= f.h; });
  }
  void add(Extent box) {
    std::erase_if(failed_, [&](Extent f) { return f.w >= box.w && f.h >= box.h; });
    failed_.push_back(box);
  }

private:
  std::vector<Extent> failed_;
};

using Placement = std::variant<PlacedWord, SkippedWord>;

/// Searches the slice for an anchor, shrinking the font by one unit each time the admissible set
/// is empty. On success one uniform draw picks the anchor, three draws perturb the color, and the
/// box is marked occupied. Below f_floor the word is skipped and nothing is consumed.
inline Placement place_word(const std::string& surface, double weight, double initial_size,
                            std::size_t topic_index, const SliceMask& slice, OccupancyGrid& grid,
                            Rng& rng, const LayoutParams& params, const FontMetrics& metrics,
                            Rgb base_color, FailedBoxes* failed = nullptr) {
  for (double size = initial_size; size >= params.f_floor; size -= 1.0) {
    const Extent box = measure_text(surface, size, metrics);
    if (failed && failed->known_empty(box)) continue;
    auto candidates = slice.candidates(box, grid);
    if (candidates.empty()) {
      if (failed) failed->add(box);
      continue;
    }
    const Cell anchor = candidates[rng.below(candidates.size())];
    PlacedWord placed;
    placed.surface = surface;
    placed.weight = weight;
    placed.requested_size = initial_size;
    placed.font_size = size;
    placed.anchor = anchor;
    placed.box = box;
    placed.color = perturb_color(base_color, params.epsilon, rng);
    placed.topic_index = topic_index;
    grid.mark(anchor, box);
    return placed;
  }
  return SkippedWord{topic_index, surface, weight, "no-fit"};
}

/// The full pipeline. Identical inputs (including the seed) give identical results.
inline LayoutResult layout(const TopicSet& set, const LayoutParams& params,
                           const Style& style = Style{}) {
  params.validate();
  validate(set);

  LayoutResult result;
  result.params = params;
  result.label = set.label;
  result.center = {params.width / 2.0, params.height / 2.0};
  result.font = {style.metrics.family_name, style.metrics.ascent, style.metrics.descent,
                 style.metrics.units_per_em};

  auto ranked = filter_topics(set, params.mu);
  {
    std::vector<bool> kept(set.topics.size(), false);
    for (const auto& r : ranked) kept[r.source_index] = true;
    for (std::size_t i = 0; i < set.topics.size(); ++i)
      if (!kept[i]) result.dropped_topics.push_back({i, set.topics[i].words.size(), "below-mu"});
  }
  if (params.max_topics && ranked.size() > *params.max_topics) {
    for (std::size_t k = *params.max_topics; k < ranked.size(); ++k)
      result.dropped_topics.push_back(
          {ranked[k].source_index, ranked[k].topic.words.size(), "max-topics"});
    ranked.resize(*params.max_topics);
  }

  std::vector<double> proportions;
  for (const auto& r : ranked) proportions.push_back(r.topic.proportion);
  result.slices = compute_slices(normalize_proportions(proportions, params.beta));
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    result.slices[k].source_index = ranked[k].source_index;
    result.slices[k].proportion = ranked[k].topic.proportion;
    result.slices[k].color = slice_color(k, style.slice_palette);
  }

  double q_max = 0.0;
  for (const auto& r : ranked)
    for (const auto& w : r.topic.words) q_max = std::max(q_max, w.weight);

  // Per topic: words by descending weight (stable), minus those under sigma.
  std::vector<std::vector<WordEntry>> queues(ranked.size());
  std::size_t placeable = 0;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    auto words = ranked[k].topic.words;
    std::stable_sort(words.begin(), words.end(),
                     [](const WordEntry& a, const WordEntry& b) { return a.weight > b.weight; });
    for (auto& w : words) {
      if (w.weight < params.sigma)
        result.skipped.push_back({k, w.surface, w.weight, "below-sigma"});
      else
        queues[k].push_back(std::move(w));
    }
    placeable += queues[k].size();
  }
  if (placeable == 0) throw EmptyCloudError("no word survives the topic and weight thresholds");

  OccupancyGrid grid(params.width, params.height);
  Rng rng(params.seed);
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    const auto& spec = result.slices[k];
    const SliceMask mask({result.center, params.radius, spec.start_angle, spec.sweep},
                         params.width, params.height);
    const Rgb base = base_word_color(k, style.word_palette);
    FailedBoxes failed;
    for (const auto& w : queues[k]) {
      const double size = w.weight > 0 ? word_font_size(w.weight, q_max, params) : params.f_min;
      auto outcome = place_word(w.surface, w.weight, size, k, mask, grid, rng, params,
                                style.metrics, base, &failed);
      if (auto* placed = std::get_if<PlacedWord>(&outcome))
        result.words.push_back(std::move(*placed));
      else
        result.skipped.push_back(std::get<SkippedWord>(std::move(outcome)));
    }
  }
  return result;
}

namespace detail {

inline std::string num(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, end) : "null";
}

}  // namespace detail

/// Canonical JSON form of a layout: fixed key order, shortest round-trip numbers, one record per
/// line. Byte-identical for identical layouts.
inline std::string serialize_layout(const LayoutResult& r) {
  using detail::num;
  using text::json_quote;
  const auto& p = r.params;
  std::string out = "{\n";
  out += "  \"format\": \"topiccloud-layout/1\",\n";
  out += "  \"canvas\": {\"width\": " + std::to_string(p.width) +
         ", \"height\": " + std::to_string(p.height) + ", \"center\": [" + num(r.center.x) + ", " +
         num(r.center.y) + "], \"radius\": " + num(p.radius) + "},\n";
  out += "  \"params\": {\"beta\": " + num(p.beta) + ", \"mu\": " + num(p.mu) +
         ", \"sigma\": " + num(p.sigma) + ", \"f_max\": " + num(p.f_max) +
         ", \"f_min\": " + num(p.f_min) + ", \"f_floor\": " + num(p.f_floor) +
         ", \"epsilon\": " + std::to_string(p.epsilon) + ", \"seed\": " + std::to_string(p.seed) +
         ", \"max_topics\": " + (p.max_topics ? std::to_string(*p.max_topics) : "null") + "},\n";
  out += "  \"font\": {\"family\": " + json_quote(r.font.family) +
         ", \"ascent\": " + std::to_string(r.font.ascent) +
         ", \"descent\": " + std::to_string(r.font.descent) +
         ", \"units_per_em\": " + std::to_string(r.font.units_per_em) + "},\n";
  out += "  \"label\": " + (r.label ? json_quote(*r.label) : std::string("null")) + ",\n";

  auto list = [&](const char* key, std::size_t n, auto&& item, bool last) {
    out += std::string("  \"") + key + "\": [";
    for (std::size_t i = 0; i < n; ++i) out += (i ? ",\n    " : "\n    ") + item(i);
    out += n ? "\n  ]" : "]";
    out += last ? "\n" : ",\n";
  };
  list("slices", r.slices.size(), [&](std::size_t i) {
    const auto& s = r.slices[i];
    return "{\"topic\": " + std::to_string(s.topic_index) +
           ", \"source\": " + std::to_string(s.source_index) + ", \"start\": " + num(s.start_angle) +
           ", \"sweep\": " + num(s.sweep) + ", \"p\": " + num(s.proportion) +
           ", \"p_norm\": " + num(s.normalized_proportion) + ", \"color\": \"" + s.color.hex() +
           "\"}";
  }, false);
  list("words", r.words.size(), [&](std::size_t i) {
    const auto& w = r.words[i];
    return "{\"topic\": " + std::to_string(w.topic_index) + ", \"w\": " + json_quote(w.surface) +
           ", \"q\": " + num(w.weight) + ", \"requested_size\": " + num(w.requested_size) +
           ", \"size\": " + num(w.font_size) + ", \"x\": " + std::to_string(w.anchor.x) +
           ", \"y\": " + std::to_string(w.anchor.y) + ", \"box_w\": " + std::to_string(w.box.w) +
           ", \"box_h\": " + std::to_string(w.box.h) + ", \"color\": \"" + w.color.hex() + "\"}";
  }, false);
  list("skipped", r.skipped.size(), [&](std::size_t i) {
    const auto& s = r.skipped[i];
    return "{\"topic\": " + std::to_string(s.topic_index) + ", \"w\": " + json_quote(s.surface) +
           ", \"q\": " + num(s.weight) + ", \"reason\": " + json_quote(s.reason) + "}";
  }, false);
  list("dropped_topics", r.dropped_topics.size(), [&](std::size_t i) {
    const auto& d = r.dropped_topics[i];
    return "{\"source\": " + std::to_string(d.source_index) +
           ", \"words\": " + std::to_string(d.word_count) + ", \"reason\": " + json_quote(d.reason) +
           "}";
  }, true);
  out += "}\n";
  return out;
}

}  // namespace topiccloud
