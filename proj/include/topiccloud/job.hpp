#pragma once

// One end-to-end job: read inputs, optionally extract topics, lay out, render, report.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "topiccloud/error.hpp"
#include "topiccloud/extract.hpp"
#include "topiccloud/layout.hpp"
#include "topiccloud/render.hpp"
#include "topiccloud/style.hpp"
#include "topiccloud/text.hpp"
#include "topiccloud/topicset.hpp"

namespace topiccloud {

enum class JobMode { topics, extract };

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 2,
  kExitValidation = 3,
  kExitEmptyCloud = 4,
  kExitIo = 5,
};

struct JobConfig {
  JobMode mode = JobMode::topics;
  std::string topics_path;
  std::string document_path;
  std::string embeddings_path;
  std::optional<std::string> stopwords_path;
  std::string output_path;
  std::optional<std::string> dump_layout_path;

  LayoutParams params;
  RenderOptions render;
  std::optional<std::string> slice_palette_path;
  std::optional<std::string> word_palette_path;
  std::optional<std::string> metrics_path;
  std::optional<std::string> lemma_rules_path;
  bool lemmatize = true;
  std::size_t max_words = 30;

  std::size_t k = 10;
  std::size_t max_iter = 100;
  double tol = 1e-6;
  Seeding seeding = Seeding::kmeans_plus_plus;

  int verbosity = 1;
};

/// Where every input word ended up. The categories partition the input words.
struct JobSummary {
  std::size_t input_words = 0;
  std::size_t missing_embedding = 0;
  std::size_t merged = 0;
  std::size_t capped = 0;
  std::size_t topic_dropped = 0;
  std::size_t filtered_sigma = 0;
  std::size_t skipped_no_fit = 0;
  std::size_t placed = 0;
  std::size_t topics_in = 0;
  std::size_t topics_kept = 0;
  std::vector<SkippedWord> no_fit;
  std::vector<std::string> warnings;
  std::uint64_t seed = 0;

  std::size_t accounted() const {
    return missing_embedding + merged + capped + topic_dropped + filtered_sigma + skipped_no_fit +
           placed;
  }
};

struct JobOutcome {
  int exit_code = kExitOk;
  std::string message;  // categorized error message when exit_code != 0
  JobSummary summary;
  std::optional<LayoutResult> layout;
};

inline void print_summary(std::ostream& os, const JobSummary& s) {
  os << "topics: " << s.topics_kept << " kept, " << (s.topics_in - s.topics_kept) << " dropped\n";
  os << "words: " << s.input_words << " in, " << s.placed << " placed, " << s.merged
     << " merged, " << s.capped << " capped, " << s.topic_dropped << " in dropped topics, "
     << s.filtered_sigma << " below sigma, " << s.skipped_no_fit << " skipped (no fit), "
     << s.missing_embedding << " missing embedding\n";
  for (const auto& w : s.no_fit)
    os << "  skipped: topic " << w.topic_index << " '" << w.surface << "' (" << w.reason << ")\n";
  for (const auto& w : s.warnings) os << "warning: " << w << "\n";
  os << "seed: " << s.seed << "\n";
}

namespace detail {

inline JobOutcome run_job(const JobConfig& cfg) {
  JobOutcome out;
  auto& sum = out.summary;
  sum.seed = cfg.params.seed;
  cfg.params.validate();

  Style style;
  if (cfg.slice_palette_path) style.slice_palette = parse_palette(text::read_file(*cfg.slice_palette_path));
  if (cfg.word_palette_path) style.word_palette = parse_palette(text::read_file(*cfg.word_palette_path));
  if (cfg.metrics_path) style.metrics = parse_metrics(text::read_file(*cfg.metrics_path));

  TopicSet set;
  if (cfg.mode == JobMode::topics) {
    set = parse_topicset(text::read_file(cfg.topics_path));
    sum.input_words = set.word_count();
  } else {
    const auto stop = cfg.stopwords_path ? parse_stopwords(text::read_file(*cfg.stopwords_path))
                                         : default_stopwords();
    const auto doc = tokenize(text::read_file(cfg.document_path), stop);
    const auto table = load_embeddings(text::read_file(cfg.embeddings_path));
    for (const auto& w : table.warnings) sum.warnings.push_back(cfg.embeddings_path + ": " + w);
    auto ex = extract_topics(doc, table, cfg.k, cfg.params.seed, cfg.max_iter, cfg.tol, cfg.seeding);
    sum.input_words = doc.counts.size();
    sum.missing_embedding = ex.missing.size();
    if (!ex.missing.empty())
      sum.warnings.push_back(std::to_string(ex.missing.size()) + " document words have no embedding");
    set = std::move(ex.topics);
  }
  sum.topics_in = set.topics.size();

  const std::size_t before_merge = set.word_count();
  if (cfg.lemmatize) {
    const auto lem = cfg.lemma_rules_path ? parse_lemma_rules(text::read_file(*cfg.lemma_rules_path))
                                          : default_lemmatizer();
    set = lemma_merge(set, lem);
  }
  sum.merged = before_merge - set.word_count();
  const std::size_t before_cap = set.word_count();
  set = truncate_words(set, cfg.max_words);
  sum.capped = before_cap - set.word_count();

  auto result = layout(set, cfg.params, style);
  sum.topics_kept = result.slices.size();
  for (const auto& d : result.dropped_topics) sum.topic_dropped += d.word_count;
  for (const auto& s : result.skipped) {
    if (s.reason == "below-sigma") {
      ++sum.filtered_sigma;
    } else {
      ++sum.skipped_no_fit;
      sum.no_fit.push_back(s);
    }
  }
  sum.placed = result.words.size();

  text::write_file(cfg.output_path, render_svg(result, cfg.render));
  if (cfg.dump_layout_path) text::write_file(*cfg.dump_layout_path, serialize_layout(result));
  out.layout = std::move(result);
  return out;
}

}  // namespace detail

/// Runs a job, mapping failures onto exit codes: input parse 2, validation 3, empty cloud 4, i/o 5.
inline JobOutcome run(const JobConfig& cfg) {
  try {
    return detail::run_job(cfg);
  } catch (const ParseError& e) {
    return {kExitParse, std::string("parse error: ") + e.what(), {}, {}};
  } catch (const EmptyCloudError& e) {
    return {kExitEmptyCloud, e.what(), {}, {}};
  } catch (const ValidationError& e) {
    return {kExitValidation, std::string("validation error: ") + e.what(), {}, {}};
  } catch (const IoError& e) {
    return {kExitIo, std::string("i/o error: ") + e.what(), {}, {}};
  }
}

}  // namespace topiccloud
