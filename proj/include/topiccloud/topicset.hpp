#pragma once

// Topic-set documents: parsing, validation, serialization, lemma merging and word truncation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"
#include "topiccloud/error.hpp"
#include "topiccloud/text.hpp"

namespace topiccloud {

struct WordEntry {
  std::string surface;
  double weight = 0.0;

  friend bool operator==(const WordEntry&, const WordEntry&) = default;
};

struct Topic {
  double proportion = 0.0;
  std::vector<WordEntry> words;

  double total_weight() const {
    return std::accumulate(words.begin(), words.end(), 0.0,
                           [](double acc, const WordEntry& w) { return acc + w.weight; });
  }

  friend bool operator==(const Topic&, const Topic&) = default;
};

struct TopicSet {
  std::vector<Topic> topics;
  std::optional<std::string> label;

  std::size_t word_count() const {
    std::size_t n = 0;
    for (const auto& t : topics) n += t.words.size();
    return n;
  }

  friend bool operator==(const TopicSet&, const TopicSet&) = default;
};

/// Throws ValidationError naming the first offending topic or word.
inline void validate(const TopicSet& set) {
  if (set.topics.empty()) throw ValidationError("topic set has no topics");
  for (std::size_t k = 0; k < set.topics.size(); ++k) {
    const auto& topic = set.topics[k];
    const auto where = "topic " + std::to_string(k);
    if (!std::isfinite(topic.proportion))
      throw ValidationError(where + ": proportion is not finite");
    if (!(topic.proportion > 0))
      throw ValidationError(where + ": proportion must be positive, got " +
                            text::significant(topic.proportion, 12));
    for (std::size_t i = 0; i < topic.words.size(); ++i) {
      const auto& w = topic.words[i];
      const auto wwhere = where + ", word " + std::to_string(i) + " '" + w.surface + "'";
      if (text::trim(w.surface).empty())
        throw ValidationError(where + ", word " + std::to_string(i) + ": empty surface");
      if (text::has_control_chars(w.surface))
        throw ValidationError(wwhere + ": surface contains control characters");
      if (!std::isfinite(w.weight)) throw ValidationError(wwhere + ": weight is not finite");
      if (w.weight < 0)
        throw ValidationError(wwhere + ": negative weight " + text::significant(w.weight, 12));
    }
  }
}

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view doc, std::size_t byte) {
  byte = std::min(byte, doc.size());
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte; ++i) {
    if (doc[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline double require_number(const nlohmann::json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + ": missing \"" + key + "\"");
  if (!it->is_number()) throw ParseError(path + "." + key + ": expected a number");
  return it->get<double>();
}

}  // namespace detail

/// Parses the JSON topic-set document
/// `{"label": string?, "topics": [{"proportion": number, "words": [{"w": string, "q": number}]}]}`.
inline TopicSet parse_topicset(std::string_view bytes) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports the 1-based byte index of the offending character.
    const auto byte = e.byte > 0 ? e.byte - 1 : 0;
    auto [line, col] = detail::line_column(bytes, byte);
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw ParseError(msg, line, col);
  }

  if (!doc.is_object()) throw ParseError("top level must be an object");
  TopicSet set;
  if (auto it = doc.find("label"); it != doc.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError("label: expected a string");
    set.label = it->get<std::string>();
  }
  auto topics = doc.find("topics");
  if (topics == doc.end()) throw ParseError("missing \"topics\"");
  if (!topics->is_array()) throw ParseError("topics: expected an array");

  for (std::size_t k = 0; k < topics->size(); ++k) {
    const auto& jt = (*topics)[k];
    const auto path = "topics[" + std::to_string(k) + "]";
    if (!jt.is_object()) throw ParseError(path + ": expected an object");
    Topic topic;
    topic.proportion = detail::require_number(jt, "proportion", path);
    if (auto words = jt.find("words"); words != jt.end()) {
      if (!words->is_array()) throw ParseError(path + ".words: expected an array");
      for (std::size_t i = 0; i < words->size(); ++i) {
        const auto& jw = (*words)[i];
        const auto wpath = path + ".words[" + std::to_string(i) + "]";
        if (!jw.is_object()) throw ParseError(wpath + ": expected an object");
        auto w = jw.find("w");
        if (w == jw.end() || !w->is_string()) throw ParseError(wpath + ".w: expected a string");
        topic.words.push_back({w->get<std::string>(), detail::require_number(jw, "q", wpath)});
      }
    }
    set.topics.push_back(std::move(topic));
  }
  validate(set);
  return set;
}

/// Keys in document order, numbers with up to 12 significant digits, one word per line.
inline std::string serialize_topicset(const TopicSet& set) {
  std::string out = "{\n";
  if (set.label) out += "  \"label\": " + text::json_quote(*set.label) + ",\n";
  out += "  \"topics\": [";
  for (std::size_t k = 0; k < set.topics.size(); ++k) {
    const auto& t = set.topics[k];
    out += k == 0 ? "\n" : ",\n";
    out += "    {\"proportion\": " + text::significant(t.proportion, 12) + ", \"words\": [";
    for (std::size_t i = 0; i < t.words.size(); ++i) {
      out += i == 0 ? "\n" : ",\n";
      out += "      {\"w\": " + text::json_quote(t.words[i].surface) +
             ", \"q\": " + text::significant(t.words[i].weight, 12) + "}";
    }
    out += t.words.empty() ? "]}" : "\n    ]}";
  }
  out += set.topics.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

/// Suffix-rule lemmatizer with an exception table.
///
/// The first rule whose suffix ends the word (leaving a non-empty stem) is applied once. A rule
/// whose replacement equals its suffix is a guard: it matches but leaves the word alone, so
/// `ss -> ss` ahead of `s -> ""` protects "glass". The rewritten word is accepted only if it is
/// itself a fixed point; otherwise the input is returned unchanged. Exception targets are always
/// fixed points. Together these make lemmatize idempotent.
class Lemmatizer {
public:
  struct Rule {
    std::string suffix;
    std::string replacement;
  };

  Lemmatizer() = default;
  Lemmatizer(std::vector<Rule> rules, std::unordered_map<std::string, std::string> exceptions)
      : rules_(std::move(rules)), exceptions_(std::move(exceptions)) {
    for (const auto& [from, to] : exceptions_) targets_.insert(to);
  }

  static Lemmatizer identity() { return {}; }

  const std::vector<Rule>& rules() const noexcept { return rules_; }
  const std::unordered_map<std::string, std::string>& exceptions() const noexcept {
    return exceptions_;
  }

  std::string lemmatize(const std::string& word) const {
    if (targets_.count(word)) return word;
    if (auto it = exceptions_.find(word); it != exceptions_.end()) return it->second;
    auto rewritten = apply_first_rule(word);
    if (rewritten && stable(*rewritten)) return *rewritten;
    return word;
  }

private:
  std::optional<std::string> apply_first_rule(const std::string& word) const {
    for (const auto& r : rules_) {
      if (word.size() > r.suffix.size() &&
          word.compare(word.size() - r.suffix.size(), r.suffix.size(), r.suffix) == 0) {
        return word.substr(0, word.size() - r.suffix.size()) + r.replacement;
      }
    }
    return std::nullopt;
  }

  bool stable(const std::string& word) const {
    if (targets_.count(word)) return true;
    if (exceptions_.count(word)) return false;
    auto again = apply_first_rule(word);
    return !again || *again == word;
  }

  std::vector<Rule> rules_;
  std::unordered_map<std::string, std::string> exceptions_;
  std::unordered_set<std::string> targets_;
};

/// Lemma rules file: `suffix<TAB>replacement`, `=surface<TAB>lemma`, `#` comments.
/// An empty replacement strips the suffix.
inline Lemmatizer parse_lemma_rules(std::string_view bytes) {
  std::vector<Lemmatizer::Rule> rules;
  std::unordered_map<std::string, std::string> exceptions;
  const auto all = text::lines(bytes);
  for (std::size_t n = 0; n < all.size(); ++n) {
    auto line = all[n];
    if (text::trim(line).empty() || text::trim(line).front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw ParseError("expected suffix<TAB>replacement", n + 1);
    auto lhs = std::string(line.substr(0, tab));
    auto rhs = std::string(text::trim(line.substr(tab + 1)));
    if (!lhs.empty() && lhs.front() == '=') {
      lhs.erase(0, 1);
      if (lhs.empty() || rhs.empty()) throw ParseError("empty exception entry", n + 1);
      exceptions[lhs] = rhs;
    } else {
      if (lhs.empty()) throw ParseError("empty suffix", n + 1);
      rules.push_back({std::move(lhs), std::move(rhs)});
    }
  }
  return Lemmatizer(std::move(rules), std::move(exceptions));
}

inline constexpr std::string_view kDefaultLemmaRules =
    "# English plural folding. First matching suffix wins; X<TAB>X lines are guards.\n"
    "=news\tnews\n"
    "=series\tseries\n"
    "=species\tspecies\n"
    "=children\tchild\n"
    "=men\tman\n"
    "=women\twoman\n"
    "=people\tpeople\n"
    "=mice\tmouse\n"
    "sses\tss\n"
    "ies\ty\n"
    "ss\tss\n"
    "us\tus\n"
    "is\tis\n"
    "s\t\n";

inline Lemmatizer default_lemmatizer() { return parse_lemma_rules(kDefaultLemmaRules); }

/// Within each topic, words sharing a lemma collapse into one entry at the position of the first
/// occurrence, with the lemma as surface and the summed weight.
inline TopicSet lemma_merge(const TopicSet& set, const Lemmatizer& lem) {
  TopicSet out;
  out.label = set.label;
  out.topics.reserve(set.topics.size());
  for (const auto& topic : set.topics) {
    Topic merged{topic.proportion, {}};
    std::unordered_map<std::string, std::size_t> slot;
    for (const auto& w : topic.words) {
      auto lemma = lem.lemmatize(w.surface);
      auto [it, inserted] = slot.try_emplace(lemma, merged.words.size());
      if (inserted)
        merged.words.push_back({std::move(lemma), w.weight});
      else
        merged.words[it->second].weight += w.weight;
    }
    out.topics.push_back(std::move(merged));
  }
  return out;
}

/// Keeps the m heaviest words of every topic (ties go to the earlier entry), in original order.
inline TopicSet truncate_words(const TopicSet& set, std::size_t m) {
  if (m == 0) throw ValidationError("word cap must be at least 1");
  TopicSet out = set;
  for (auto& topic : out.topics) {
    if (topic.words.size() <= m) continue;
    std::vector<std::size_t> order(topic.words.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return topic.words[a].weight > topic.words[b].weight;
    });
    order.resize(m);
    std::sort(order.begin(), order.end());
    std::vector<WordEntry> kept;
    kept.reserve(m);
    for (auto i : order) kept.push_back(std::move(topic.words[i]));
    topic.words = std::move(kept);
  }
  return out;
}

}  // namespace topiccloud
