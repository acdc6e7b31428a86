#pragma once

// Topic extraction from a raw document: tokenization, embedding lookup and spherical k-means.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "topiccloud/error.hpp"
#include "topiccloud/rng.hpp"
#include "topiccloud/text.hpp"
#include "topiccloud/topicset.hpp"

namespace topiccloud {

/// Word vectors, unit-normalized at load time, in file order.
struct EmbeddingTable {
  std::size_t dim = 0;
  std::vector<std::string> words;
  std::vector<std::vector<double>> vectors;
  std::vector<std::string> warnings;

  const std::vector<double>* find(const std::string& word) const {
    auto it = index_.find(word);
    return it == index_.end() ? nullptr : &vectors[it->second];
  }

  void insert(std::string word, std::vector<double> v) {
    if (auto it = index_.find(word); it != index_.end()) {
      vectors[it->second] = std::move(v);
      return;
    }
    index_.emplace(word, words.size());
    words.push_back(std::move(word));
    vectors.push_back(std::move(v));
  }

  std::size_t size() const noexcept { return words.size(); }

private:
  std::unordered_map<std::string, std::size_t> index_;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Text format: header `count dim`, then `word v1 ... vdim` per line. Duplicate words keep the last
/// vector and add a warning.
inline EmbeddingTable load_embeddings(std::string_view bytes) {
  EmbeddingTable table;
  const auto all = text::lines(bytes);
  std::size_t n = 0;
  while (n < all.size() && text::trim(all[n]).empty()) ++n;
  if (n == all.size()) throw ParseError("empty embedding file");

  auto split = [](std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      const std::size_t b = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      if (i > b) out.push_back(line.substr(b, i - b));
    }
    return out;
  };

  const auto header = split(all[n]);
  std::optional<long long> count, dim;
  if (header.size() == 2) {
    count = text::parse_int(header[0]);
    dim = text::parse_int(header[1]);
  }
  if (!count || !dim || *count < 0 || *dim <= 0)
    throw ParseError("expected header 'count dim'", n + 1);
  table.dim = static_cast<std::size_t>(*dim);

  std::size_t rows = 0;
  for (++n; n < all.size(); ++n) {
    const auto fields = split(all[n]);
    if (fields.empty()) continue;
    if (fields.size() - 1 != table.dim)
      throw ParseError("expected " + std::to_string(table.dim) + " values, got " +
                           std::to_string(fields.size() - 1),
                       n + 1);
    std::vector<double> v(table.dim);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < table.dim; ++i) {
      auto x = text::parse_double(fields[i + 1]);
      if (!x || !std::isfinite(*x)) throw ParseError("bad number '" + std::string(fields[i + 1]) + "'", n + 1);
      v[i] = *x;
      norm2 += *x * *x;
    }
    if (norm2 == 0.0) throw ParseError("zero vector for '" + std::string(fields[0]) + "'", n + 1);
    const double norm = std::sqrt(norm2);
    for (double& x : v) x /= norm;
    std::string word(fields[0]);
    if (table.find(word))
      table.warnings.push_back("line " + std::to_string(n + 1) + ": duplicate word '" + word +
                               "', last vector kept");
    table.insert(std::move(word), std::move(v));
    ++rows;
  }
  if (rows != static_cast<std::size_t>(*count))
    table.warnings.push_back("header announces " + std::to_string(*count) + " vectors, found " +
                             std::to_string(rows));
  return table;
}

/// Term frequencies of a document, keyed alphabetically.
struct DocumentTokens {
  std::map<std::string, std::int64_t> counts;
  std::int64_t total = 0;
};

/// One lowercased word per line; blank lines and `#` comments ignored.
inline std::unordered_set<std::string> parse_stopwords(std::string_view bytes) {
  std::unordered_set<std::string> out;
  for (auto line : text::lines(bytes)) {
    auto w = text::trim(line);
    if (w.empty() || w.front() == '#') continue;
    std::string s(w);
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.insert(std::move(s));
  }
  return out;
}

inline constexpr std::string_view kDefaultStopwords =
    "a\nabout\nabove\nafter\nagain\nagainst\nall\nam\nan\nand\nany\nare\nas\nat\nbe\nbecause\n"
    "been\nbefore\nbeing\nbelow\nbetween\nboth\nbut\nby\ncan\ncould\nd\ndid\ndo\ndoes\ndoing\ndown\n"
    "during\neach\nfew\nfor\nfrom\nfurther\nhad\nhas\nhave\nhaving\nhe\nher\nhere\nhers\nherself\n"
    "him\nhimself\nhis\nhow\ni\nif\nin\ninto\nis\nit\nits\nitself\njust\nll\nm\nme\nmore\nmost\nmy\n"
    "myself\nno\nnor\nnot\nnow\no\nof\noff\non\nonce\nonly\nor\nother\nour\nours\nourselves\nout\n"
    "over\nown\nre\ns\nsame\nshe\nshould\nso\nsome\nsuch\nt\nthan\nthat\nthe\ntheir\ntheirs\nthem\n"
    "themselves\nthen\nthere\nthese\nthey\nthis\nthose\nthrough\nto\ntoo\nunder\nuntil\nup\nve\n"
    "very\nwas\nwe\nwere\nwhat\nwhen\nwhere\nwhich\nwhile\nwho\nwhom\nwhy\nwill\nwith\nwould\ny\n"
    "you\nyour\nyours\nyourself\nyourselves\nsaid\nalso\n";

inline std::unordered_set<std::string> default_stopwords() {
  return parse_stopwords(kDefaultStopwords);
}

/// Maximal runs of ASCII letters, lowercased, minus stopwords.
inline DocumentTokens tokenize(std::string_view document,
                               const std::unordered_set<std::string>& stopwords) {
  DocumentTokens doc;
  std::string token;
  auto flush = [&] {
    if (!token.empty() && !stopwords.count(token)) {
      ++doc.counts[token];
      ++doc.total;
    }
    token.clear();
  };
  for (char c : document) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && std::isalpha(u))
      token += static_cast<char>(std::tolower(u));
    else
      flush();
  }
  flush();
  if (doc.total == 0) throw ValidationError("no content tokens");
  return doc;
}

struct WeightedPoint {
  std::string word;
  std::vector<double> vector;  // unit length
  double weight = 1.0;
};

enum class Seeding { kmeans_plus_plus, random };

struct ClusterResult {
  std::vector<std::string> words;
  std::vector<std::size_t> assignments;  // parallel to words, each < centroids.size()
  std::vector<std::vector<double>> centroids;
  double objective = 0.0;                // sum of weight * (1 - cos) to the assigned centroid
  std::vector<double> trace;             // objective after every iteration
  std::size_t iterations = 0;

  std::size_t cluster_of(const std::string& word) const {
    auto it = std::find(words.begin(), words.end(), word);
    if (it == words.end()) throw ValidationError("word '" + word + "' was not clustered");
    return assignments[static_cast<std::size_t>(it - words.begin())];
  }
};

namespace detail {

inline std::size_t weighted_pick(std::span<const double> mass, Rng& rng) {
  const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
  const double u = rng.uniform() * total;
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] <= 0) continue;
    acc += mass[i];
    last = i;
    if (u < acc) return i;
  }
  return last;
}

inline std::vector<std::size_t> seed_centers(std::span<const WeightedPoint> pts, std::size_t k,
                                             Seeding seeding, Rng& rng) {
  std::vector<std::size_t> chosen;
  std::vector<bool> taken(pts.size(), false);
  if (seeding == Seeding::random) {
    std::vector<std::size_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
      chosen.push_back(idx[i]);
    }
    return chosen;
  }
  std::vector<double> mass(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) mass[i] = pts[i].weight;
  chosen.push_back(weighted_pick(mass, rng));
  taken[chosen.back()] = true;
  std::vector<double> nearest(pts.size(), 2.0);  // cosine distance to the closest chosen center
  while (chosen.size() < k) {
    const auto& c = pts[chosen.back()].vector;
    double total = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      nearest[i] = std::min(nearest[i], std::max(0.0, 1.0 - dot(pts[i].vector, c)));
      mass[i] = taken[i] ? 0.0 : pts[i].weight * nearest[i] * nearest[i];
      total += mass[i];
    }
    std::size_t next = 0;
    if (total > 0) {
      next = weighted_pick(mass, rng);
    } else {
      // Remaining points coincide with chosen centers.
      while (taken[next]) ++next;
    }
    taken[next] = true;
    chosen.push_back(next);
  }
  return chosen;
}

}  // namespace detail

/// Weighted spherical k-means: assign each point to the centroid of highest cosine similarity (ties
/// to the lowest id), then set each centroid to the renormalized weighted mean of its members.
/// Stops when the objective improves by less than `tol`, assignments stop changing, or after
/// `max_iter` iterations. An empty cluster takes the point farthest from its own centroid.
inline ClusterResult spherical_kmeans(std::span<const WeightedPoint> points, std::size_t k,
                                      std::uint64_t seed, std::size_t max_iter, double tol,
                                      Seeding seeding = Seeding::kmeans_plus_plus) {
  if (k == 0) throw ValidationError("k-means: K must be positive");
  if (k > points.size())
    throw ValidationError("k-means: K = " + std::to_string(k) + " exceeds the " +
                          std::to_string(points.size()) + " distinct words");
  if (max_iter == 0) throw ValidationError("k-means: max_iter must be positive");
  const std::size_t dim = points.front().vector.size();
  for (const auto& p : points) {
    if (p.vector.size() != dim) throw ValidationError("k-means: inconsistent dimensions");
    if (!(p.weight > 0)) throw ValidationError("k-means: weights must be positive");
  }

  Rng rng(seed);
  ClusterResult res;
  for (const auto& p : points) res.words.push_back(p.word);
  for (auto i : detail::seed_centers(points, k, seeding, rng))
    res.centroids.push_back(points[i].vector);

  const std::size_t n = points.size();
  std::vector<std::size_t> assign(n, k);  // k marks "unassigned"
  std::vector<double> sim(n, 0.0);
  double previous = 0.0;

  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_sim = dot(points[i].vector, res.centroids[0]);
      for (std::size_t j = 1; j < k; ++j) {
        const double s = dot(points[i].vector, res.centroids[j]);
        if (s > best_sim) {
          best_sim = s;
          best = j;
        }
      }
      changed |= assign[i] != best;
      assign[i] = best;
      sim[i] = best_sim;
    }

    std::vector<std::size_t> sizes(k, 0);
    for (auto a : assign) ++sizes[a];
    for (std::size_t j = 0; j < k; ++j) {
      if (sizes[j] != 0) continue;
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i)
        if (sizes[assign[i]] > 1 && (far == n || sim[i] < sim[far])) far = i;
      if (far == n) break;  // every cluster is a singleton already
      --sizes[assign[far]];
      assign[far] = j;
      sizes[j] = 1;
      res.centroids[j] = points[far].vector;
      sim[far] = 1.0;
      changed = true;
    }

    for (std::size_t j = 0; j < k; ++j) {
      std::vector<double> sum(dim, 0.0);
      bool any = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (assign[i] != j) continue;
        any = true;
        for (std::size_t d = 0; d < dim; ++d) sum[d] += points[i].weight * points[i].vector[d];
      }
      if (!any) continue;
      const double norm = std::sqrt(dot(sum, sum));
      if (norm == 0.0) continue;
      for (double& x : sum) x /= norm;
      res.centroids[j] = std::move(sum);
    }

    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      objective += points[i].weight * (1.0 - dot(points[i].vector, res.centroids[assign[i]]));
    res.trace.push_back(objective);
    res.iterations = iter;
    const bool stalled = iter > 1 && previous - objective < tol;
    previous = objective;
    if (!changed || stalled) break;
  }
  res.assignments = std::move(assign);
  res.objective = res.trace.back();
  return res;
}

/// Topic k gets p_k = (term count of its words) / (term count of all clustered words) and its words
/// weighted by term frequency, heaviest first. Topics are ordered by descending proportion.
inline TopicSet clusters_to_topicset(const ClusterResult& cr, const DocumentTokens& doc) {
  const std::size_t k = cr.centroids.size();
  std::vector<std::int64_t> mass(k, 0);
  std::vector<std::vector<WordEntry>> words(k);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < cr.words.size(); ++i) {
    auto it = doc.counts.find(cr.words[i]);
    if (it == doc.counts.end())
      throw ValidationError("clustered word '" + cr.words[i] + "' is not in the document");
    mass[cr.assignments[i]] += it->second;
    total += it->second;
    words[cr.assignments[i]].push_back({cr.words[i], static_cast<double>(it->second)});
  }
  if (total == 0) throw ValidationError("no clustered words");

  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < k; ++j)
    if (mass[j] > 0) order.push_back(j);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mass[a] > mass[b]; });

  TopicSet set;
  for (auto j : order) {
    auto ws = std::move(words[j]);
    std::stable_sort(ws.begin(), ws.end(),
                     [](const WordEntry& a, const WordEntry& b) { return a.weight > b.weight; });
    set.topics.push_back({static_cast<double>(mass[j]) / static_cast<double>(total), std::move(ws)});
  }
  return set;
}

struct Extraction {
  TopicSet topics;
  ClusterResult clusters;
  std::vector<std::string> missing;  // document words without an embedding
  std::int64_t missing_tokens = 0;
};

/// Clusters the document's embedded words and converts the clusters into a topic set.
inline Extraction extract_topics(const DocumentTokens& doc, const EmbeddingTable& table,
                                 std::size_t k, std::uint64_t seed, std::size_t max_iter,
                                 double tol, Seeding seeding = Seeding::kmeans_plus_plus) {
  Extraction ex;
  std::vector<WeightedPoint> points;
  for (const auto& [word, count] : doc.counts) {
    if (const auto* v = table.find(word)) {
      points.push_back({word, *v, static_cast<double>(count)});
    } else {
      ex.missing.push_back(word);
      ex.missing_tokens += count;
    }
  }
  if (points.empty()) throw ValidationError("no document word has an embedding");
  ex.clusters = spherical_kmeans(points, k, seed, max_iter, tol, seeding);
  ex.topics = clusters_to_topicset(ex.clusters, doc);
  return ex;
}

}  // namespace topiccloud
