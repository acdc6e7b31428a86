// topiccloud: render a topic set (or a document + word embeddings) as a topic cloud SVG.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "topiccloud/job.hpp"

namespace {

void add_common(CLI::App& cmd, topiccloud::JobConfig& cfg, std::string& background,
                std::string& stroke) {
  auto& p = cfg.params;
  cmd.add_option("-o,--output", cfg.output_path, "SVG output path")->required();
  cmd.add_option("--dump-layout", cfg.dump_layout_path, "Write the canonical layout JSON here");
  cmd.add_option("--beta", p.beta, "Exponential scaling coefficient")->capture_default_str();
  cmd.add_option("--mu", p.mu, "Topic proportion-ratio threshold")->capture_default_str();
  cmd.add_option("--sigma", p.sigma, "Word importance threshold")->capture_default_str();
  cmd.add_option("--f-max", p.f_max, "Maximal font size")->capture_default_str();
  cmd.add_option("--f-min", p.f_min, "Minimal font size")->capture_default_str();
  cmd.add_option("--f-floor", p.f_floor, "Give-up font size for the shrink loop")->capture_default_str();
  cmd.add_option("--radius", p.radius, "Canvas circle radius")->capture_default_str();
  cmd.add_option("--epsilon", p.epsilon, "Color perturbation bound")->capture_default_str();
  cmd.add_option("--seed", p.seed, "Random seed")->capture_default_str();
  cmd.add_option("--width", p.width, "Canvas width")->capture_default_str();
  cmd.add_option("--height", p.height, "Canvas height")->capture_default_str();
  cmd.add_option("--max-topics", p.max_topics, "Show only the N biggest topics");
  cmd.add_option("--max-words", cfg.max_words, "Word cap per topic")->capture_default_str();
  cmd.add_option("--slice-palette", cfg.slice_palette_path, "Slice background palette file");
  cmd.add_option("--word-palette", cfg.word_palette_path, "Word base color palette file");
  cmd.add_option("--metrics", cfg.metrics_path, "Font metrics file");
  auto* rules = cmd.add_option("--lemma-rules", cfg.lemma_rules_path, "Lemma rules file");
  cmd.add_flag("--no-lemma", [&cfg](std::int64_t) { cfg.lemmatize = false; }, "Disable lemma merging")
      ->excludes(rules);
  cmd.add_option("--decimals", cfg.render.decimals, "Coordinate decimals in the SVG")->capture_default_str();
  cmd.add_option("--background", background, "Background color #RRGGBB (default transparent)");
  cmd.add_option("--stroke", stroke, "Slice outline color #RRGGBB");
  cmd.add_flag("--label", cfg.render.embed_label, "Print the topic-set label under the cloud");
  cmd.add_flag("-v,--verbose", [&cfg](std::int64_t n) { cfg.verbosity += static_cast<int>(n); }, "More output");
  cmd.add_flag("-q,--quiet", [&cfg](std::int64_t) { cfg.verbosity = 0; }, "No summary");
}

}  // namespace

int main(int argc, char** argv) {
  topiccloud::JobConfig cfg;
  std::string background, stroke, seeding = "kmeans++";

  CLI::App app{"Topic cloud generator"};
  app.require_subcommand(1);

  auto* topics = app.add_subcommand("topics", "Render a topic-set JSON document");
  topics->add_option("-i,--input", cfg.topics_path, "Topic-set document")->required();
  add_common(*topics, cfg, background, stroke);

  auto* extract = app.add_subcommand("extract", "Extract topics from a document with spherical k-means");
  extract->add_option("--document", cfg.document_path, "Plain-text document")->required();
  extract->add_option("--embeddings", cfg.embeddings_path, "Embedding file ('count dim' header)")->required();
  extract->add_option("--stopwords", cfg.stopwords_path, "Stopword list, one per line");
  extract->add_option("-k,--topics", cfg.k, "Number of clusters")->capture_default_str();
  extract->add_option("--max-iter", cfg.max_iter, "k-means iteration cap")->capture_default_str();
  extract->add_option("--tol", cfg.tol, "k-means objective tolerance")->capture_default_str();
  extract->add_option("--init", seeding, "Seeding: kmeans++ or random")
      ->check(CLI::IsMember({"kmeans++", "random"}))
      ->capture_default_str();
  add_common(*extract, cfg, background, stroke);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return topiccloud::kExitParse;
  }

  cfg.mode = extract->parsed() ? topiccloud::JobMode::extract : topiccloud::JobMode::topics;
  cfg.seeding = seeding == "random" ? topiccloud::Seeding::random : topiccloud::Seeding::kmeans_plus_plus;
  try {
    if (!background.empty()) cfg.render.background = topiccloud::parse_palette(background).colors.front();
    if (!stroke.empty()) cfg.render.stroke = topiccloud::Stroke{topiccloud::parse_palette(stroke).colors.front(), 1.0};
  } catch (const topiccloud::Error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return topiccloud::kExitParse;
  }

  const auto outcome = topiccloud::run(cfg);
  if (outcome.exit_code != topiccloud::kExitOk) {
    std::cerr << outcome.message << "\n";
    return outcome.exit_code;
  }
  if (cfg.verbosity > 0) topiccloud::print_summary(std::cout, outcome.summary);
  if (cfg.verbosity > 1) std::cout << "wrote " << cfg.output_path << "\n";
  return topiccloud::kExitOk;
}
