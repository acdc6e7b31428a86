#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include "topiccloud/job.hpp"

using namespace topiccloud;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = TOPICCLOUD_FIXTURES;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "topiccloud_test_job";
  fs::create_directories(dir);
  return dir / name;
}

JobConfig topics_job(const std::string& input) {
  JobConfig cfg;
  cfg.topics_path = input;
  cfg.output_path = scratch("out.svg").string();
  return cfg;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(TOPICCLOUD_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Job, FixtureRendersWithNothingSkipped) {
  auto cfg = topics_job(kFixtures + "/six_topics.json");
  const auto out = run(cfg);
  ASSERT_EQ(out.exit_code, kExitOk) << out.message;
  EXPECT_EQ(out.summary.skipped_no_fit, 0u);
  EXPECT_EQ(out.summary.topics_kept, 6u);
  EXPECT_EQ(out.summary.input_words, out.summary.accounted());
  EXPECT_TRUE(fs::exists(cfg.output_path));
}

TEST(Job, MissingInputIsAnIoErrorNamingThePath) {
  const auto out = run(topics_job("/nonexistent/topics.json"));
  EXPECT_EQ(out.exit_code, kExitIo);
  EXPECT_NE(out.message.find("/nonexistent/topics.json"), std::string::npos);
}

TEST(Job, SigmaAboveEveryWeightIsAnEmptyCloud) {
  auto cfg = topics_job(kFixtures + "/six_topics.json");
  cfg.params.sigma = 1e9;
  EXPECT_EQ(run(cfg).exit_code, kExitEmptyCloud);
}

TEST(Job, ExitCodesByCategory) {
  const auto bad = scratch("bad.json");
  text::write_file(bad.string(), "{\"topics\": [");
  EXPECT_EQ(run(topics_job(bad.string())).exit_code, kExitParse);
  text::write_file(bad.string(), R"({"topics":[{"proportion":-1,"words":[{"w":"a","q":1}]}]})");
  EXPECT_EQ(run(topics_job(bad.string())).exit_code, kExitValidation);
  auto cfg = topics_job(kFixtures + "/six_topics.json");
  cfg.params.f_min = 100;
  EXPECT_EQ(run(cfg).exit_code, kExitValidation);
}

TEST(Job, AccountingIdentityAcrossSettings) {
  for (double sigma : {0.0, 0.05, 0.2}) {
    for (double mu : {1.5, 3.0, 10.0}) {
      for (std::size_t max_words : {3u, 8u, 30u}) {
        auto cfg = topics_job(kFixtures + "/six_topics.json");
        cfg.params.sigma = sigma;
        cfg.params.mu = mu;
        cfg.params.radius = 150;
        cfg.max_words = max_words;
        const auto out = run(cfg);
        if (out.exit_code == kExitEmptyCloud) continue;
        ASSERT_EQ(out.exit_code, kExitOk) << out.message;
        EXPECT_EQ(out.summary.input_words, out.summary.accounted())
            << sigma << " " << mu << " " << max_words;
      }
    }
  }
}

TEST(Job, ExtractModeAccountsForMissingEmbeddings) {
  JobConfig cfg;
  cfg.mode = JobMode::extract;
  cfg.document_path = kFixtures + "/toy_document.txt";
  cfg.embeddings_path = kFixtures + "/toy_embeddings.txt";
  cfg.output_path = scratch("extract.svg").string();
  cfg.k = 4;
  const auto out = run(cfg);
  ASSERT_EQ(out.exit_code, kExitOk) << out.message;
  EXPECT_EQ(out.summary.missing_embedding, 2u);
  EXPECT_EQ(out.summary.input_words, out.summary.accounted());
  ASSERT_TRUE(out.layout);
  EXPECT_EQ(out.layout->slices.size(), 4u);
}

TEST(Job, SummaryMentionsSkippedWordsAndSeed) {
  JobSummary s;
  s.seed = 7;
  s.no_fit.push_back({2, "enormous", 1.0, "no-fit"});
  std::ostringstream os;
  print_summary(os, s);
  EXPECT_NE(os.str().find("'enormous'"), std::string::npos);
  EXPECT_NE(os.str().find("seed: 7"), std::string::npos);
}

TEST(Cli, DeterministicOutputAndExitCodes) {
  const auto a = scratch("a.svg"), b = scratch("b.svg"), ja = scratch("a.json"), jb = scratch("b.json");
  const std::string in = " topics -q -i " + kFixtures + "/six_topics.json --seed 42";
  ASSERT_EQ(run_cli(in + " -o " + a.string() + " --dump-layout " + ja.string()), 0);
  ASSERT_EQ(run_cli(in + " -o " + b.string() + " --dump-layout " + jb.string()), 0);
  EXPECT_EQ(text::read_file(a.string()), text::read_file(b.string()));
  EXPECT_EQ(text::read_file(ja.string()), text::read_file(jb.string()));
  EXPECT_EQ(run_cli("topics -o x.svg"), kExitParse);
  EXPECT_EQ(run_cli("topics -i /nonexistent.json -o " + a.string()), kExitIo);
  EXPECT_EQ(run_cli("topics -i " + kFixtures + "/six_topics.json --sigma 1e9 -o " + a.string()), kExitEmptyCloud);
  EXPECT_EQ(run_cli("topics -i " + kFixtures + "/six_topics.json --max-topics 2 -o " + a.string()), 0);
}

TEST(Cli, SummaryPrintedByDefaultAndSilencedByQuiet) {
  const auto capture = [](const std::string& args) {
    std::string out;
    if (FILE* f = popen((std::string(TOPICCLOUD_CLI) + " " + args).c_str(), "r")) {
      char buf[256];
      while (fgets(buf, sizeof buf, f)) out += buf;
      pclose(f);
    }
    return out;
  };
  const std::string base = "topics -i " + kFixtures + "/six_topics.json -o " + scratch("s.svg").string();
  const auto normal = capture(base);
  EXPECT_NE(normal.find("55 placed, 6 merged"), std::string::npos) << normal;
  EXPECT_NE(normal.find("seed: 42"), std::string::npos);
  EXPECT_EQ(capture(base + " -q"), "");
  EXPECT_NE(capture(base + " -v").find("wrote "), std::string::npos);
}
