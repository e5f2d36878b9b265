#include "culdiv/pipeline.h"

#include <gtest/gtest.h>

#include <atomic>
#include <fstream>
#include <sstream>

#include "culdiv/error.h"
#include "culdiv/knowledge_space.h"
#include "culdiv/metrics_io.h"
#include "culdiv/parallel.h"
#include "culdiv/synth.h"
#include "fixtures.h"

namespace culdiv {
namespace {

const CountryLexicon& lex() { return CountryLexicon::bundled(); }

Corpus small_synth(std::uint64_t seed = 3) {
  SynthConfig c;
  c.dishes = 12;
  c.seed = seed;
  return synth_corpus(c, lex());
}

TEST(ParallelOrdered, CommitsInOrderForAnyJobCount) {
  for (std::size_t jobs : {1u, 2u, 3u, 8u}) {
    std::vector<std::size_t> seen;
    parallel_ordered(
        100, jobs, [](std::size_t i) { return i * i; },
        [&](std::size_t i, std::size_t v) {
          EXPECT_EQ(v, i * i);
          seen.push_back(i);
        },
        3);
    ASSERT_EQ(seen.size(), 100u);
    for (std::size_t i = 0; i < seen.size(); ++i) EXPECT_EQ(seen[i], i);
  }
}

TEST(ParallelOrdered, PropagatesWorkerErrors) {
  for (std::size_t jobs : {1u, 4u}) {
    EXPECT_THROW(parallel_ordered(
                     50, jobs,
                     [](std::size_t i) {
                       if (i == 17) throw Error("boom");
                       return i;
                     },
                     [](std::size_t, std::size_t) {}),
                 Error);
  }
}

TEST(ScoreCorpus, ScoresEveryNonReferenceRecipe) {
  const Corpus corpus = small_synth();
  ScoreSummary summary;
  const auto records = score_corpus(corpus, {}, &summary);
  std::size_t expected = 0;
  for (const Recipe* r : corpus.recipes()) expected += r->source != Source::HumanReference;
  EXPECT_EQ(records.size(), expected);
  EXPECT_EQ(summary.records, expected);
  EXPECT_TRUE(summary.complete());
  EXPECT_EQ(summary.skipped_recipes, 0u);
  for (const auto& rec : records) EXPECT_NE(rec.source, Source::HumanReference);
}

TEST(ScoreCorpus, MatchesDirectScoring) {
  const Corpus corpus = small_synth();
  const auto records = score_corpus(corpus);
  std::size_t i = 0;
  for (const auto& dish : corpus.dishes()) {
    const auto ks = knowledge_space(dish, dish.origin_country, Source::HumanReference, default_tagger(),
                                    CoocWindow::sentence());
    const auto th = community_thresholds(ks, {});
    for (const auto& [country, recipes] : dish.variations) {
      for (const auto& r : recipes) {
        const auto direct = score_variation(ks, th, r, default_tagger(), {});
        ASSERT_LT(i, records.size());
        EXPECT_EQ(records[i].recipe_id, r.recipe_id);
        EXPECT_EQ(records[i].scores.newness, direct.scores.newness);
        EXPECT_EQ(records[i].scores.divergent_surprise, direct.scores.divergent_surprise);
        ++i;
      }
    }
  }
  EXPECT_EQ(i, records.size());
}

TEST(ScoreCorpus, JobsDoNotChangeOutput) {
  const Corpus corpus = small_synth();
  const auto dir = testing::scratch_dir("jobs");
  for (auto format : {MetricFormat::Csv, MetricFormat::Jsonl}) {
    ScoreOptions one, four;
    one.format = four.format = format;
    four.jobs = 4;
    score_corpus_to_file(corpus, one, dir / "one.out");
    score_corpus_to_file(corpus, four, dir / "four.out");
    EXPECT_EQ(testing::read_file(dir / "one.out"), testing::read_file(dir / "four.out"));
  }
}

TEST(ScoreCorpus, ResumeIsByteIdentical) {
  const Corpus corpus = small_synth();
  const auto dir = testing::scratch_dir("resume");
  ScoreOptions options;
  score_corpus_to_file(corpus, options, dir / "full.csv");

  ScoreOptions partial = options;
  partial.max_dishes = 5;
  auto s1 = score_corpus_to_file(corpus, partial, dir / "part.csv", dir / "part.manifest");
  EXPECT_EQ(s1.dishes_done, 5u);
  EXPECT_FALSE(s1.complete());
  // Simulate a crash mid-dish: garbage after the last committed offset.
  {
    std::ofstream out(dir / "part.csv", std::ios::app);
    out << "dish00005,XX,YY,half-written";
  }
  partial.max_dishes = 4;
  partial.jobs = 3;
  auto s2 = score_corpus_to_file(corpus, partial, dir / "part.csv", dir / "part.manifest", true);
  EXPECT_EQ(s2.dishes_resumed, 5u);
  EXPECT_EQ(s2.dishes_done, 9u);
  auto s3 = score_corpus_to_file(corpus, options, dir / "part.csv", dir / "part.manifest", true);
  EXPECT_TRUE(s3.complete());
  EXPECT_EQ(testing::read_file(dir / "full.csv"), testing::read_file(dir / "part.csv"));

  ScoreSummary all;
  score_corpus(corpus, {}, &all);
  EXPECT_EQ(s3.records, all.records);
}

TEST(ScoreCorpus, ResumeRejectsForeignManifest) {
  const auto dir = testing::scratch_dir("foreign");
  ScoreOptions options;
  options.max_dishes = 2;
  score_corpus_to_file(small_synth(3), options, dir / "a.csv", dir / "a.manifest");
  EXPECT_THROW(score_corpus_to_file(small_synth(4), options, dir / "a.csv", dir / "a.manifest", true),
               ValidationError);
  ScoreOptions other = options;
  other.metrics.window = CoocWindow::document();
  EXPECT_THROW(score_corpus_to_file(small_synth(3), other, dir / "a.csv", dir / "a.manifest", true),
               ValidationError);
}

TEST(ScoreCorpus, OutputReadsBack) {
  const Corpus corpus = small_synth();
  const auto dir = testing::scratch_dir("readback");
  ScoreOptions csv, jsonl;
  jsonl.format = MetricFormat::Jsonl;
  score_corpus_to_file(corpus, csv, dir / "m.csv");
  score_corpus_to_file(corpus, jsonl, dir / "m.jsonl");
  const auto a = load_metric_records(dir / "m.csv");
  const auto b = load_metric_records(dir / "m.jsonl");
  const auto direct = score_corpus(corpus);
  ASSERT_EQ(a.size(), direct.size());
  ASSERT_EQ(b.size(), direct.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (auto m : kMetrics) {
      EXPECT_EQ(a[i].get(m), direct[i].get(m));
      EXPECT_EQ(b[i].get(m), direct[i].get(m));
    }
    EXPECT_EQ(a[i].keyword, direct[i].keyword);
    EXPECT_EQ(b[i].model_name, direct[i].model_name);
    EXPECT_EQ(a[i].scores.shared_words, direct[i].scores.shared_words);
  }
}

TEST(ScoreCorpus, SkipsEmptyStreamsAndCommunities) {
  auto recipes = synth_recipes(SynthConfig{.dishes = 2}, lex());
  // Dish 0: one variation with only function words. Dish 1: references too.
  for (auto& r : recipes) {
    if (r.dish_id == "dish00001" && r.source == Source::HumanReference) r.instructions = "the and of.";
  }
  for (auto& r : recipes) {
    if (r.dish_id == "dish00000" && r.source == Source::HumanVariation) {
      r.instructions = "It is the. And of it.";
      break;
    }
  }
  ScoreSummary s;
  score_corpus(assemble_corpus(recipes), {}, &s);
  EXPECT_EQ(s.skipped_dishes, 1u);
  EXPECT_EQ(s.skipped_recipes, 1u);
  ASSERT_EQ(s.skipped.size(), 2u);
  EXPECT_EQ(s.skipped[0].reason, "empty instruction stream");
  EXPECT_EQ(s.skipped[1].dish_id, "dish00001");
  EXPECT_TRUE(s.skipped[1].recipe_id.empty());
}

TEST(Synth, DeterministicAndShaped) {
  SynthConfig c;
  c.dishes = 5;
  std::ostringstream a, b;
  write_corpus(synth_corpus(c, lex()), a);
  write_corpus(synth_corpus(c, lex()), b);
  EXPECT_EQ(a.str(), b.str());
  const Corpus corpus = synth_corpus(c, lex());
  EXPECT_EQ(corpus.size(), 5u);
  // 3 references + 3 x 2 human variations + 2 models x 4 x 4 countries
  EXPECT_EQ(corpus.recipe_count(), 5u * 41u);
  c.seed = 2;
  std::ostringstream other;
  write_corpus(synth_corpus(c, lex()), other);
  EXPECT_NE(a.str(), other.str());
}

TEST(Synth, PseudoWordsSurvivePreprocessing) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < 3000; i += 7) {
    const std::string w = pseudo_word(i);
    EXPECT_TRUE(seen.insert(w).second) << w;
    const auto s = preprocess(w, default_tagger());
    ASSERT_EQ(s.tokens.size(), 1u) << w;
    EXPECT_EQ(s.tokens[0], w);
  }
}

TEST(Synth, PlantedCorpusShape) {
  const auto planted = planted_corpus({}, lex());
  EXPECT_EQ(planted.corpus.size(), 8u);
  EXPECT_EQ(planted.distances.entries().size(), 40u);
  std::set<double> values;
  for (const auto& [pair, d] : planted.distances.entries()) values.insert(d);
  EXPECT_EQ(values.size(), 40u);
  EXPECT_EQ(*values.rbegin(), 1.0);
}

}  // namespace
}  // namespace culdiv
