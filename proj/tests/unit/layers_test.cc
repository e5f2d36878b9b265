#include "culdiv/layers.h"

#include <gtest/gtest.h>

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "culdiv/error.h"
#include "fixtures.h"
#include "naive_oracle.h"

namespace culdiv {
namespace {

Corpus fixture_corpus() {
  std::ifstream in(testing::fixture_path("layers/corpus.jsonl"));
  return assemble_corpus(read_recipes(in));
}

std::vector<LayerRecord> fixture_layers() {
  std::ifstream in(testing::fixture_path("layers/layers.jsonl"));
  return read_layer_records(in);
}

// Independent of layer_stream: the fixture vocabulary is plain words, so a
// token is a word once spaces are stripped and case folded.
TokenStream mini_stream(const std::vector<std::string>& tokens) {
  std::vector<std::vector<std::string>> sentences(1);
  for (const auto& raw : tokens) {
    std::string t;
    for (char c : raw)
      if (c != ' ') t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (t == "." || t == "\n") {
      sentences.emplace_back();
    } else if (t != ",") {
      sentences.back().push_back(t);
    }
  }
  return testing::stream_of(sentences);
}

TEST(LayerRecords, ParseAndRoundTrip) {
  const auto r = parse_layer_line(R"({"model_name":"m","recipe_id":"r1","layer_tag":"lm2","tokens":[" A","."]})");
  EXPECT_EQ(r.layer_tag, LayerTag::Lm2);
  EXPECT_EQ(r.tokens, (std::vector<std::string>{" A", "."}));
  std::ostringstream out;
  write_layer_record(r, out);
  const auto back = parse_layer_line(out.str());
  EXPECT_EQ(back.tokens, r.tokens);
  EXPECT_EQ(back.recipe_id, "r1");
  EXPECT_THROW(parse_layer_line(R"({"model_name":"m","recipe_id":"r1","layer_tag":"lm4","tokens":[]})"), ParseError);
  EXPECT_THROW(parse_layer_line(R"({"model_name":"m","recipe_id":"r1","tokens":[]})"), ParseError);
  EXPECT_THROW(parse_layer_line("[1]"), ParseError);
  std::istringstream bad("\n{\"model_name\":\"m\"}\n");
  try {
    read_layer_records(bad, "x.jsonl");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("x.jsonl:2"), std::string::npos) << e.what();
  }
}

TEST(LayerRecords, StreamTokenization) {
  LayerRecord r;
  r.tokens = {" Stir", "ONION", " ,", ".", "pot", "\n", "  ", "lamb", "!"};
  const auto s = layer_stream(r);
  ASSERT_EQ(s.sentence_ends.size(), 3u);
  EXPECT_EQ(s.tokens, (std::vector<std::string>{"stir", "onion", "pot", "lamb"}));
  for (const auto& rec : fixture_layers()) {
    const auto a = layer_stream(rec);
    const auto b = mini_stream(rec.tokens);
    EXPECT_EQ(a.tokens, b.tokens);
    EXPECT_EQ(a.sentence_ends, b.sentence_ends);
  }
  // With a tagger, function words go.
  r.tokens = {"the", " onion", " and", " pot", "."};
  EXPECT_EQ(layer_stream(r, &default_tagger()).tokens, (std::vector<std::string>{"onion", "pot"}));
}

long double naive_metric(const naive::Scores& s, Metric m) {
  switch (m) {
    case Metric::Newness: return s.newness;
    case Metric::Uniqueness: return s.uniqueness;
    case Metric::Difference: return s.difference;
    case Metric::NewSurprise: return s.new_surprise;
    case Metric::DivergentSurprise: return s.divergent_surprise;
  }
  return 0;
}

TEST(LayerGaps, MatchesNaiveOracle) {
  const Corpus corpus = fixture_corpus();
  const auto layers = fixture_layers();
  const auto rows = layer_gap_report(layers, corpus);
  ASSERT_EQ(rows.size(), 5u * 2u * 5u);

  std::map<std::string, const Recipe*> by_id;
  for (const Recipe* r : corpus.recipes()) by_id[r->recipe_id] = r;

  for (auto tag : kLayerTags) {
    // stream -> origin? -> metric -> values
    std::map<std::string, std::map<bool, std::map<Metric, std::vector<long double>>>> acc;
    std::size_t missing = 0;
    for (const auto& dish : corpus.dishes()) {
      std::map<std::string, TokenStream> streams;
      for (const auto& rec : layers)
        if (rec.layer_tag == tag && by_id.at(rec.recipe_id)->dish_id == dish.dish_id)
          streams[rec.recipe_id] = mini_stream(rec.tokens);
      std::vector<TokenStream> refs;
      for (const auto& r : dish.references)
        if (streams.count(r.recipe_id)) refs.push_back(streams[r.recipe_id]);
      if (refs.empty()) {
        ++missing;
        continue;
      }
      const auto th = naive::thresholds(refs);
      for (const auto& [id, stream] : streams) {
        const Recipe& r = *by_id.at(id);
        if (r.source == Source::HumanReference) continue;
        if (r.source == Source::ModelGenerated && r.model_name != "m1") continue;
        const auto s = naive::score(refs, stream, "sentence", th);
        auto& slot = acc[r.source == Source::ModelGenerated ? "model" : "human"][r.country == dish.origin_country];
        for (auto m : kMetrics) slot[m].push_back(naive_metric(s, m));
      }
      for (std::size_t i = 0; i < refs.size(); ++i) {
        std::vector<TokenStream> rest = refs;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        const auto s = naive::score(rest, refs[i], "sentence", naive::thresholds(rest));
        for (auto m : kMetrics) acc["human"][true][m].push_back(naive_metric(s, m));
      }
    }
    for (const auto& row : rows) {
      if (row.layer_tag != tag) continue;
      EXPECT_EQ(row.model_name, "m1");
      EXPECT_EQ(row.missing_reference_dishes, missing);
      EXPECT_EQ(row.incomplete, missing > 0);
      const auto& o = acc[row.stream][true][row.metric];
      const auto& v = acc[row.stream][false][row.metric];
      const auto avg = [](const std::vector<long double>& xs) {
        long double s = 0;
        for (auto x : xs) s += x;
        return static_cast<double>(s / static_cast<long double>(xs.size()));
      };
      ASSERT_EQ(row.n_origin, o.size());
      ASSERT_EQ(row.n_variation, v.size());
      ASSERT_TRUE(row.gap);
      EXPECT_NEAR(*row.origin_mean, avg(o), 1e-9);
      EXPECT_NEAR(*row.variation_mean, avg(v), 1e-9);
      EXPECT_NEAR(*row.gap, avg(o) - avg(v), 1e-9);
    }
  }
}

TEST(LayerGaps, StreamSizesAndIncompleteLayer) {
  const auto rows = layer_gap_report(fixture_layers(), fixture_corpus());
  for (const auto& row : rows) {
    const bool lm2 = row.layer_tag == LayerTag::Lm2;
    EXPECT_EQ(row.incomplete, lm2);
    EXPECT_EQ(row.missing_reference_dishes, lm2 ? 1u : 0u);
    // Per dish: 3 LOO references + 1 origin human variation, 2 foreign;
    // m1 has 2 origin and 2 foreign recipes; m2's recipe is ignored.
    const std::size_t dishes = lm2 ? 1 : 2;
    if (row.stream == "human") {
      EXPECT_EQ(row.n_origin, 4u * dishes);
      EXPECT_EQ(row.n_variation, 2u * dishes);
    } else {
      EXPECT_EQ(row.n_origin, 2u * dishes);
      EXPECT_EQ(row.n_variation, 2u * dishes);
    }
  }
  std::ostringstream csv;
  write_layer_gaps_csv(rows, csv);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')),
            "model_name,layer_tag,stream,metric,origin_mean,variation_mean,gap,n_origin,n_variation,"
            "missing_reference_dishes,incomplete");
}

TEST(LayerGaps, MissingDepthStillReported) {
  auto layers = fixture_layers();
  std::erase_if(layers, [](const LayerRecord& r) { return r.layer_tag == LayerTag::Middle; });
  const auto rows = layer_gap_report(layers, fixture_corpus());
  ASSERT_EQ(rows.size(), 50u);
  for (const auto& row : rows) {
    if (row.layer_tag != LayerTag::Middle) continue;
    EXPECT_TRUE(row.incomplete);
    EXPECT_EQ(row.missing_reference_dishes, 2u);
    EXPECT_FALSE(row.gap);
  }
}

TEST(LayerGaps, RejectsUnknownAndDuplicateRecords) {
  auto layers = fixture_layers();
  layers.push_back(layers.front());
  EXPECT_THROW(layer_gap_report(layers, fixture_corpus()), ValidationError);
  layers.pop_back();
  layers.back().recipe_id = "nope";
  EXPECT_THROW(layer_gap_report(layers, fixture_corpus()), ValidationError);
}

}  // namespace
}  // namespace culdiv
