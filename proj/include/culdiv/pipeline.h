#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "culdiv/corpus.h"
#include "culdiv/novelty.h"
#include "culdiv/text.h"

namespace culdiv {

enum class MetricFormat { Csv, Jsonl };

struct ScoreOptions {
  MetricConfig metrics;
  std::size_t jobs = 1;
  MetricFormat format = MetricFormat::Csv;
  // Stop after this many dishes in one run; a later resume picks up the rest.
  std::optional<std::size_t> max_dishes;
  const PosTagger* tagger = &default_tagger();
};

struct SkippedItem {
  std::string dish_id;
  std::string recipe_id;  // empty when the whole dish was skipped
  std::string reason;
};

struct ScoreSummary {
  std::size_t dishes_total = 0;
  std::size_t dishes_done = 0;     // including dishes committed by earlier runs
  std::size_t dishes_resumed = 0;  // committed by earlier runs
  std::size_t records = 0;
  std::size_t skipped_recipes = 0;
  std::size_t skipped_dishes = 0;
  std::vector<SkippedItem> skipped;  // this run only
  bool complete() const { return dishes_done == dishes_total; }
};

// Every HumanVariation and ModelGenerated recipe of each dish, scored against
// the dish's HumanReference community. Dishes in corpus order, then
// variation country, then file order. Recipes whose instructions preprocess
// to nothing and dishes whose references do are skipped and reported.
std::vector<MetricRecord> score_corpus(const Corpus& corpus, const ScoreOptions& options = {},
                                       ScoreSummary* summary = nullptr);

// Streams the same records to `output`. With a manifest, each dish is
// committed after its rows are flushed; resume truncates the output to the
// last committed dish and continues, giving a byte-identical file.
ScoreSummary score_corpus_to_file(const Corpus& corpus, const ScoreOptions& options,
                                  const std::filesystem::path& output,
                                  const std::optional<std::filesystem::path>& manifest = std::nullopt,
                                  bool resume = false);

// Stable digest of the corpus content and the scoring configuration; a
// manifest written under a different fingerprint is rejected.
std::string score_fingerprint(const Corpus& corpus, const ScoreOptions& options);

}  // namespace culdiv
