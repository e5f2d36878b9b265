#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "culdiv/corpus.h"
#include "culdiv/text.h"

namespace culdiv {

class LanguageDetector {
 public:
  virtual ~LanguageDetector() = default;
  virtual bool is_english(std::string_view text) const = 0;
};

// English when at least `threshold` of the word tokens are common English
// function words.
class StopwordDetector final : public LanguageDetector {
 public:
  explicit StopwordDetector(double threshold = 0.15) : threshold_(threshold) {}
  bool is_english(std::string_view text) const override;
  double stopword_ratio(std::string_view text) const;

 private:
  double threshold_;
};

struct QualityConfig {
  std::size_t min_tokens = 50;
  std::size_t repetition_run = 3;
};

struct ValidityVerdict {
  bool valid = true;
  std::vector<std::string> problems;
};

ValidityVerdict validate_recipe(const Recipe& recipe);

// Whitespace-separated tokens of the raw instructions.
std::size_t instruction_length(std::string_view instructions);

// A run of `run` identical consecutive word tokens.
bool has_repetition(std::string_view sentence, std::size_t run = 3);

// Share of distinct ingredient heads whose lemma occurs in the preprocessed
// instructions; nullopt when no ingredient line normalizes.
std::optional<double> ingredient_usage(const Recipe& recipe, const PosTagger& tagger = default_tagger());

struct RecipeQuality {
  std::string recipe_id;
  std::string group;
  bool valid = false;
  std::size_t length = 0;
  bool too_short = false;
  std::size_t sentences = 0;
  std::size_t repeated_sentences = 0;
  bool english = false;
  std::optional<double> ingredient_usage;
};

RecipeQuality assess_recipe(const Recipe& recipe, const QualityConfig& config = {},
                            const LanguageDetector& detector = StopwordDetector(),
                            const PosTagger& tagger = default_tagger());

// One row per group; model recipes group by model_name, human recipes under
// "human". All fields except n_total cover valid recipes only; percentages
// are in [0, 100].
struct QualityReport {
  std::string model_name;
  std::size_t n_total = 0;
  std::size_t n_valid = 0;
  double mean_length = 0.0;
  double pct_too_short = 0.0;
  double pct_repetition = 0.0;  // of sentences
  double pct_english = 0.0;
  double mean_ingredient_usage = 0.0;  // percent, over recipes with a defined usage
  std::size_t usage_undefined = 0;
};

std::vector<QualityReport> summarize_quality(const std::vector<RecipeQuality>& assessed);

std::vector<QualityReport> quality_stats(const std::vector<const Recipe*>& recipes, const QualityConfig& config = {},
                                         const LanguageDetector& detector = StopwordDetector(),
                                         const PosTagger& tagger = default_tagger());

void write_quality_csv(const std::vector<QualityReport>& reports, std::ostream& out);
void write_recipe_quality_csv(const std::vector<RecipeQuality>& assessed, std::ostream& out);

}  // namespace culdiv
