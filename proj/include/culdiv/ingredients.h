#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "culdiv/corpus.h"
#include "culdiv/text.h"

namespace culdiv {

struct NormalizedIngredient {
  std::string phrase;      // "salt taste"
  std::string head_lemma;  // "salt"
};

// Lowercases, drops parentheticals, quantities, units, function words and
// preparation descriptors, then lemmatizes nouns. A unit survives only when
// it is the last remaining word ("cloves" -> "clove"). Returns nullopt when
// nothing is left.
std::optional<NormalizedIngredient> normalize_ingredient(std::string_view raw,
                                                         const PosTagger& tagger = default_tagger());

enum class IngredientKey { Phrase, HeadLemma };

// Normalized phrases of every ingredient line, in order, duplicates kept.
std::vector<std::string> normalized_phrases(const Recipe& recipe, const PosTagger& tagger = default_tagger());

// Distinct ingredient keys of a recipe, sorted.
std::vector<std::string> ingredient_keys(const Recipe& recipe, IngredientKey key = IngredientKey::Phrase,
                                         const PosTagger& tagger = default_tagger());

struct OverlapResult {
  std::optional<double> overlap;       // |ingr(r) & pool| / |ingr(r)|
  std::optional<double> preservation;  // |pool & ingr(r)| / |pool|
  bool undefined = false;              // recipe or pool normalizes to nothing
};

OverlapResult overlap_and_preservation(const Dish& dish, const Recipe& recipe,
                                       IngredientKey key = IngredientKey::Phrase,
                                       const PosTagger& tagger = default_tagger());

using SparseVector = std::map<std::string, double>;

double cosine(const SparseVector& a, const SparseVector& b);

// TF-IDF profiles from human recipes. One document per country: all
// normalized phrases of its HumanReference and HumanVariation recipes.
// idf = log2(|countries| / df), no smoothing; vectors are L2-normalized.
struct CountryProfiles {
  std::map<std::string, SparseVector> profiles;  // iso -> unit vector (possibly empty)
  std::unordered_map<std::string, double> idf;
  std::size_t document_count = 0;

  // tf * idf over known phrases, L2-normalized; empty when nothing is known.
  SparseVector vectorize(const std::vector<std::string>& phrases) const;
};

CountryProfiles country_profiles(const Corpus& corpus, const PosTagger& tagger = default_tagger());

enum class MatchClass { Origin, Variation, Neither };
std::string_view to_string(MatchClass match);

struct AttributionRecord {
  std::string recipe_id;
  std::string dish_id;
  std::optional<std::string> model_name;
  std::string declared_country;
  std::optional<std::string> detected_country;
  std::string best_match_country;  // empty for a zero vector
  double similarity = 0.0;
  MatchClass match_class = MatchClass::Neither;
  bool zero_vector = false;
};

// Finds country names and demonyms in titles: whole tokens only, longest
// alias at the leftmost position wins.
class TitleMatcher {
 public:
  explicit TitleMatcher(const CountryLexicon& lexicon);
  std::optional<std::string> detect(std::string_view title) const;

 private:
  struct Alias {
    std::vector<std::string> tokens;
    std::string iso;
  };
  std::unordered_map<std::string, std::vector<Alias>> by_first_;  // longest first
};

std::optional<std::string> detect_title_country(std::string_view title, const CountryLexicon& lexicon);

AttributionRecord attribute(const Recipe& recipe, const CountryProfiles& profiles, const Dish& dish,
                            const TitleMatcher* titles = nullptr, const PosTagger& tagger = default_tagger());

// Prompts without a country are those rendered from the blend template.
bool is_blank_prompt(const Recipe& recipe);

struct MismatchSummary {
  std::string model_name;
  std::size_t recipes = 0;
  std::size_t detected = 0;
  std::size_t mismatched = 0;
  double pct_mismatch = 0.0;  // over recipes with a detected country
  std::vector<std::pair<std::string, std::size_t>> top_mismatched;  // detected country, count
};

struct RegionPairCount {
  std::string model_name;
  Region origin_region;
  Region detected_region;
  std::size_t detected = 0;
  std::size_t mismatched = 0;
};

struct MismatchReport {
  std::vector<MismatchSummary> models;
  std::vector<RegionPairCount> region_pairs;
};

// Model recipes only. Blank prompts mismatch when the detected country is not
// the dish origin, other prompts when it is not the prompted country.
MismatchReport mismatch_report(const Corpus& corpus, const CountryLexicon& lexicon, std::size_t top = 5);

// Recipes containing each phrase, descending; ties by phrase.
std::vector<std::pair<std::string, std::size_t>> top_ingredients(const std::vector<const Recipe*>& recipes,
                                                                 std::size_t k,
                                                                 const PosTagger& tagger = default_tagger());

// Model recipes are grouped by model_name, HumanVariation recipes under
// "human". The region is that of the recipe's country.
struct OverlapCell {
  std::string group;
  Region region = Region::Asia;
  std::size_t recipes = 0;
  std::size_t undefined = 0;  // excluded from the means
  double mean_overlap = 0.0;
  double mean_preservation = 0.0;
};
std::vector<OverlapCell> overlap_table(const Corpus& corpus, const CountryLexicon& lexicon,
                                       IngredientKey key = IngredientKey::Phrase,
                                       const PosTagger& tagger = default_tagger());

// Share of each match class per group over non-zero-vector records.
struct AttributionShare {
  std::string group;
  std::size_t recipes = 0;
  std::size_t zero_vector = 0;
  double origin = 0.0;
  double variation = 0.0;
  double neither = 0.0;
};
std::vector<AttributionShare> attribution_summary(const std::vector<AttributionRecord>& records);

void write_overlap_csv(const std::vector<OverlapCell>& cells, std::ostream& out);
void write_attribution_summary_csv(const std::vector<AttributionShare>& shares, std::ostream& out);
void write_top_ingredients_csv(const std::vector<std::pair<std::string, std::size_t>>& ranked, std::ostream& out);
void write_attribution_csv(const std::vector<AttributionRecord>& records, std::ostream& out);
void write_mismatch_csv(const MismatchReport& report, std::ostream& out);
void write_region_pairs_csv(const MismatchReport& report, std::ostream& out);

}  // namespace culdiv
