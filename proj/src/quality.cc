#include "culdiv/quality.h"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <unordered_set>

#include "culdiv/csv.h"
#include "culdiv/ingredients.h"

namespace culdiv {

namespace {

const std::unordered_set<std::string_view> kEnglishStopwords = {
    "a",       "about",   "above",  "after",  "again",   "against", "all",     "am",      "an",     "and",
    "any",     "are",     "as",     "at",     "be",      "because", "been",    "before",  "being",  "below",
    "between", "both",    "but",    "by",     "can",     "could",   "did",     "do",      "does",   "doing",
    "down",    "during",  "each",   "few",    "for",     "from",    "further", "had",     "has",    "have",
    "having",  "he",      "her",    "here",   "hers",    "him",     "his",     "how",     "i",      "if",
    "in",      "into",    "is",     "it",     "its",     "itself",  "just",    "me",      "more",   "most",
    "my",      "no",      "nor",    "not",    "now",     "of",      "off",     "on",      "once",   "only",
    "or",      "other",   "our",    "ours",   "out",     "over",    "own",     "same",    "she",    "should",
    "so",      "some",    "such",   "than",   "that",    "the",     "their",   "theirs",  "them",   "then",
    "there",   "these",   "they",   "this",   "those",   "through", "to",      "too",     "under",  "until",
    "up",      "very",    "was",    "we",     "were",    "what",    "when",    "where",   "which",  "while",
    "who",     "whom",    "why",    "will",   "with",    "would",   "you",     "your",    "yours",  "onto",
    "also",   "may",     "might",   "must",    "shall",   "us",     "per"};

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

double StopwordDetector::stopword_ratio(std::string_view text) const {
  const auto tokens = tokenize(text);
  if (tokens.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& t : tokens) hits += kEnglishStopwords.count(t);
  return static_cast<double>(hits) / static_cast<double>(tokens.size());
}

bool StopwordDetector::is_english(std::string_view text) const { return stopword_ratio(text) >= threshold_; }

ValidityVerdict validate_recipe(const Recipe& recipe) {
  ValidityVerdict v;
  if (blank(recipe.title)) v.problems.emplace_back("empty title");
  if (std::none_of(recipe.ingredients.begin(), recipe.ingredients.end(),
                   [](const std::string& s) { return !blank(s); }))
    v.problems.emplace_back("no ingredients");
  if (blank(recipe.instructions)) v.problems.emplace_back("empty instructions");
  v.valid = v.problems.empty();
  return v;
}

std::size_t instruction_length(std::string_view instructions) {
  std::size_t n = 0;
  bool in_token = false;
  for (unsigned char c : instructions) {
    const bool space = std::isspace(c);
    if (!space && !in_token) ++n;
    in_token = !space;
  }
  return n;
}

bool has_repetition(std::string_view sentence, std::size_t run) {
  if (run <= 1) return !tokenize(sentence).empty();
  const auto tokens = tokenize(sentence);
  std::size_t streak = 1;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    streak = tokens[i] == tokens[i - 1] ? streak + 1 : 1;
    if (streak >= run) return true;
  }
  return false;
}

std::optional<double> ingredient_usage(const Recipe& recipe, const PosTagger& tagger) {
  const auto heads = ingredient_keys(recipe, IngredientKey::HeadLemma, tagger);
  if (heads.empty()) return std::nullopt;
  const auto stream = preprocess(recipe.instructions, tagger);
  const std::set<std::string> seen(stream.tokens.begin(), stream.tokens.end());
  std::size_t used = 0;
  for (const auto& h : heads) used += seen.count(h);
  return static_cast<double>(used) / static_cast<double>(heads.size());
}

RecipeQuality assess_recipe(const Recipe& recipe, const QualityConfig& config, const LanguageDetector& detector,
                            const PosTagger& tagger) {
  RecipeQuality q;
  q.recipe_id = recipe.recipe_id;
  q.group = recipe.source == Source::ModelGenerated ? recipe.model_name.value_or("") : "human";
  q.valid = validate_recipe(recipe).valid;
  q.length = instruction_length(recipe.instructions);
  q.too_short = q.length < config.min_tokens;
  for (std::string_view s : split_sentences(recipe.instructions)) {
    if (tokenize(s).empty()) continue;
    ++q.sentences;
    if (has_repetition(s, config.repetition_run)) ++q.repeated_sentences;
  }
  q.english = detector.is_english(recipe.instructions);
  q.ingredient_usage = ingredient_usage(recipe, tagger);
  return q;
}

std::vector<QualityReport> summarize_quality(const std::vector<RecipeQuality>& assessed) {
  struct Acc {
    std::size_t total = 0, valid = 0, length = 0, too_short = 0, sentences = 0, repeated = 0, english = 0,
                usage_n = 0, usage_undefined = 0;
    double usage = 0.0;
  };
  std::map<std::string, Acc> groups;
  for (const auto& q : assessed) {
    auto& a = groups[q.group];
    ++a.total;
    if (!q.valid) continue;
    ++a.valid;
    a.length += q.length;
    a.too_short += q.too_short;
    a.sentences += q.sentences;
    a.repeated += q.repeated_sentences;
    a.english += q.english;
    if (q.ingredient_usage) {
      ++a.usage_n;
      a.usage += *q.ingredient_usage;
    } else {
      ++a.usage_undefined;
    }
  }
  const auto pct = [](std::size_t k, std::size_t n) {
    return n ? 100.0 * static_cast<double>(k) / static_cast<double>(n) : std::numeric_limits<double>::quiet_NaN();
  };
  std::vector<QualityReport> out;
  for (const auto& [name, a] : groups) {
    QualityReport r;
    r.model_name = name;
    r.n_total = a.total;
    r.n_valid = a.valid;
    r.mean_length = a.valid ? static_cast<double>(a.length) / static_cast<double>(a.valid)
                            : std::numeric_limits<double>::quiet_NaN();
    r.pct_too_short = pct(a.too_short, a.valid);
    r.pct_repetition = pct(a.repeated, a.sentences);
    r.pct_english = pct(a.english, a.valid);
    r.mean_ingredient_usage =
        a.usage_n ? 100.0 * a.usage / static_cast<double>(a.usage_n) : std::numeric_limits<double>::quiet_NaN();
    r.usage_undefined = a.usage_undefined;
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const QualityReport& a, const QualityReport& b) {
    return (a.model_name == "human") > (b.model_name == "human");
  });
  return out;
}

std::vector<QualityReport> quality_stats(const std::vector<const Recipe*>& recipes, const QualityConfig& config,
                                         const LanguageDetector& detector, const PosTagger& tagger) {
  std::vector<RecipeQuality> assessed;
  assessed.reserve(recipes.size());
  for (const Recipe* r : recipes) assessed.push_back(assess_recipe(*r, config, detector, tagger));
  return summarize_quality(assessed);
}

void write_quality_csv(const std::vector<QualityReport>& reports, std::ostream& out) {
  CsvWriter w(out);
  w.row({"model_name", "n_valid", "mean_length", "pct_too_short", "pct_repetition", "pct_english",
         "mean_ingredient_usage"});
  for (const auto& r : reports) {
    w.row({r.model_name, std::to_string(r.n_valid), format_double(r.mean_length), format_double(r.pct_too_short),
           format_double(r.pct_repetition), format_double(r.pct_english), format_double(r.mean_ingredient_usage)});
  }
}

void write_recipe_quality_csv(const std::vector<RecipeQuality>& assessed, std::ostream& out) {
  CsvWriter w(out);
  w.row({"recipe_id", "group", "valid", "length", "too_short", "sentences", "repeated_sentences", "english",
         "ingredient_usage"});
  for (const auto& q : assessed) {
    w.row({q.recipe_id, q.group, q.valid ? "1" : "0", std::to_string(q.length), q.too_short ? "1" : "0",
           std::to_string(q.sentences), std::to_string(q.repeated_sentences), q.english ? "1" : "0",
           q.ingredient_usage ? format_double(*q.ingredient_usage) : ""});
  }
}

}  // namespace culdiv
