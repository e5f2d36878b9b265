#include "culdiv/ingredients.h"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <ostream>
#include <set>
#include <unordered_set>

#include "culdiv/csv.h"
#include "culdiv/error.h"

namespace culdiv {

namespace {

const std::unordered_set<std::string_view> kUnits = {
    "teaspoon", "teaspoons", "tsp",     "tsps",    "t",        "tablespoon", "tablespoons", "tbsp",
    "tbsps",    "tbs",       "tbl",     "cup",     "cups",     "c",          "ounce",       "ounces",
    "oz",       "pound",     "pounds",  "lb",      "lbs",      "gram",       "grams",       "g",
    "kg",       "kilogram",  "kilograms", "mg",    "ml",       "milliliter", "milliliters", "millilitre",
    "millilitres", "l",      "liter",   "liters",  "litre",    "litres",     "dl",          "cl",
    "pint",     "pints",     "pt",      "quart",   "quarts",   "qt",         "gallon",      "gallons",
    "gal",      "pinch",     "pinches", "dash",    "dashes",   "clove",      "cloves",      "can",
    "cans",     "tin",       "tins",    "jar",     "jars",     "package",    "packages",    "pkg",
    "packet",   "packets",   "bag",     "bags",    "box",      "boxes",      "bottle",      "bottles",
    "stick",    "sticks",    "bunch",   "bunches", "handful",  "handfuls",   "sprig",       "sprigs",
    "piece",    "pieces",    "slice",   "slices",  "inch",     "inches",     "cm",          "mm",
    "fl",       "drop",      "drops",   "scoop",   "scoops"};

const std::unordered_set<std::string_view> kQuantityWords = {
    "half", "halves", "quarter", "quarters", "third", "thirds", "dozen", "couple", "few", "several", "each"};

const std::unordered_set<std::string_view> kDescriptors = {
    "chopped",  "diced",    "minced",  "sliced",  "grated",  "crushed",  "peeled",   "seeded",   "halved",
    "quartered", "cubed",   "shredded", "trimmed", "rinsed", "drained",  "softened", "melted",   "beaten",
    "sifted",   "packed",   "heaping", "heaped",  "level",   "fresh",    "freshly",  "finely",   "roughly",
    "coarsely", "thinly",   "thickly", "large",   "small",   "medium",   "big",      "whole",    "about",
    "approximately", "plus", "extra",  "divided", "needed",  "desired",  "preferably"};

std::string strip_brackets(std::string_view text) {
  std::string out;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(' || ch == '[') {
      ++depth;
      out += ' ';
    } else if ((ch == ')' || ch == ']') && depth > 0) {
      --depth;
    } else if (depth == 0) {
      out += ch;
    }
  }
  return out;
}

}  // namespace

std::optional<NormalizedIngredient> normalize_ingredient(std::string_view raw, const PosTagger& tagger) {
  const auto tokens = tokenize(strip_brackets(raw));
  struct Kept {
    TaggedToken tag;
    bool unit;
  };
  std::vector<Kept> kept;
  auto tagged_tokens = tagger.tag(tokens);
  // "cut into cubes": a verb-tagged word after a preposition or determiner is the object noun.
  // "to" is skipped since "to taste" is an infinitive.
  for (std::size_t i = 1; i < tagged_tokens.size(); ++i) {
    const auto& prev = tagged_tokens[i - 1];
    const bool nominal_slot =
        (prev.pos == Pos::Adposition && prev.text != "to") || prev.pos == Pos::Determiner;
    if (nominal_slot && tagged_tokens[i].pos == Pos::Verb && tagged_tokens[i].text.back() == 's')
      tagged_tokens[i].pos = Pos::Noun;
  }
  for (const auto& tagged : tagged_tokens) {
    if (tagged.pos == Pos::Number || !is_content(tagged.pos)) continue;
    if (kQuantityWords.count(tagged.text) || kDescriptors.count(tagged.text)) continue;
    kept.push_back({tagged, kUnits.count(tagged.text) > 0});
  }
  if (kept.empty()) return std::nullopt;
  const bool only_units = std::all_of(kept.begin(), kept.end(), [](const Kept& k) { return k.unit; });
  if (only_units) {
    kept.erase(kept.begin(), kept.end() - 1);
  } else {
    std::erase_if(kept, [](const Kept& k) { return k.unit; });
  }

  NormalizedIngredient out;
  for (const auto& k : kept) {
    const std::string& word = k.tag.pos == Pos::Noun ? k.tag.lemma : k.tag.text;
    if (!out.phrase.empty()) out.phrase += ' ';
    out.phrase += word;
    if (k.tag.pos == Pos::Noun) out.head_lemma = k.tag.lemma;
  }
  if (out.head_lemma.empty()) {
    const auto& last = kept.back().tag;
    out.head_lemma = last.pos == Pos::Noun ? last.lemma : last.text;
  }
  return out;
}

std::vector<std::string> normalized_phrases(const Recipe& recipe, const PosTagger& tagger) {
  std::vector<std::string> out;
  for (const auto& line : recipe.ingredients)
    if (auto n = normalize_ingredient(line, tagger)) out.push_back(std::move(n->phrase));
  return out;
}

std::vector<std::string> ingredient_keys(const Recipe& recipe, IngredientKey key, const PosTagger& tagger) {
  std::set<std::string> out;
  for (const auto& line : recipe.ingredients) {
    if (auto n = normalize_ingredient(line, tagger)) out.insert(key == IngredientKey::Phrase ? n->phrase : n->head_lemma);
  }
  return {out.begin(), out.end()};
}

OverlapResult overlap_and_preservation(const Dish& dish, const Recipe& recipe, IngredientKey key,
                                       const PosTagger& tagger) {
  std::set<std::string> pool;
  for (const auto& ref : dish.references)
    for (auto& k : ingredient_keys(ref, key, tagger)) pool.insert(std::move(k));
  const auto mine = ingredient_keys(recipe, key, tagger);
  OverlapResult out;
  if (mine.empty() || pool.empty()) {
    out.undefined = true;
    if (!pool.empty()) out.preservation = 0.0;
    return out;
  }
  std::size_t shared = 0;
  for (const auto& k : mine) shared += pool.count(k);
  out.overlap = static_cast<double>(shared) / static_cast<double>(mine.size());
  out.preservation = static_cast<double>(shared) / static_cast<double>(pool.size());
  return out;
}

double cosine(const SparseVector& a, const SparseVector& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [k, v] : a) {
    na += v * v;
    if (const auto it = b.find(k); it != b.end()) dot += v * it->second;
  }
  for (const auto& [k, v] : b) nb += v * v;
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  return std::clamp(dot / std::sqrt(na * nb), 0.0, 1.0);
}

namespace {

void l2_normalize(SparseVector& v) {
  double n = 0.0;
  for (const auto& [k, x] : v) n += x * x;
  std::erase_if(v, [](const auto& kv) { return kv.second <= 0.0; });
  if (n <= 0.0) return;
  n = std::sqrt(n);
  for (auto& [k, x] : v) x /= n;
}

}  // namespace

SparseVector CountryProfiles::vectorize(const std::vector<std::string>& phrases) const {
  SparseVector v;
  for (const auto& p : phrases) {
    const auto it = idf.find(p);
    if (it != idf.end()) v[p] += it->second;
  }
  l2_normalize(v);
  return v;
}

CountryProfiles country_profiles(const Corpus& corpus, const PosTagger& tagger) {
  std::map<std::string, std::map<std::string, std::size_t>> tf;
  auto add = [&](const Recipe& r) {
    auto& doc = tf[r.country];
    for (auto& p : normalized_phrases(r, tagger)) ++doc[std::move(p)];
  };
  for (const auto& dish : corpus.dishes()) {
    for (const auto& r : dish.references) add(r);
    for (const auto& [c, rs] : dish.variations)
      for (const auto& r : rs)
        if (r.source == Source::HumanVariation) add(r);
  }
  CountryProfiles out;
  out.document_count = tf.size();
  std::map<std::string, std::size_t> df;
  for (const auto& [c, doc] : tf)
    for (const auto& [p, n] : doc) ++df[p];
  for (const auto& [p, d] : df)
    out.idf[p] = std::log2(static_cast<double>(out.document_count) / static_cast<double>(d));
  for (const auto& [c, doc] : tf) {
    SparseVector v;
    for (const auto& [p, n] : doc) v[p] = static_cast<double>(n) * out.idf.at(p);
    l2_normalize(v);
    out.profiles[c] = std::move(v);
  }
  return out;
}

std::string_view to_string(MatchClass match) {
  switch (match) {
    case MatchClass::Origin: return "origin";
    case MatchClass::Variation: return "variation";
    case MatchClass::Neither: return "neither";
  }
  return "neither";
}

TitleMatcher::TitleMatcher(const CountryLexicon& lexicon) {
  for (const auto& c : lexicon.countries()) {
    std::vector<std::string> names = c.demonyms;
    names.push_back(c.name);
    for (const auto& n : names) {
      auto toks = tokenize(n);
      if (toks.empty()) continue;
      by_first_[toks.front()].push_back({std::move(toks), c.iso_code});
    }
  }
  for (auto& [first, aliases] : by_first_) {
    std::stable_sort(aliases.begin(), aliases.end(),
                     [](const Alias& a, const Alias& b) { return a.tokens.size() > b.tokens.size(); });
  }
}

std::optional<std::string> TitleMatcher::detect(std::string_view title) const {
  const auto toks = tokenize(title);
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const auto it = by_first_.find(toks[i]);
    if (it == by_first_.end()) continue;
    for (const auto& alias : it->second) {
      if (i + alias.tokens.size() > toks.size()) continue;
      if (std::equal(alias.tokens.begin(), alias.tokens.end(), toks.begin() + static_cast<std::ptrdiff_t>(i)))
        return alias.iso;
    }
  }
  return std::nullopt;
}

std::optional<std::string> detect_title_country(std::string_view title, const CountryLexicon& lexicon) {
  return TitleMatcher(lexicon).detect(title);
}

AttributionRecord attribute(const Recipe& recipe, const CountryProfiles& profiles, const Dish& dish,
                            const TitleMatcher* titles, const PosTagger& tagger) {
  AttributionRecord out;
  out.recipe_id = recipe.recipe_id;
  out.dish_id = recipe.dish_id;
  out.model_name = recipe.model_name;
  out.declared_country = is_blank_prompt(recipe) ? dish.origin_country : recipe.country;
  if (titles) out.detected_country = titles->detect(recipe.title);
  const auto v = profiles.vectorize(normalized_phrases(recipe, tagger));
  if (v.empty()) {
    out.zero_vector = true;
    return out;
  }
  double best = -1.0;
  for (const auto& [iso, profile] : profiles.profiles) {  // ascending iso, strict > keeps the first on ties
    const double s = cosine(v, profile);
    if (s > best) {
      best = s;
      out.best_match_country = iso;
    }
  }
  out.similarity = best;
  if (best <= 0.0) {
    out.best_match_country.clear();
    out.zero_vector = true;
    return out;
  }
  if (out.best_match_country == dish.origin_country) {
    out.match_class = MatchClass::Origin;
  } else if (out.best_match_country == recipe.country) {
    out.match_class = MatchClass::Variation;
  }
  return out;
}

bool is_blank_prompt(const Recipe& recipe) { return recipe.template_id && *recipe.template_id == "blend"; }

MismatchReport mismatch_report(const Corpus& corpus, const CountryLexicon& lexicon, std::size_t top) {
  const TitleMatcher matcher(lexicon);
  std::map<std::string, MismatchSummary> models;
  std::map<std::string, std::map<std::string, std::size_t>> wrong;
  std::map<std::tuple<std::string, Region, Region>, std::pair<std::size_t, std::size_t>> regions;
  for (const auto& dish : corpus.dishes()) {
    for (const auto& [c, rs] : dish.variations) {
      for (const auto& r : rs) {
        if (r.source != Source::ModelGenerated) continue;
        const std::string model = r.model_name.value_or("");
        auto& m = models[model];
        m.model_name = model;
        ++m.recipes;
        const auto detected = matcher.detect(r.title);
        if (!detected) continue;
        ++m.detected;
        const std::string& expected = is_blank_prompt(r) ? dish.origin_country : r.country;
        const bool mismatch = *detected != expected;
        auto& cell = regions[{model, lexicon.at(dish.origin_country).region, lexicon.at(*detected).region}];
        ++cell.first;
        if (mismatch) {
          ++m.mismatched;
          ++cell.second;
          ++wrong[model][*detected];
        }
      }
    }
  }
  MismatchReport out;
  for (auto& [name, m] : models) {
    m.pct_mismatch = m.detected ? 100.0 * static_cast<double>(m.mismatched) / static_cast<double>(m.detected) : 0.0;
    std::vector<std::pair<std::string, std::size_t>> ranked(wrong[name].begin(), wrong[name].end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (ranked.size() > top) ranked.resize(top);
    m.top_mismatched = std::move(ranked);
    out.models.push_back(std::move(m));
  }
  for (const auto& [key, counts] : regions) {
    out.region_pairs.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), counts.first, counts.second});
  }
  return out;
}

std::vector<std::pair<std::string, std::size_t>> top_ingredients(const std::vector<const Recipe*>& recipes,
                                                                 std::size_t k, const PosTagger& tagger) {
  std::map<std::string, std::size_t> counts;
  for (const Recipe* r : recipes)
    for (const auto& p : ingredient_keys(*r, IngredientKey::Phrase, tagger)) ++counts[p];
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

std::vector<OverlapCell> overlap_table(const Corpus& corpus, const CountryLexicon& lexicon, IngredientKey key,
                                       const PosTagger& tagger) {
  struct Acc {
    std::size_t recipes = 0, undefined = 0;
    double overlap = 0.0, preservation = 0.0;
  };
  std::map<std::pair<std::string, Region>, Acc> cells;
  for (const auto& dish : corpus.dishes()) {
    for (const auto& [c, rs] : dish.variations) {
      for (const auto& r : rs) {
        const std::string group = r.source == Source::ModelGenerated ? r.model_name.value_or("") : "human";
        auto& acc = cells[{group, lexicon.at(r.country).region}];
        ++acc.recipes;
        const auto res = overlap_and_preservation(dish, r, key, tagger);
        if (res.undefined) {
          ++acc.undefined;
          continue;
        }
        acc.overlap += *res.overlap;
        acc.preservation += *res.preservation;
      }
    }
  }
  std::vector<OverlapCell> out;
  for (const auto& [k, acc] : cells) {
    OverlapCell cell{k.first, k.second, acc.recipes, acc.undefined, 0.0, 0.0};
    const std::size_t used = acc.recipes - acc.undefined;
    if (used > 0) {
      cell.mean_overlap = acc.overlap / static_cast<double>(used);
      cell.mean_preservation = acc.preservation / static_cast<double>(used);
    } else {
      cell.mean_overlap = cell.mean_preservation = std::numeric_limits<double>::quiet_NaN();
    }
    out.push_back(std::move(cell));
  }
  std::stable_sort(out.begin(), out.end(), [](const OverlapCell& a, const OverlapCell& b) {
    return (a.group == "human") > (b.group == "human");
  });
  return out;
}

std::vector<AttributionShare> attribution_summary(const std::vector<AttributionRecord>& records) {
  std::map<std::string, std::array<std::size_t, 5>> counts;  // recipes, zero, origin, variation, neither
  for (const auto& r : records) {
    auto& c = counts[r.model_name.value_or("human")];
    ++c[0];
    if (r.zero_vector) {
      ++c[1];
      continue;
    }
    ++c[2 + static_cast<std::size_t>(r.match_class)];
  }
  std::vector<AttributionShare> out;
  for (const auto& [group, c] : counts) {
    AttributionShare s{group, c[0], c[1], 0.0, 0.0, 0.0};
    const double scored = static_cast<double>(c[0] - c[1]);
    if (scored > 0) {
      s.origin = static_cast<double>(c[2]) / scored;
      s.variation = static_cast<double>(c[3]) / scored;
      s.neither = static_cast<double>(c[4]) / scored;
    }
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const AttributionShare& a, const AttributionShare& b) {
    return (a.group == "human") > (b.group == "human");
  });
  return out;
}

void write_overlap_csv(const std::vector<OverlapCell>& cells, std::ostream& out) {
  CsvWriter w(out);
  w.row({"group", "region", "recipes", "undefined", "overlap", "preservation"});
  for (const auto& c : cells) {
    w.row({c.group, std::string(to_string(c.region)), std::to_string(c.recipes), std::to_string(c.undefined),
           format_double(c.mean_overlap), format_double(c.mean_preservation)});
  }
}

void write_attribution_summary_csv(const std::vector<AttributionShare>& shares, std::ostream& out) {
  CsvWriter w(out);
  w.row({"group", "recipes", "zero_vector", "origin", "variation", "neither"});
  for (const auto& s : shares) {
    w.row({s.group, std::to_string(s.recipes), std::to_string(s.zero_vector), format_double(s.origin),
           format_double(s.variation), format_double(s.neither)});
  }
}

void write_top_ingredients_csv(const std::vector<std::pair<std::string, std::size_t>>& ranked, std::ostream& out) {
  CsvWriter w(out);
  w.row({"rank", "phrase", "recipes"});
  for (std::size_t i = 0; i < ranked.size(); ++i)
    w.row({std::to_string(i + 1), ranked[i].first, std::to_string(ranked[i].second)});
}

void write_attribution_csv(const std::vector<AttributionRecord>& records, std::ostream& out) {
  CsvWriter w(out);
  w.row({"recipe_id", "dish_id", "model_name", "declared_country", "detected_country", "best_match_country",
         "similarity", "match_class", "zero_vector"});
  for (const auto& r : records) {
    w.row({r.recipe_id, r.dish_id, r.model_name.value_or(""), r.declared_country, r.detected_country.value_or(""),
           r.best_match_country, format_double(r.similarity), std::string(to_string(r.match_class)),
           r.zero_vector ? "1" : "0"});
  }
}

void write_mismatch_csv(const MismatchReport& report, std::ostream& out) {
  CsvWriter w(out);
  w.row({"model_name", "recipes", "detected", "mismatched", "pct_mismatch", "top_mismatched"});
  for (const auto& m : report.models) {
    std::string top;
    for (const auto& [iso, n] : m.top_mismatched) {
      if (!top.empty()) top += ';';
      top += iso + ":" + std::to_string(n);
    }
    w.row({m.model_name, std::to_string(m.recipes), std::to_string(m.detected), std::to_string(m.mismatched),
           format_double(m.pct_mismatch), top});
  }
}

void write_region_pairs_csv(const MismatchReport& report, std::ostream& out) {
  CsvWriter w(out);
  w.row({"model_name", "origin_region", "detected_region", "detected", "mismatched"});
  for (const auto& r : report.region_pairs) {
    w.row({r.model_name, std::string(to_string(r.origin_region)), std::string(to_string(r.detected_region)),
           std::to_string(r.detected), std::to_string(r.mismatched)});
  }
}

}  // namespace culdiv
