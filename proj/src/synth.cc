#include "culdiv/synth.h"

#include <algorithm>
#include <random>

#include "culdiv/error.h"

namespace culdiv {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Zipf-like: index i with weight ~ 1 / (i + 1), by inverse transform on a
  // precomputed table.
  std::size_t zipf(const std::vector<double>& cdf) {
    const double u = unit() * cdf.back();
    return static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
  }

 private:
  std::mt19937_64 engine_;
};

std::vector<double> zipf_cdf(std::size_t n) {
  std::vector<double> cdf(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) cdf[i] = acc += 1.0 / static_cast<double>(i + 1);
  return cdf;
}

constexpr char kConsonants[] = "bdkmnprtz";
constexpr char kVowels[] = "aou";

std::string instructions(Rng& rng, const std::vector<std::string>& base, const std::vector<double>& cdf,
                         const std::vector<std::string>& drift_vocab, double drift, std::size_t sentences,
                         std::size_t length) {
  std::string out;
  for (std::size_t s = 0; s < sentences; ++s) {
    for (std::size_t t = 0; t < length; ++t) {
      const bool drifted = !drift_vocab.empty() && rng.unit() < drift;
      const std::string& w = drifted ? drift_vocab[rng.below(drift_vocab.size())] : base[rng.zipf(cdf)];
      if (t) out += ' ';
      out += w;
    }
    out += ". ";
  }
  out.pop_back();
  return out;
}

std::vector<std::string> ingredients(Rng& rng, const std::vector<std::string>& base) {
  std::vector<std::string> out;
  const std::size_t n = 3 + rng.below(4);
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(1 + rng.below(3)) + " cups " + base[rng.below(base.size())]);
  return out;
}

std::vector<std::string> vocabulary(std::size_t first, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(pseudo_word(first + i));
  return out;
}

Recipe make(std::string id, const std::string& dish_id, const std::string& dish_name, const std::string& iso,
            Source source) {
  Recipe r;
  r.recipe_id = std::move(id);
  r.dish_id = dish_id;
  r.dish_name = dish_name;
  r.country = iso;
  r.source = source;
  return r;
}

}  // namespace

std::string pseudo_word(std::size_t index) {
  // Three syllables minimum keeps words clear of short function words.
  std::string out;
  std::size_t i = index;
  for (int s = 0; s < 3 || i > 0; ++s) {
    out += kConsonants[i % 9];
    i /= 9;
    out += kVowels[i % 3];
    i /= 3;
  }
  return out;
}

std::vector<Recipe> synth_recipes(const SynthConfig& c, const CountryLexicon& lexicon) {
  const auto& countries = lexicon.countries();
  if (c.variation_countries + 1 > countries.size()) throw ValidationError("not enough countries in the lexicon");
  Rng rng(c.seed);
  const auto cdf = zipf_cdf(c.dish_vocabulary);
  std::vector<Recipe> out;
  std::size_t next_word = 0;
  std::vector<std::vector<std::string>> country_vocab(countries.size());
  for (auto& v : country_vocab) {
    v = vocabulary(next_word, 40);
    next_word += 40;
  }
  const auto model_vocab = vocabulary(next_word, 80);
  next_word += 80;
  const auto& keywords = std::vector<std::string>{"", "novel", "authentic", "traditional", "original"};
  const auto& templates = std::vector<std::string>{"basic", "persona", "blend", "definition"};
  for (std::size_t d = 0; d < c.dishes; ++d) {
    char id[16];
    std::snprintf(id, sizeof id, "dish%05zu", d);
    const std::string dish_id = id;
    const std::string dish_name = "Dish " + std::to_string(d);
    const auto base = vocabulary(next_word + d * c.dish_vocabulary, c.dish_vocabulary);
    std::vector<std::size_t> picks;
    while (picks.size() < c.variation_countries + 1) {
      const std::size_t k = rng.below(countries.size());
      if (std::find(picks.begin(), picks.end(), k) == picks.end()) picks.push_back(k);
    }
    const std::string& origin = countries[picks[0]].iso_code;
    std::size_t serial = 0;
    auto next_id = [&] { return dish_id + "-r" + std::to_string(serial++); };
    for (std::size_t k = 0; k < c.references; ++k) {
      Recipe r = make(next_id(), dish_id, dish_name, origin, Source::HumanReference);
      r.title = countries[picks[0]].demonyms.front() + " " + dish_name;
      r.ingredients = ingredients(rng, base);
      r.instructions = instructions(rng, base, cdf, {}, 0.0, c.sentences, c.sentence_length);
      out.push_back(std::move(r));
    }
    for (std::size_t p = 0; p < picks.size(); ++p) {
      const Country& country = countries[picks[p]];
      const auto& cv = country_vocab[picks[p]];
      if (p > 0) {
        for (std::size_t k = 0; k < c.human_variations; ++k) {
          Recipe r = make(next_id(), dish_id, dish_name, country.iso_code, Source::HumanVariation);
          r.title = country.demonyms.front() + " " + dish_name;
          r.ingredients = ingredients(rng, base);
          r.instructions = instructions(rng, base, cdf, cv, c.human_drift, c.sentences, c.sentence_length);
          out.push_back(std::move(r));
        }
      }
      std::vector<std::string> mixed = cv;
      mixed.insert(mixed.end(), model_vocab.begin(), model_vocab.end());
      for (const auto& model : c.models) {
        for (std::size_t k = 0; k < c.model_recipes; ++k) {
          Recipe r = make(next_id(), dish_id, dish_name, country.iso_code, Source::ModelGenerated);
          r.model_name = model;
          r.keyword = keywords[k % keywords.size()];
          r.template_id = templates[k % templates.size()];
          r.title = country.demonyms.front() + " " + dish_name;
          r.ingredients = ingredients(rng, base);
          r.instructions = instructions(rng, base, cdf, mixed, c.model_drift, c.sentences, c.sentence_length);
          out.push_back(std::move(r));
        }
      }
    }
  }
  return out;
}

Corpus synth_corpus(const SynthConfig& config, const CountryLexicon& lexicon) {
  return assemble_corpus(synth_recipes(config, lexicon));
}

PlantedCorpus planted_corpus(const PlantedConfig& c, const CountryLexicon& lexicon) {
  const auto& countries = lexicon.countries();
  const std::size_t pairs = c.dishes * c.variations_per_dish;
  if (c.dishes + pairs > countries.size()) throw ValidationError("not enough countries for distinct pairs");
  Rng rng(c.seed);
  std::vector<double> distances(pairs);
  for (std::size_t i = 0; i < pairs; ++i) distances[i] = static_cast<double>(i + 1) / static_cast<double>(pairs);
  for (std::size_t i = pairs; i > 1; --i) std::swap(distances[i - 1], distances[rng.below(i)]);

  const std::size_t vocab = 50;
  const auto cdf = zipf_cdf(vocab);
  std::vector<Recipe> recipes;
  DistanceTable table(Dimension::Cultural);
  std::size_t next_word = 0;
  for (std::size_t d = 0; d < c.dishes; ++d) {
    const std::string dish_id = "planted" + std::to_string(d);
    const std::string& origin = countries[d].iso_code;
    const auto base = vocabulary(next_word, vocab);
    next_word += vocab;
    std::size_t serial = 0;
    auto add = [&](const std::string& iso, Source source, const std::vector<std::string>& drift_vocab, double drift) {
      Recipe r = make(dish_id + "-r" + std::to_string(serial++), dish_id, "Planted " + std::to_string(d), iso, source);
      r.title = "Planted";
      r.ingredients = {"salt"};
      r.instructions = instructions(rng, base, cdf, drift_vocab, drift, c.tokens / 10, 10);
      recipes.push_back(std::move(r));
    };
    for (std::size_t k = 0; k < c.references; ++k) add(origin, Source::HumanReference, {}, 0.0);
    for (std::size_t v = 0; v < c.variations_per_dish; ++v) {
      const std::size_t pair = d * c.variations_per_dish + v;
      const std::string& iso = countries[c.dishes + pair].iso_code;
      const double drift = c.constant_drift ? 0.5 : distances[pair];
      table.set(origin, iso, distances[pair]);
      const auto fresh = vocabulary(100000 + pair * 200, 200);
      for (std::size_t k = 0; k < c.human_variations; ++k) add(iso, Source::HumanVariation, fresh, drift);
    }
  }
  return {assemble_corpus(std::move(recipes)), std::move(table)};
}

}  // namespace culdiv
