#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "culdiv/corpus.h"
#include "culdiv/distances.h"

namespace culdiv {

// Deterministic synthetic corpora built from pseudo-words. Identical configs
// give identical corpora on every platform (mt19937_64, no std
// distributions).
struct SynthConfig {
  std::size_t dishes = 10;
  std::size_t variation_countries = 3;  // per dish, besides the origin
  std::size_t references = 3;
  std::size_t human_variations = 2;  // per variation country
  std::vector<std::string> models = {"model-a", "model-b"};
  std::size_t model_recipes = 4;  // per model and country, origin included
  std::size_t sentences = 4;
  std::size_t sentence_length = 8;
  std::size_t dish_vocabulary = 60;
  double human_drift = 0.3;  // share of variation tokens drawn from the country vocabulary
  double model_drift = 0.5;
  std::uint64_t seed = 1;
};

std::vector<Recipe> synth_recipes(const SynthConfig& config, const CountryLexicon& lexicon);
Corpus synth_corpus(const SynthConfig& config, const CountryLexicon& lexicon);

// Variations drift from their origin in proportion to a planted distance.
// Every (origin, variation) pair is distinct, distances are evenly spaced in
// (0, 1], and the table holds exactly those pairs.
struct PlantedCorpus {
  Corpus corpus;
  DistanceTable distances;
};

struct PlantedConfig {
  std::size_t dishes = 8;
  std::size_t variations_per_dish = 5;
  std::size_t references = 4;
  std::size_t human_variations = 3;
  std::size_t tokens = 60;  // per recipe
  bool constant_drift = false;  // every variation drifts by 0.5
  std::uint64_t seed = 7;
};

PlantedCorpus planted_corpus(const PlantedConfig& config, const CountryLexicon& lexicon);

// Pseudo-word for an index: consonant-vowel syllables, no inflection
// suffixes, so the default tagger keeps it as a noun unchanged.
std::string pseudo_word(std::size_t index);

}  // namespace culdiv
