#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace culdiv {

enum class Region { Asia, Europe, NorthAmerica, Oceania, SouthAmerica, Caribbean, MiddleEast, Africa };

inline constexpr std::size_t kRegionCount = 8;

std::string_view to_string(Region region);
std::optional<Region> parse_region(std::string_view text);

struct Country {
  std::string iso_code;
  std::string name;
  Region region = Region::Asia;
  std::vector<std::string> demonyms;
};

// Countries keyed by ISO code, with case-insensitive resolution of names and
// demonyms. File format: CSV `iso,name,region,demonym1|demonym2|...`.
class CountryLexicon {
 public:
  static CountryLexicon parse(std::string_view csv, const std::string& source = "<lexicon>");
  static CountryLexicon load(const std::filesystem::path& path);
  // The 130-country lexicon shipped in data/countries.csv.
  static const CountryLexicon& bundled();

  void add(Country country);

  const Country* find(std::string_view iso_code) const;
  const Country& at(std::string_view iso_code) const;
  // Accepts an ISO code, a country name or a demonym.
  std::optional<std::string> resolve(std::string_view text) const;

  const std::vector<Country>& countries() const { return countries_; }
  std::size_t size() const { return countries_.size(); }

  // Primary demonym ("Moroccan"), used to render prompts.
  const std::string& nationality(std::string_view iso_code) const;

 private:
  std::vector<Country> countries_;
  std::unordered_map<std::string, std::size_t> by_iso_;
  std::unordered_map<std::string, std::size_t> by_alias_;
};

enum class Source { HumanReference, HumanVariation, ModelGenerated };

std::string_view to_string(Source source);
std::optional<Source> parse_source(std::string_view text);

struct Recipe {
  std::string recipe_id;
  std::string dish_id;
  std::string dish_name;
  std::string country;  // ISO code once loaded
  Source source = Source::HumanReference;
  std::optional<std::string> model_name;
  std::optional<std::string> keyword;
  std::optional<std::string> template_id;
  std::string title;
  std::vector<std::string> ingredients;
  std::string instructions;
};

struct Dish {
  std::string dish_id;
  std::string name;
  std::string origin_country;
  std::vector<Recipe> references;
  // HumanVariation and ModelGenerated recipes by country; may include the
  // origin country.
  std::map<std::string, std::vector<Recipe>> variations;

  // C_i: origin plus every variation country, sorted, origin included once.
  std::vector<std::string> countries() const;
  std::vector<const Recipe*> recipes(std::string_view country, Source source) const;
  std::size_t recipe_count() const;
};

class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Dish> dishes);

  const std::vector<Dish>& dishes() const { return dishes_; }
  const Dish* find(std::string_view dish_id) const;
  std::size_t size() const { return dishes_.size(); }
  std::size_t recipe_count() const;

  // Every recipe in dish order, references first.
  std::vector<const Recipe*> recipes() const;

 private:
  std::vector<Dish> dishes_;  // sorted by dish_id
  std::unordered_map<std::string, std::size_t> index_;
};

struct LoadIssue {
  std::size_t line = 0;
  std::string recipe_id;
  std::string reason;
  std::string value;
};

struct LoadReport {
  std::size_t records_read = 0;
  std::size_t recipes_indexed = 0;
  std::vector<LoadIssue> issues;
};

struct LoadedCorpus {
  Corpus corpus;
  LoadReport report;
};

// Line-delimited JSON, one recipe per line. Throws ParseError on malformed
// lines and ValidationError for dishes without references or with
// inconsistent origins. Unresolvable countries and provenance gaps land in
// the report.
LoadedCorpus read_corpus(std::istream& in, const CountryLexicon& lexicon,
                         const std::string& source_name = "<stream>");
LoadedCorpus load_corpus(const std::filesystem::path& path, const CountryLexicon& lexicon);

// One JSON record, no country resolution or provenance checks.
Recipe parse_recipe_line(std::string_view line, const std::string& source_name = "<stream>",
                         std::size_t line_no = 1);
// Every record of a JSONL stream as written, in file order.
std::vector<Recipe> read_recipes(std::istream& in, const std::string& source_name = "<stream>");

void write_recipe(const Recipe& recipe, std::ostream& out);
void write_corpus(const Corpus& corpus, std::ostream& out);

// Builds a corpus from already-resolved recipes (country fields are ISO
// codes). Applies the same validation as read_corpus.
Corpus assemble_corpus(std::vector<Recipe> recipes);

}  // namespace culdiv
