#include "culdiv/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "culdiv/csv.h"
#include "culdiv/error.h"
#include "culdiv/text.h"
#include "json.hpp"

namespace culdiv {

namespace detail {
extern const char* const kBundledLexiconCsv;
}

namespace {

using nlohmann::json;

constexpr std::array<std::pair<Region, std::string_view>, kRegionCount> kRegionNames = {{
    {Region::Asia, "Asia"},
    {Region::Europe, "Europe"},
    {Region::NorthAmerica, "NorthAmerica"},
    {Region::Oceania, "Oceania"},
    {Region::SouthAmerica, "SouthAmerica"},
    {Region::Caribbean, "Caribbean"},
    {Region::MiddleEast, "MiddleEast"},
    {Region::Africa, "Africa"},
}};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string alias_key(std::string_view text) {
  // Collapse punctuation and whitespace so "Trinidad & Tobago" style
  // spellings normalize consistently.
  std::string out;
  for (const auto& tok : tokenize(text)) {
    if (!out.empty()) out += ' ';
    out += tok;
  }
  return out;
}

}  // namespace

std::string_view to_string(Region region) {
  for (const auto& [r, name] : kRegionNames)
    if (r == region) return name;
  return "Unknown";
}

std::optional<Region> parse_region(std::string_view text) {
  const std::string key = alias_key(text);
  for (const auto& [r, name] : kRegionNames)
    if (alias_key(name) == key || to_lower(name) == to_lower(std::string(text))) return r;
  if (key == "north america") return Region::NorthAmerica;
  if (key == "south america") return Region::SouthAmerica;
  if (key == "middle east") return Region::MiddleEast;
  if (key == "carribean") return Region::Caribbean;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// CountryLexicon

CountryLexicon CountryLexicon::parse(std::string_view text, const std::string& source) {
  CountryLexicon lexicon;
  std::istringstream in{std::string(text)};
  CsvReader reader(in, source);
  std::vector<std::string> row;
  bool header = true;
  while (reader.next(row)) {
    if (row.empty() || (row.size() == 1 && trim(row[0]).empty())) continue;
    if (header) {
      header = false;
      if (!row.empty() && to_lower(trim(row[0])) == "iso") continue;
    }
    if (row.size() != 4) {
      throw ParseError(source, reader.line(), "expected 4 columns iso,name,region,demonyms");
    }
    Country c;
    c.iso_code = trim(row[0]);
    c.name = trim(row[1]);
    const auto region = parse_region(trim(row[2]));
    if (!region) throw ParseError(source, reader.line(), "unknown region '" + row[2] + "'");
    c.region = *region;
    std::string_view demonyms = row[3];
    std::size_t start = 0;
    while (start <= demonyms.size()) {
      const auto bar = demonyms.find('|', start);
      const auto piece = trim(demonyms.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start));
      if (!piece.empty()) c.demonyms.push_back(piece);
      if (bar == std::string_view::npos) break;
      start = bar + 1;
    }
    try {
      lexicon.add(std::move(c));
    } catch (const ValidationError& e) {
      throw ParseError(source, reader.line(), e.what());
    }
  }
  return lexicon;
}

CountryLexicon CountryLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

const CountryLexicon& CountryLexicon::bundled() {
  static const CountryLexicon lexicon = parse(detail::kBundledLexiconCsv, "<bundled lexicon>");
  return lexicon;
}

void CountryLexicon::add(Country country) {
  if (country.iso_code.size() != 2) {
    throw ValidationError("iso code '" + country.iso_code + "' is not 2 letters");
  }
  for (auto& ch : country.iso_code) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (country.demonyms.empty()) {
    throw ValidationError("country " + country.iso_code + " has no demonyms");
  }
  if (by_iso_.count(country.iso_code)) {
    throw ValidationError("duplicate iso code " + country.iso_code);
  }
  const std::size_t idx = countries_.size();
  by_iso_.emplace(country.iso_code, idx);
  by_alias_.emplace(alias_key(country.name), idx);
  for (const auto& d : country.demonyms) by_alias_.emplace(alias_key(d), idx);
  countries_.push_back(std::move(country));
}

const Country* CountryLexicon::find(std::string_view iso_code) const {
  std::string key(iso_code);
  for (auto& ch : key) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  const auto it = by_iso_.find(key);
  return it == by_iso_.end() ? nullptr : &countries_[it->second];
}

const Country& CountryLexicon::at(std::string_view iso_code) const {
  const Country* c = find(iso_code);
  if (!c) throw Error("country '" + std::string(iso_code) + "' is not in the lexicon");
  return *c;
}

std::optional<std::string> CountryLexicon::resolve(std::string_view text) const {
  const std::string t = trim(text);
  if (t.size() == 2) {
    if (const Country* c = find(t)) return c->iso_code;
  }
  const auto it = by_alias_.find(alias_key(t));
  if (it == by_alias_.end()) return std::nullopt;
  return countries_[it->second].iso_code;
}

const std::string& CountryLexicon::nationality(std::string_view iso_code) const {
  return at(iso_code).demonyms.front();
}

// ---------------------------------------------------------------------------
// Source

std::string_view to_string(Source source) {
  switch (source) {
    case Source::HumanReference: return "HumanReference";
    case Source::HumanVariation: return "HumanVariation";
    case Source::ModelGenerated: return "ModelGenerated";
  }
  return "HumanReference";
}

std::optional<Source> parse_source(std::string_view text) {
  for (Source s : {Source::HumanReference, Source::HumanVariation, Source::ModelGenerated})
    if (text == to_string(s)) return s;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Dish / Corpus

std::vector<std::string> Dish::countries() const {
  std::set<std::string> out;
  out.insert(origin_country);
  for (const auto& [country, recipes] : variations)
    if (!recipes.empty()) out.insert(country);
  return {out.begin(), out.end()};
}

std::vector<const Recipe*> Dish::recipes(std::string_view country, Source source) const {
  std::vector<const Recipe*> out;
  if (source == Source::HumanReference) {
    for (const auto& r : references)
      if (r.country == country) out.push_back(&r);
    return out;
  }
  const auto it = variations.find(std::string(country));
  if (it == variations.end()) return out;
  for (const auto& r : it->second)
    if (r.source == source) out.push_back(&r);
  return out;
}

std::size_t Dish::recipe_count() const {
  std::size_t n = references.size();
  for (const auto& [c, rs] : variations) n += rs.size();
  return n;
}

Corpus::Corpus(std::vector<Dish> dishes) : dishes_(std::move(dishes)) {
  std::sort(dishes_.begin(), dishes_.end(),
            [](const Dish& a, const Dish& b) { return a.dish_id < b.dish_id; });
  for (std::size_t i = 0; i < dishes_.size(); ++i) index_.emplace(dishes_[i].dish_id, i);
}

const Dish* Corpus::find(std::string_view dish_id) const {
  const auto it = index_.find(std::string(dish_id));
  return it == index_.end() ? nullptr : &dishes_[it->second];
}

std::size_t Corpus::recipe_count() const {
  std::size_t n = 0;
  for (const auto& d : dishes_) n += d.recipe_count();
  return n;
}

std::vector<const Recipe*> Corpus::recipes() const {
  std::vector<const Recipe*> out;
  for (const auto& d : dishes_) {
    for (const auto& r : d.references) out.push_back(&r);
    for (const auto& [c, rs] : d.variations)
      for (const auto& r : rs) out.push_back(&r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

std::string require_string(const json& j, const char* field, const std::string& source,
                           std::size_t line) {
  const auto it = j.find(field);
  if (it == j.end()) throw ParseError(source, line, std::string("missing field '") + field + "'");
  if (!it->is_string()) throw ParseError(source, line, std::string("field '") + field + "' must be a string");
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& j, const char* field,
                                           const std::string& source, std::size_t line) {
  const auto it = j.find(field);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ParseError(source, line, std::string("field '") + field + "' must be a string");
  return it->get<std::string>();
}

Recipe parse_recipe(const json& j, const std::string& source, std::size_t line) {
  if (!j.is_object()) throw ParseError(source, line, "record is not a JSON object");
  static const std::set<std::string> kKnown = {
      "recipe_id", "dish_id", "dish_name", "country", "source", "model_name",
      "keyword",   "template_id", "title", "ingredients", "instructions"};
  for (const auto& [key, value] : j.items()) {
    if (!kKnown.count(key)) throw ParseError(source, line, "unknown field '" + key + "'");
  }
  Recipe r;
  r.recipe_id = require_string(j, "recipe_id", source, line);
  r.dish_id = require_string(j, "dish_id", source, line);
  r.dish_name = require_string(j, "dish_name", source, line);
  r.country = require_string(j, "country", source, line);
  const std::string src = require_string(j, "source", source, line);
  const auto parsed = parse_source(src);
  if (!parsed) throw ParseError(source, line, "unknown source '" + src + "'");
  r.source = *parsed;
  r.model_name = optional_string(j, "model_name", source, line);
  r.keyword = optional_string(j, "keyword", source, line);
  r.template_id = optional_string(j, "template_id", source, line);
  r.title = require_string(j, "title", source, line);
  const auto ing = j.find("ingredients");
  if (ing == j.end()) throw ParseError(source, line, "missing field 'ingredients'");
  if (!ing->is_array()) throw ParseError(source, line, "field 'ingredients' must be an array");
  for (const auto& item : *ing) {
    if (!item.is_string()) throw ParseError(source, line, "ingredient entries must be strings");
    r.ingredients.push_back(item.get<std::string>());
  }
  r.instructions = require_string(j, "instructions", source, line);
  if (r.recipe_id.empty()) throw ParseError(source, line, "empty recipe_id");
  if (r.dish_id.empty()) throw ParseError(source, line, "empty dish_id");
  return r;
}

json recipe_json(const Recipe& r) {
  json j;
  j["recipe_id"] = r.recipe_id;
  j["dish_id"] = r.dish_id;
  j["dish_name"] = r.dish_name;
  j["country"] = r.country;
  j["source"] = std::string(to_string(r.source));
  if (r.model_name) j["model_name"] = *r.model_name;
  if (r.keyword) j["keyword"] = *r.keyword;
  if (r.template_id) j["template_id"] = *r.template_id;
  j["title"] = r.title;
  j["ingredients"] = r.ingredients;
  j["instructions"] = r.instructions;
  return j;
}

// Recipe-level invariants that exclude a record without aborting the load.
std::optional<std::string> provenance_problem(const Recipe& r) {
  if (r.source == Source::ModelGenerated) {
    if (!r.model_name || r.model_name->empty()) return "model recipe without model_name";
    if (!r.template_id || r.template_id->empty()) return "model recipe without template_id";
    if (!r.keyword) return "model recipe without keyword";
  } else if (r.ingredients.empty()) {
    return "human recipe without ingredients";
  }
  return std::nullopt;
}

Corpus build(std::vector<Recipe> recipes, LoadReport* report) {
  std::map<std::string, Dish> dishes;
  std::set<std::string> seen_ids;
  for (auto& r : recipes) {
    if (!seen_ids.insert(r.recipe_id).second) {
      if (!report) throw ValidationError("duplicate recipe_id '" + r.recipe_id + "'");
      report->issues.push_back({0, r.recipe_id, "duplicate recipe_id", r.recipe_id});
      continue;
    }
    Dish& d = dishes[r.dish_id];
    if (d.dish_id.empty()) {
      d.dish_id = r.dish_id;
      d.name = r.dish_name;
    }
    if (r.source == Source::HumanReference) {
      if (d.origin_country.empty()) {
        d.origin_country = r.country;
      } else if (d.origin_country != r.country) {
        throw ValidationError("dish '" + r.dish_id + "' has references from both " +
                              d.origin_country + " and " + r.country);
      }
      d.references.push_back(std::move(r));
    } else {
      const std::string country = r.country;
      d.variations[country].push_back(std::move(r));
    }
    if (report) ++report->recipes_indexed;
  }
  std::vector<Dish> out;
  for (auto& [id, d] : dishes) {
    if (d.references.empty()) {
      throw ValidationError("dish '" + id + "' has no HumanReference recipes");
    }
    out.push_back(std::move(d));
  }
  return Corpus(std::move(out));
}

}  // namespace

Recipe parse_recipe_line(std::string_view line, const std::string& source_name, std::size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(source_name, line_no, std::string("malformed JSON: ") + e.what());
  }
  return parse_recipe(j, source_name, line_no);
}

std::vector<Recipe> read_recipes(std::istream& in, const std::string& source_name) {
  std::vector<Recipe> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) out.push_back(parse_recipe_line(line, source_name, line_no));
  }
  return out;
}

LoadedCorpus read_corpus(std::istream& in, const CountryLexicon& lexicon,
                         const std::string& source_name) {
  LoadedCorpus result;
  std::vector<Recipe> recipes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    Recipe r = parse_recipe_line(line, source_name, line_no);
    ++result.report.records_read;
    const auto iso = lexicon.resolve(r.country);
    if (!iso) {
      result.report.issues.push_back({line_no, r.recipe_id, "unresolved country", r.country});
      continue;
    }
    r.country = *iso;
    if (auto problem = provenance_problem(r)) {
      result.report.issues.push_back({line_no, r.recipe_id, *problem, ""});
      continue;
    }
    recipes.push_back(std::move(r));
  }
  result.corpus = build(std::move(recipes), &result.report);
  return result;
}

LoadedCorpus load_corpus(const std::filesystem::path& path, const CountryLexicon& lexicon) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file " + path.string());
  return read_corpus(in, lexicon, path.string());
}

void write_recipe(const Recipe& recipe, std::ostream& out) {
  out << recipe_json(recipe).dump() << '\n';
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
  for (const Recipe* r : corpus.recipes()) write_recipe(*r, out);
}

Corpus assemble_corpus(std::vector<Recipe> recipes) {
  for (const auto& r : recipes) {
    if (auto problem = provenance_problem(r)) {
      throw ValidationError("recipe '" + r.recipe_id + "': " + *problem);
    }
  }
  return build(std::move(recipes), nullptr);
}

}  // namespace culdiv
