#include "culdiv/prompts.h"

#include <cstdio>
#include <ostream>

#include "culdiv/error.h"
#include "json.hpp"

namespace culdiv {

namespace {

using nlohmann::json;

constexpr std::string_view kOutputContract =
    "\n\nPlease return, in English only, the following: \n"
    "1. A recipe title. \n"
    "2. A list of ingredients. \n"
    "3. A set of cooking instructions. \n\n"
    "The instructions must use only the ingredients listed above, be clear and concise, and maintain the "
    "structure and order described. Title:";

// One sentence per keyword for the Definition template.
std::string_view definition(std::string_view keyword) {
  if (keyword.empty()) return "A version of a recipe keeps the dish recognizable while adapting how it is made.";
  if (keyword == "novel") return "A novel recipe introduces something that has not been done before.";
  if (keyword == "unique") return "A unique recipe stands apart from every other recipe of the same dish.";
  if (keyword == "new") return "A new recipe departs from the versions that already exist.";
  if (keyword == "different") return "A different recipe changes ingredients or steps compared to the usual one.";
  if (keyword == "surprising") return "A surprising recipe contains choices a cook would not expect.";
  if (keyword == "creative, desirable and useful")
    return "A creative, desirable and useful recipe is inventive while remaining appealing and practical to cook.";
  if (keyword == "original") return "An original recipe is conceived independently rather than copied.";
  if (keyword == "authentic") return "An authentic recipe is faithful to how the dish is genuinely prepared.";
  if (keyword == "traditional") return "A traditional recipe follows the practice passed down over generations.";
  if (keyword == "prototypical") return "A prototypical recipe is the most representative example of the dish.";
  return "";
}

std::string create_clause(std::string_view keyword, std::string_view nationality, std::string_view dish_name) {
  std::string out = "Create a ";
  if (!keyword.empty()) {
    out += keyword;
    out += ' ';
  }
  if (!nationality.empty()) {
    out += nationality;
    out += ' ';
  }
  out += "version of this recipe: ";
  out += dish_name;
  out += '.';
  return out;
}

}  // namespace

const std::vector<std::string>& default_keywords() {
  static const std::vector<std::string> kKeywords = {
      "",         "novel",    "unique",    "new",         "different",   "surprising",
      "creative, desirable and useful",    "original",    "authentic",   "traditional", "prototypical"};
  return kKeywords;
}

std::string_view to_string(PromptTemplate t) {
  switch (t) {
    case PromptTemplate::Basic: return "basic";
    case PromptTemplate::Persona: return "persona";
    case PromptTemplate::Blend: return "blend";
    case PromptTemplate::Definition: return "definition";
  }
  return "basic";
}

std::optional<PromptTemplate> parse_template(std::string_view text) {
  for (auto t : kTemplates)
    if (to_string(t) == text) return t;
  return std::nullopt;
}

std::string_view to_string(CountryMode mode) {
  switch (mode) {
    case CountryMode::Origin: return "origin";
    case CountryMode::Variation: return "variation";
    case CountryMode::Blank: return "blank";
  }
  return "origin";
}

std::string render_prompt(PromptTemplate t, std::string_view keyword, std::string_view dish_name,
                          const Country& country) {
  const std::string& nationality = country.demonyms.empty() ? country.name : country.demonyms.front();
  std::string out;
  switch (t) {
    case PromptTemplate::Basic:
      out = create_clause(keyword, nationality, dish_name);
      break;
    case PromptTemplate::Persona:
      out = "You are knowledgeable about " + country.name +
            ", including its culture, history, and nuances, providing insightful and context-aware responses. " +
            create_clause(keyword, "", dish_name);
      break;
    case PromptTemplate::Blend:
      out = create_clause(keyword, "", dish_name);
      break;
    case PromptTemplate::Definition:
      out = std::string(definition(keyword)) + " " + create_clause(keyword, nationality, dish_name);
      break;
  }
  out += kOutputContract;
  return out;
}

std::vector<PromptSpec> emit_prompts(const Corpus& corpus, const CountryLexicon& lexicon, const PromptConfig& config) {
  std::vector<PromptSpec> out;
  for (const auto& dish : corpus.dishes()) {
    for (const auto& iso : dish.countries()) {
      const Country& country = lexicon.at(iso);
      for (std::size_t k = 0; k < config.keywords.size(); ++k) {
        for (auto t : config.templates) {
          PromptSpec p;
          char slot[8];
          std::snprintf(slot, sizeof slot, "k%02zu", k);
          p.prompt_id = dish.dish_id + "/" + iso + "/" + std::string(to_string(t)) + "/" + slot;
          p.dish_id = dish.dish_id;
          p.dish_name = dish.name;
          p.country = iso;
          p.country_mode = t == PromptTemplate::Blend ? CountryMode::Blank
                           : iso == dish.origin_country ? CountryMode::Origin
                                                        : CountryMode::Variation;
          p.keyword = config.keywords[k];
          p.template_id = t;
          p.rendered_text = render_prompt(t, p.keyword, dish.name, country);
          out.push_back(std::move(p));
        }
      }
    }
  }
  return out;
}

void write_prompt_jsonl(const PromptSpec& p, std::ostream& out) {
  json j;
  j["schema"] = 1;
  j["prompt_id"] = p.prompt_id;
  j["dish_id"] = p.dish_id;
  j["dish_name"] = p.dish_name;
  j["country"] = p.country;
  j["country_mode"] = std::string(to_string(p.country_mode));
  j["keyword"] = p.keyword;
  j["template_id"] = std::string(to_string(p.template_id));
  j["rendered_text"] = p.rendered_text;
  out << j.dump() << '\n';
}

PromptSpec parse_prompt_line(std::string_view line, const std::string& source, std::size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(source, line_no, std::string("malformed JSON: ") + e.what());
  }
  try {
    PromptSpec p;
    p.prompt_id = j.at("prompt_id").get<std::string>();
    p.dish_id = j.at("dish_id").get<std::string>();
    p.dish_name = j.at("dish_name").get<std::string>();
    p.country = j.at("country").get<std::string>();
    const auto mode = j.at("country_mode").get<std::string>();
    if (mode == "origin") {
      p.country_mode = CountryMode::Origin;
    } else if (mode == "variation") {
      p.country_mode = CountryMode::Variation;
    } else if (mode == "blank") {
      p.country_mode = CountryMode::Blank;
    } else {
      throw ParseError(source, line_no, "unknown country_mode '" + mode + "'");
    }
    p.keyword = j.at("keyword").get<std::string>();
    const auto t = parse_template(j.at("template_id").get<std::string>());
    if (!t) throw ParseError(source, line_no, "unknown template_id");
    p.template_id = *t;
    p.rendered_text = j.at("rendered_text").get<std::string>();
    return p;
  } catch (const json::exception& e) {
    throw ParseError(source, line_no, e.what());
  }
}

}  // namespace culdiv
