#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "culdiv/corpus.h"

namespace culdiv {

// The empty keyword comes first.
const std::vector<std::string>& default_keywords();

enum class PromptTemplate { Basic, Persona, Blend, Definition };
inline constexpr PromptTemplate kTemplates[] = {PromptTemplate::Basic, PromptTemplate::Persona,
                                                PromptTemplate::Blend, PromptTemplate::Definition};
std::string_view to_string(PromptTemplate t);  // the template_id
std::optional<PromptTemplate> parse_template(std::string_view text);

enum class CountryMode { Origin, Variation, Blank };
std::string_view to_string(CountryMode mode);

struct PromptSpec {
  std::string prompt_id;
  std::string dish_id;
  std::string dish_name;
  std::string country;  // the (dish, country) slot, also set for Blank prompts
  CountryMode country_mode = CountryMode::Origin;
  std::string keyword;  // "" for the empty keyword
  PromptTemplate template_id = PromptTemplate::Basic;
  std::string rendered_text;
};

struct PromptConfig {
  std::vector<std::string> keywords = default_keywords();
  std::vector<PromptTemplate> templates{std::begin(kTemplates), std::end(kTemplates)};
};

std::string render_prompt(PromptTemplate t, std::string_view keyword, std::string_view dish_name,
                          const Country& country);

// keywords x templates for every (dish, country) of the corpus, dishes in id
// order and countries sorted; the Blend template fills no country.
std::vector<PromptSpec> emit_prompts(const Corpus& corpus, const CountryLexicon& lexicon,
                                     const PromptConfig& config = {});

void write_prompt_jsonl(const PromptSpec& prompt, std::ostream& out);
PromptSpec parse_prompt_line(std::string_view line, const std::string& source = "<prompts>",
                             std::size_t line_no = 1);

}  // namespace culdiv
