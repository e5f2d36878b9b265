#include "culdiv/prompts.h"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "culdiv/ingredients.h"
#include "fixtures.h"

namespace culdiv {
namespace {

const CountryLexicon& lex() { return CountryLexicon::bundled(); }

Corpus three_dishes() { return load_corpus(testing::fixture_path("corpus/three_dishes.jsonl"), lex()).corpus; }

TEST(Prompts, FortyFourPerDishCountry) {
  const Corpus corpus = three_dishes();
  const auto prompts = emit_prompts(corpus, lex());
  std::map<std::pair<std::string, std::string>, int> per_cell;
  for (const auto& p : prompts) ++per_cell[{p.dish_id, p.country}];
  EXPECT_EQ(per_cell.size(), 12u);
  for (const auto& [cell, n] : per_cell) EXPECT_EQ(n, 44) << cell.first << " " << cell.second;
  EXPECT_EQ(prompts.size(), 12u * 44u);
}

TEST(Prompts, SingleDishSingleCountry) {
  Recipe r;
  r.recipe_id = "r1";
  r.dish_id = "d1";
  r.dish_name = "Couscous";
  r.country = "MA";
  r.ingredients = {"semolina"};
  r.title = "Couscous";
  r.instructions = "Steam.";
  const auto prompts = emit_prompts(assemble_corpus({r}), lex());
  ASSERT_EQ(prompts.size(), 44u);
  std::set<std::tuple<std::string, std::string, std::string, PromptTemplate>> keys;
  std::set<std::string> ids;
  for (const auto& p : prompts) {
    keys.insert({p.dish_id, p.country, p.keyword, p.template_id});
    ids.insert(p.prompt_id);
  }
  EXPECT_EQ(keys.size(), 44u);
  EXPECT_EQ(ids.size(), 44u);
}

TEST(Prompts, DeterministicAcrossRuns) {
  const Corpus corpus = three_dishes();
  std::ostringstream a, b;
  for (const auto& p : emit_prompts(corpus, lex())) write_prompt_jsonl(p, a);
  for (const auto& p : emit_prompts(three_dishes(), lex())) write_prompt_jsonl(p, b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Prompts, TemplateInvariants) {
  const Corpus corpus = three_dishes();
  const TitleMatcher matcher(lex());
  for (const auto& p : emit_prompts(corpus, lex())) {
    ASSERT_GE(p.rendered_text.size(), 6u);
    EXPECT_EQ(p.rendered_text.substr(p.rendered_text.size() - 6), "Title:");
    if (p.template_id == PromptTemplate::Blend) {
      EXPECT_EQ(p.country_mode, CountryMode::Blank);
      // The fixed output contract mentions English, a demonym.
      std::string text = p.rendered_text.substr(0, p.rendered_text.find("\n\nPlease return"));
      text.erase(text.find(p.dish_name), p.dish_name.size());
      EXPECT_FALSE(matcher.detect(text)) << text;
    } else {
      EXPECT_EQ(matcher.detect(p.rendered_text.substr(0, p.rendered_text.find(p.dish_name))), p.country)
          << p.rendered_text;
    }
  }
}

TEST(Prompts, RenderedExamples) {
  const Country& ma = lex().at("MA");
  const auto persona = render_prompt(PromptTemplate::Persona, "authentic", "Couscous", ma);
  EXPECT_EQ(persona.rfind("You are knowledgeable about Morocco", 0), 0u);
  EXPECT_NE(persona.find("Create a authentic version of this recipe: Couscous."), std::string::npos);
  const auto basic = render_prompt(PromptTemplate::Basic, "novel", "Couscous", lex().at("JM"));
  EXPECT_EQ(basic.rfind("Create a novel Jamaican version of this recipe: Couscous.", 0), 0u);
  EXPECT_EQ(render_prompt(PromptTemplate::Basic, "", "Couscous", ma).rfind("Create a Moroccan version", 0), 0u);
  EXPECT_EQ(render_prompt(PromptTemplate::Blend, "", "Couscous", ma).rfind("Create a version of this", 0), 0u);
  EXPECT_NE(basic.find("Please return, in English only, the following: \n1. A recipe title."), std::string::npos);
}

TEST(Prompts, CountryModes) {
  const Corpus corpus = three_dishes();
  for (const auto& p : emit_prompts(corpus, lex())) {
    const Dish& d = *corpus.find(p.dish_id);
    if (p.template_id == PromptTemplate::Blend) continue;
    EXPECT_EQ(p.country_mode, p.country == d.origin_country ? CountryMode::Origin : CountryMode::Variation);
  }
}

TEST(Prompts, JsonlRoundTrip) {
  const auto prompts = emit_prompts(three_dishes(), lex());
  std::ostringstream out;
  for (const auto& p : prompts) write_prompt_jsonl(p, out);
  std::istringstream in(out.str());
  std::string line;
  std::size_t i = 0;
  while (std::getline(in, line)) {
    const auto p = parse_prompt_line(line, "mem", i + 1);
    EXPECT_EQ(p.prompt_id, prompts[i].prompt_id);
    EXPECT_EQ(p.rendered_text, prompts[i].rendered_text);
    EXPECT_EQ(p.country_mode, prompts[i].country_mode);
    EXPECT_EQ(p.keyword, prompts[i].keyword);
    ++i;
  }
  EXPECT_EQ(i, prompts.size());
}

TEST(Prompts, ConfigurableBudget) {
  PromptConfig config;
  config.keywords = {"", "novel"};
  config.templates = {PromptTemplate::Basic};
  EXPECT_EQ(emit_prompts(three_dishes(), lex(), config).size(), 12u * 2u);
}

}  // namespace
}  // namespace culdiv
