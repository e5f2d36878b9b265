#include "culdiv/knowledge_space.h"

#include "culdiv/error.h"

namespace culdiv {

KnowledgeSpace make_knowledge_space(std::string dish_id, std::string country,
                                    std::vector<TokenStream> texts, const CoocWindow& window) {
  KnowledgeSpace ks;
  ks.dish_id = std::move(dish_id);
  ks.country = std::move(country);
  ks.window = window;
  for (auto& t : texts) {
    if (t.empty()) {
      ++ks.skipped_empty;
      continue;
    }
    ks.texts.push_back(std::move(t));
  }
  if (ks.texts.empty()) throw EmptyCommunityError(ks.dish_id, ks.country);
  ks.text_distributions.reserve(ks.texts.size());
  for (const auto& t : ks.texts) {
    ks.text_distributions.push_back(estimate_distribution(t));
    ks.pooled.append(t);
  }
  ks.distribution = estimate_distribution(ks.pooled);
  ks.ppmi = ppmi_matrix(ks.texts, window);
  return ks;
}

KnowledgeSpace knowledge_space(const Dish& dish, std::string_view country, Source source,
                               const PosTagger& tagger, const CoocWindow& window, bool filter_pos) {
  std::vector<TokenStream> texts;
  for (const Recipe* r : dish.recipes(country, source)) {
    texts.push_back(filter_pos ? preprocess(r->instructions, tagger, r->recipe_id)
                               : raw_stream(r->instructions, r->recipe_id));
  }
  if (texts.empty()) throw EmptyCommunityError(dish.dish_id, std::string(country));
  return make_knowledge_space(dish.dish_id, std::string(country), std::move(texts), window);
}

}  // namespace culdiv
