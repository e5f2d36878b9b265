#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "culdiv/corpus.h"
#include "culdiv/distrib.h"
#include "culdiv/text.h"

namespace culdiv {

// The reference community for one (dish, country): its texts, their
// distributions, the pooled distribution P and the pooled PPMI matrix.
struct KnowledgeSpace {
  std::string dish_id;
  std::string country;
  CoocWindow window;
  std::vector<TokenStream> texts;  // non-empty texts only
  std::vector<TokenDistribution> text_distributions;
  TokenStream pooled;
  TokenDistribution distribution;
  PpmiMatrix ppmi;
  std::size_t skipped_empty = 0;

  std::size_t text_count() const { return texts.size(); }
};

// Empty streams are skipped and counted. Throws EmptyCommunityError when no
// non-empty stream remains.
KnowledgeSpace make_knowledge_space(std::string dish_id, std::string country,
                                    std::vector<TokenStream> texts, const CoocWindow& window);

// Preprocessed instructions of the dish's recipes for (country, source).
// With filter_pos false the tagger is bypassed and raw lowercase tokens are
// kept.
KnowledgeSpace knowledge_space(const Dish& dish, std::string_view country, Source source,
                               const PosTagger& tagger, const CoocWindow& window,
                               bool filter_pos = true);

}  // namespace culdiv
