#include "culdiv/layers.h"

#include <array>
#include <map>
#include <ostream>
#include <set>
#include <tuple>
#include <unordered_map>

#include "culdiv/csv.h"
#include "culdiv/error.h"
#include "culdiv/knowledge_space.h"
#include "json.hpp"

namespace culdiv {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

struct Acc {
  double sum = 0.0;
  std::size_t n = 0;
  std::optional<double> mean() const {
    if (!n) return std::nullopt;
    return sum / static_cast<double>(n);
  }
};

using Metrics = std::array<Acc, std::size(kMetrics)>;

void add(Metrics& acc, const MetricScores& s) {
  for (std::size_t m = 0; m < std::size(kMetrics); ++m) {
    acc[m].sum += s.get(kMetrics[m]);
    ++acc[m].n;
  }
}

}  // namespace

std::string_view to_string(LayerTag tag) {
  switch (tag) {
    case LayerTag::Embedding: return "embedding";
    case LayerTag::Middle: return "middle";
    case LayerTag::Lm3: return "lm3";
    case LayerTag::Lm2: return "lm2";
    case LayerTag::Lm1: return "lm1";
  }
  return "embedding";
}

std::optional<LayerTag> parse_layer_tag(std::string_view text) {
  for (auto t : kLayerTags)
    if (to_string(t) == text) return t;
  return std::nullopt;
}

LayerRecord parse_layer_line(std::string_view line, const std::string& source, std::size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(source, line_no, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError(source, line_no, "record is not a JSON object");
  LayerRecord r;
  try {
    r.model_name = j.at("model_name").get<std::string>();
    r.recipe_id = j.at("recipe_id").get<std::string>();
    const auto tag = j.at("layer_tag").get<std::string>();
    const auto parsed = parse_layer_tag(tag);
    if (!parsed) throw ParseError(source, line_no, "unknown layer_tag '" + tag + "'");
    r.layer_tag = *parsed;
    r.tokens = j.at("tokens").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ParseError(source, line_no, e.what());
  }
  if (r.model_name.empty() || r.recipe_id.empty()) throw ParseError(source, line_no, "empty model_name or recipe_id");
  return r;
}

std::vector<LayerRecord> read_layer_records(std::istream& in, const std::string& source) {
  std::vector<LayerRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) out.push_back(parse_layer_line(line, source, line_no));
  }
  return out;
}

void write_layer_record(const LayerRecord& r, std::ostream& out) {
  json j;
  j["model_name"] = r.model_name;
  j["recipe_id"] = r.recipe_id;
  j["layer_tag"] = std::string(to_string(r.layer_tag));
  j["tokens"] = r.tokens;
  out << j.dump() << '\n';
}

TokenStream layer_stream(const LayerRecord& record, const PosTagger* tagger) {
  TokenStream stream;
  stream.source_recipe = record.recipe_id;
  stream.stage = tagger ? TokenStream::Stage::Filtered : TokenStream::Stage::RawText;
  std::vector<std::string> sentence;
  auto flush = [&] {
    if (tagger) {
      std::vector<std::string> kept;
      for (auto& t : tagger->tag(sentence))
        if (is_content(t.pos)) kept.push_back(std::move(t.lemma));
      stream.push_sentence(kept);
    } else {
      stream.push_sentence(sentence);
    }
    sentence.clear();
  };
  for (const auto& raw : record.tokens) {
    const std::string token = to_lower(trim(raw));
    if (tokenize(token).empty()) {
      if (raw.find_first_of(".!?\n") != std::string::npos) flush();
      continue;
    }
    sentence.push_back(token);
  }
  flush();
  return stream;
}

std::vector<LayerGapRow> layer_gap_report(const std::vector<LayerRecord>& records, const Corpus& corpus,
                                          const LayerGapConfig& config) {
  std::unordered_map<std::string, const Recipe*> by_id;
  for (const Recipe* r : corpus.recipes()) by_id.emplace(r->recipe_id, r);

  // (model, layer) -> dish -> recipe -> stream
  using Key = std::pair<std::string, LayerTag>;
  std::map<Key, std::map<std::string, std::map<std::string, TokenStream>>> cells;
  const PosTagger* tagger = config.filter_pos ? &default_tagger() : nullptr;
  for (const auto& rec : records) {
    const auto it = by_id.find(rec.recipe_id);
    if (it == by_id.end()) throw ValidationError("layer record for unknown recipe '" + rec.recipe_id + "'");
    auto& slot = cells[{rec.model_name, rec.layer_tag}][it->second->dish_id];
    if (!slot.emplace(rec.recipe_id, layer_stream(rec, tagger)).second) {
      throw ValidationError("duplicate layer record for model '" + rec.model_name + "' recipe '" + rec.recipe_id +
                            "' layer " + std::string(to_string(rec.layer_tag)));
    }
  }

  // A model missing a whole depth still gets rows, flagged incomplete.
  std::map<std::string, std::set<std::string>> model_dishes;
  for (const auto& [key, dishes] : cells)
    for (const auto& [dish_id, streams] : dishes) model_dishes[key.first].insert(dish_id);
  for (const auto& [model, dish_ids] : model_dishes)
    for (auto tag : kLayerTags) cells.try_emplace({model, tag});

  std::vector<LayerGapRow> out;
  for (const auto& [key, dishes] : cells) {
    const auto& [model, layer] = key;
    Metrics human_origin, human_variation, model_origin, model_variation;
    std::size_t missing = dishes.empty() ? model_dishes.at(model).size() : 0;
    for (const auto& [dish_id, streams] : dishes) {
      const Dish& dish = *corpus.find(dish_id);
      std::vector<TokenStream> refs;
      std::vector<const Recipe*> ref_recipes;
      for (const auto& r : dish.references) {
        const auto s = streams.find(r.recipe_id);
        if (s != streams.end() && !s->second.empty()) {
          refs.push_back(s->second);
          ref_recipes.push_back(&r);
        }
      }
      if (refs.empty()) {
        ++missing;
        continue;
      }
      const auto ks = make_knowledge_space(dish_id, dish.origin_country, refs, config.metrics.window);
      const Thresholds th = community_thresholds(ks, config.metrics);
      for (const auto& [recipe_id, stream] : streams) {
        const Recipe& r = *by_id.at(recipe_id);
        if (stream.empty() || r.source == Source::HumanReference) continue;
        if (r.source == Source::ModelGenerated && r.model_name != model) continue;
        const bool origin = r.country == dish.origin_country;
        const auto scores = score_stream(ks, th, stream, config.metrics);
        if (r.source == Source::ModelGenerated) {
          add(origin ? model_origin : model_variation, scores);
        } else {
          add(origin ? human_origin : human_variation, scores);
        }
      }
      // Each reference against the others.
      if (refs.size() >= 2) {
        for (std::size_t i = 0; i < refs.size(); ++i) {
          std::vector<TokenStream> rest;
          for (std::size_t k = 0; k < refs.size(); ++k)
            if (k != i) rest.push_back(refs[k]);
          const auto loo = make_knowledge_space(dish_id, dish.origin_country, std::move(rest), config.metrics.window);
          add(human_origin, score_stream(loo, community_thresholds(loo, config.metrics), refs[i], config.metrics));
        }
      }
    }
    for (const auto& [stream_name, origin, variation] :
         {std::tuple{"human", &human_origin, &human_variation}, std::tuple{"model", &model_origin, &model_variation}}) {
      for (std::size_t m = 0; m < std::size(kMetrics); ++m) {
        LayerGapRow row;
        row.model_name = model;
        row.layer_tag = layer;
        row.stream = stream_name;
        row.metric = kMetrics[m];
        row.origin_mean = (*origin)[m].mean();
        row.variation_mean = (*variation)[m].mean();
        if (row.origin_mean && row.variation_mean) row.gap = *row.origin_mean - *row.variation_mean;
        row.n_origin = (*origin)[m].n;
        row.n_variation = (*variation)[m].n;
        row.missing_reference_dishes = missing;
        row.incomplete = missing > 0;
        out.push_back(std::move(row));
      }
    }
  }
  return out;
}

void write_layer_gaps_csv(const std::vector<LayerGapRow>& rows, std::ostream& out) {
  CsvWriter w(out);
  w.row({"model_name", "layer_tag", "stream", "metric", "origin_mean", "variation_mean", "gap", "n_origin",
         "n_variation", "missing_reference_dishes", "incomplete"});
  const auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const auto& r : rows) {
    w.row({r.model_name, std::string(to_string(r.layer_tag)), r.stream, std::string(to_string(r.metric)),
           opt(r.origin_mean), opt(r.variation_mean), opt(r.gap), std::to_string(r.n_origin),
           std::to_string(r.n_variation), std::to_string(r.missing_reference_dishes), r.incomplete ? "1" : "0"});
  }
}

}  // namespace culdiv
