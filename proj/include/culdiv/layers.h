#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "culdiv/corpus.h"
#include "culdiv/novelty.h"

namespace culdiv {

enum class LayerTag { Embedding, Middle, Lm3, Lm2, Lm1 };
inline constexpr LayerTag kLayerTags[] = {LayerTag::Embedding, LayerTag::Middle, LayerTag::Lm3, LayerTag::Lm2,
                                          LayerTag::Lm1};
std::string_view to_string(LayerTag tag);  // embedding, middle, lm3, lm2, lm1
std::optional<LayerTag> parse_layer_tag(std::string_view text);

// Decoded tokens of one recipe at one depth of one model.
struct LayerRecord {
  std::string model_name;
  std::string recipe_id;
  LayerTag layer_tag = LayerTag::Embedding;
  std::vector<std::string> tokens;
};

LayerRecord parse_layer_line(std::string_view line, const std::string& source = "<layers>", std::size_t line_no = 1);
std::vector<LayerRecord> read_layer_records(std::istream& in, const std::string& source = "<layers>");
void write_layer_record(const LayerRecord& record, std::ostream& out);

// Tokens are trimmed and lowercased. Tokens without letters or digits end a
// sentence when they hold '.', '!', '?' or a newline and are dropped
// otherwise. With a tagger, only content lemmas are kept.
TokenStream layer_stream(const LayerRecord& record, const PosTagger* tagger = nullptr);

struct LayerGapConfig {
  MetricConfig metrics;
  bool filter_pos = false;
};

// Per (model, layer, stream, metric). Streams: "human" holds human recipes
// re-encoded by the model, "model" the model's own recipes. Origin human
// recipes are the references, each scored against the others.
struct LayerGapRow {
  std::string model_name;
  LayerTag layer_tag = LayerTag::Embedding;
  std::string stream;
  Metric metric = Metric::Newness;
  std::optional<double> origin_mean;
  std::optional<double> variation_mean;
  std::optional<double> gap;  // origin_mean - variation_mean
  std::size_t n_origin = 0;
  std::size_t n_variation = 0;
  std::size_t missing_reference_dishes = 0;
  bool incomplete = false;
};

// Throws ValidationError for records naming recipes absent from the corpus
// or repeating a (model, recipe, layer) triple.
std::vector<LayerGapRow> layer_gap_report(const std::vector<LayerRecord>& records, const Corpus& corpus,
                                          const LayerGapConfig& config = {});

void write_layer_gaps_csv(const std::vector<LayerGapRow>& rows, std::ostream& out);

}  // namespace culdiv
