#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "culdiv/novelty.h"
#include "culdiv/stats.h"

namespace culdiv {

// Origin: cells whose variation country is the dish origin.
// PairedVariation: every other cell.
enum class IncreaseMode { Origin, PairedVariation };
std::string_view to_string(IncreaseMode mode);

struct IncreaseRate {
  std::string model_name;
  Metric metric = Metric::Newness;
  IncreaseMode mode = IncreaseMode::Origin;
  std::optional<double> rate;  // mean of (model - human) / human over usable cells
  std::size_t cells = 0;       // usable cells
  std::size_t zero_human = 0;  // matched cells dropped because human = 0
  std::size_t unmatched = 0;   // model cells without human records
};

// Cells are (dish, variation country) means per source; degenerate records
// are excluded. One row per model and metric.
std::vector<IncreaseRate> increase_rates(const std::vector<MetricRecord>& records, IncreaseMode mode);

enum class KeywordScope { Origin, Variation, All };
std::string_view to_string(KeywordScope scope);

struct KeywordGroups {
  std::set<std::string> traditional = {"authentic", "traditional", "prototypical"};
  // Empty means every other non-empty keyword.
  std::set<std::string> creative;
};

struct KeywordGap {
  std::string model_name;
  Metric metric = Metric::Newness;
  WelchResult test;  // a = creative, b = traditional
  std::optional<double> gap;  // mean(creative) - mean(traditional)
};

// Model records only; records with the empty keyword and degenerate records
// are left out.
std::vector<KeywordGap> keyword_gaps(const std::vector<MetricRecord>& records, KeywordScope scope = KeywordScope::Origin,
                                     const KeywordGroups& groups = {});

struct KeywordMean {
  Metric metric = Metric::Newness;
  std::string keyword;
  std::string model_name;
  double mean = 0.0;
  std::size_t n = 0;
};

// Per-keyword means per model, rows ordered metric, keyword, model.
std::vector<KeywordMean> keyword_means(const std::vector<MetricRecord>& records, KeywordScope scope = KeywordScope::All);

void write_increase_csv(const std::vector<IncreaseRate>& rates, std::ostream& out);
void write_keyword_gaps_csv(const std::vector<KeywordGap>& gaps, std::ostream& out);
void write_keyword_means_csv(const std::vector<KeywordMean>& means, std::ostream& out);

}  // namespace culdiv
