#include "culdiv/reports.h"

#include <map>
#include <ostream>
#include <tuple>

#include "culdiv/csv.h"

namespace culdiv {

namespace {

struct Acc {
  double sum = 0.0;
  std::size_t n = 0;
  void add(double x) {
    sum += x;
    ++n;
  }
  double mean() const { return sum / static_cast<double>(n); }
};

bool in_scope(const MetricRecord& r, KeywordScope scope) {
  const bool origin = r.variation_country == r.origin_country;
  switch (scope) {
    case KeywordScope::Origin: return origin;
    case KeywordScope::Variation: return !origin;
    case KeywordScope::All: return true;
  }
  return true;
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

}  // namespace

std::string_view to_string(IncreaseMode mode) {
  return mode == IncreaseMode::Origin ? "origin" : "paired_variation";
}

std::string_view to_string(KeywordScope scope) {
  switch (scope) {
    case KeywordScope::Origin: return "origin";
    case KeywordScope::Variation: return "variation";
    case KeywordScope::All: return "all";
  }
  return "all";
}

std::vector<IncreaseRate> increase_rates(const std::vector<MetricRecord>& records, IncreaseMode mode) {
  using Cell = std::pair<std::string, std::string>;  // dish, variation country
  std::map<Cell, std::array<Acc, std::size(kMetrics)>> human;
  std::map<std::string, std::map<Cell, std::array<Acc, std::size(kMetrics)>>> models;
  for (const auto& r : records) {
    if (r.degenerate || r.source == Source::HumanReference) continue;
    const bool origin = r.variation_country == r.origin_country;
    if (origin != (mode == IncreaseMode::Origin)) continue;
    auto& cell = r.source == Source::ModelGenerated ? models[r.model_name.value_or("")][{r.dish_id, r.variation_country}]
                                                    : human[{r.dish_id, r.variation_country}];
    for (std::size_t m = 0; m < std::size(kMetrics); ++m) cell[m].add(r.get(kMetrics[m]));
  }
  std::vector<IncreaseRate> out;
  for (const auto& [model, cells] : models) {
    for (std::size_t m = 0; m < std::size(kMetrics); ++m) {
      IncreaseRate rate;
      rate.model_name = model;
      rate.metric = kMetrics[m];
      rate.mode = mode;
      Acc ratios;
      for (const auto& [cell, accs] : cells) {
        const auto h = human.find(cell);
        if (h == human.end()) {
          ++rate.unmatched;
          continue;
        }
        const double hm = h->second[m].mean();
        if (hm == 0.0) {
          ++rate.zero_human;
          continue;
        }
        ratios.add((accs[m].mean() - hm) / hm);
      }
      rate.cells = ratios.n;
      if (ratios.n) rate.rate = ratios.mean();
      out.push_back(std::move(rate));
    }
  }
  return out;
}

std::vector<KeywordGap> keyword_gaps(const std::vector<MetricRecord>& records, KeywordScope scope,
                                     const KeywordGroups& groups) {
  std::map<std::string, std::array<std::pair<std::vector<double>, std::vector<double>>, std::size(kMetrics)>> by_model;
  for (const auto& r : records) {
    if (r.source != Source::ModelGenerated || r.degenerate || !r.keyword || r.keyword->empty()) continue;
    if (!in_scope(r, scope)) continue;
    const bool traditional = groups.traditional.count(*r.keyword) > 0;
    const bool creative = groups.creative.empty() ? !traditional : groups.creative.count(*r.keyword) > 0;
    if (!traditional && !creative) continue;
    auto& slots = by_model[r.model_name.value_or("")];
    for (std::size_t m = 0; m < std::size(kMetrics); ++m) {
      (creative ? slots[m].first : slots[m].second).push_back(r.get(kMetrics[m]));
    }
  }
  std::vector<KeywordGap> out;
  for (const auto& [model, slots] : by_model) {
    for (std::size_t m = 0; m < std::size(kMetrics); ++m) {
      KeywordGap g;
      g.model_name = model;
      g.metric = kMetrics[m];
      g.test = welch_t_test(slots[m].first, slots[m].second);
      if (g.test.n_a && g.test.n_b) g.gap = g.test.mean_a - g.test.mean_b;
      out.push_back(std::move(g));
    }
  }
  return out;
}

std::vector<KeywordMean> keyword_means(const std::vector<MetricRecord>& records, KeywordScope scope) {
  std::map<std::tuple<std::size_t, std::string, std::string>, Acc> cells;
  for (const auto& r : records) {
    if (r.source != Source::ModelGenerated || r.degenerate || !r.keyword || !in_scope(r, scope)) continue;
    for (std::size_t m = 0; m < std::size(kMetrics); ++m)
      cells[{m, *r.keyword, r.model_name.value_or("")}].add(r.get(kMetrics[m]));
  }
  std::vector<KeywordMean> out;
  for (const auto& [key, acc] : cells) {
    out.push_back({kMetrics[std::get<0>(key)], std::get<1>(key), std::get<2>(key), acc.mean(), acc.n});
  }
  return out;
}

void write_increase_csv(const std::vector<IncreaseRate>& rates, std::ostream& out) {
  CsvWriter w(out);
  w.row({"model_name", "metric", "mode", "rate", "cells", "zero_human", "unmatched"});
  for (const auto& r : rates) {
    w.row({r.model_name, std::string(to_string(r.metric)), std::string(to_string(r.mode)), opt(r.rate),
           std::to_string(r.cells), std::to_string(r.zero_human), std::to_string(r.unmatched)});
  }
}

void write_keyword_gaps_csv(const std::vector<KeywordGap>& gaps, std::ostream& out) {
  CsvWriter w(out);
  w.row({"model_name", "metric", "mean_creative", "mean_traditional", "n_creative", "n_traditional", "gap", "t",
         "df", "p_value"});
  for (const auto& g : gaps) {
    w.row({g.model_name, std::string(to_string(g.metric)), g.test.n_a ? format_double(g.test.mean_a) : "",
           g.test.n_b ? format_double(g.test.mean_b) : "", std::to_string(g.test.n_a), std::to_string(g.test.n_b),
           opt(g.gap), opt(g.test.t), opt(g.test.df), opt(g.test.p)});
  }
}

void write_keyword_means_csv(const std::vector<KeywordMean>& means, std::ostream& out) {
  CsvWriter w(out);
  w.row({"metric", "keyword", "model_name", "mean", "n"});
  for (const auto& m : means) {
    w.row({std::string(to_string(m.metric)), m.keyword, m.model_name, format_double(m.mean), std::to_string(m.n)});
  }
}

}  // namespace culdiv
