#include "culdiv/novelty.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "culdiv/error.h"

namespace culdiv {

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::Newness: return "newness";
    case Metric::Uniqueness: return "uniqueness";
    case Metric::Difference: return "difference";
    case Metric::NewSurprise: return "new_surprise";
    case Metric::DivergentSurprise: return "divergent_surprise";
  }
  return "newness";
}

std::optional<Metric> parse_metric(std::string_view text) {
  for (Metric m : kMetrics)
    if (to_string(m) == text) return m;
  return std::nullopt;
}

std::string_view to_string(Thresholds::Provenance provenance) {
  return provenance == Thresholds::Provenance::Manual ? "manual" : "leave_one_out";
}

namespace {

using Counts = std::map<std::string, std::size_t, std::less<>>;

Counts count(const TokenStream& s) {
  Counts c;
  for (const auto& t : s.tokens) ++c[t];
  return c;
}

}  // namespace

Thresholds loo_thresholds(const KnowledgeSpace& ks) {
  Thresholds th;
  th.provenance = Thresholds::Provenance::LeaveOneOut;
  const std::size_t n = ks.texts.size();
  if (n < 2) {
    th.degenerate = true;
    th.newness_eps = 0.0;
    th.difference_eps = std::numeric_limits<double>::infinity();
    return th;
  }

  const Counts pooled = count(ks.pooled);
  double eps_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Counts rest = pooled;
    for (const auto& [token, c] : count(ks.texts[i])) rest[token] -= c;
    std::vector<std::pair<std::string, std::size_t>> entries(rest.begin(), rest.end());
    const auto without = TokenDistribution::from_counts(std::move(entries));
    double positive_sum = 0.0;
    std::size_t positive = 0;
    for (const auto& c : jsd_contributions(without, ks.text_distributions[i])) {
      if (c.value > 0.0) {
        positive_sum += c.value;
        ++positive;
      }
    }
    eps_sum += positive ? positive_sum / static_cast<double>(positive) : 0.0;
  }
  th.newness_eps = eps_sum / static_cast<double>(n);

  double pair_sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      pair_sum += jsd(ks.text_distributions[i], ks.text_distributions[j]);
      ++pairs;
    }
  }
  th.difference_eps = pair_sum / static_cast<double>(pairs);
  return th;
}

NewnessScore newness(const KnowledgeSpace& ks, const TokenDistribution& nt, const Thresholds& th,
                     DisappearanceNorm norm) {
  if (nt.empty()) throw EmptyDistributionError();
  std::size_t appear = 0;
  std::size_t disappear = 0;
  for (const auto& c : jsd_contributions(ks.distribution, nt)) {
    if (c.value < th.newness_eps) continue;
    if (c.direction == Direction::Appearing) ++appear;
    if (c.direction == Direction::Disappearing) ++disappear;
  }
  NewnessScore s;
  const double q_support = static_cast<double>(nt.support_size());
  s.appearance = static_cast<double>(appear) / q_support;
  const double d_norm = norm == DisappearanceNorm::Reference
                            ? static_cast<double>(ks.distribution.support_size())
                            : q_support;
  s.disappearance = static_cast<double>(disappear) / d_norm;
  s.newness = kLambdaAppearance * s.appearance + kLambdaDisappearance * s.disappearance;
  return s;
}

double uniqueness(const KnowledgeSpace& ks, const TokenDistribution& nt) {
  return jsd(ks.distribution, nt);
}

double difference(const KnowledgeSpace& ks, const TokenDistribution& nt, const Thresholds& th) {
  if (nt.empty()) throw EmptyDistributionError();
  if (th.degenerate || ks.text_distributions.empty()) return 0.0;
  std::size_t far = 0;
  for (const auto& pt : ks.text_distributions)
    if (jsd(pt, nt) >= th.difference_eps) ++far;
  return static_cast<double>(far) / static_cast<double>(ks.text_distributions.size());
}

double new_surprise(const PpmiMatrix& reference, const PpmiMatrix& variation) {
  std::size_t pairs = 0;
  std::size_t unseen = 0;
  const auto& vocab = variation.vocabulary();
  variation.for_each_pair([&](std::uint32_t a, std::uint32_t b, double) {
    ++pairs;
    if (!(reference.value(vocab[a], vocab[b]) > 0.0)) ++unseen;
  });
  return pairs ? static_cast<double>(unseen) / static_cast<double>(pairs) : 0.0;
}

double new_surprise(const KnowledgeSpace& ks, const TokenStream& nt_stream) {
  if (nt_stream.empty()) throw EmptyDistributionError();
  const TokenStream streams[] = {nt_stream};
  return new_surprise(ks.ppmi, ppmi_matrix(streams, ks.window));
}

DivergentSurpriseScore divergent_surprise(const PpmiMatrix& reference, const PpmiMatrix& variation) {
  DivergentSurpriseScore s;
  std::vector<std::string> shared;
  std::set_intersection(reference.vocabulary().begin(), reference.vocabulary().end(),
                        variation.vocabulary().begin(), variation.vocabulary().end(),
                        std::back_inserter(shared));
  s.shared_words = shared.size();
  s.no_shared_words = shared.empty();
  double sum = 0.0;
  for (const auto& w : shared) {
    const auto p = ppmi_row_distribution(reference, w, shared);
    if (p.empty) continue;
    const auto q = ppmi_row_distribution(variation, w, shared);
    if (q.empty) continue;
    sum += jsd(p.distribution, q.distribution);
    ++s.scored_words;
  }
  s.value = s.scored_words ? sum / static_cast<double>(s.scored_words) : 0.0;
  return s;
}

DivergentSurpriseScore divergent_surprise(const KnowledgeSpace& ks, const TokenStream& nt_stream) {
  if (nt_stream.empty()) throw EmptyDistributionError();
  const TokenStream streams[] = {nt_stream};
  return divergent_surprise(ks.ppmi, ppmi_matrix(streams, ks.window));
}

Thresholds community_thresholds(const KnowledgeSpace& ks, const MetricConfig& config) {
  Thresholds th = loo_thresholds(ks);
  if (config.newness_eps) {
    th.newness_eps = *config.newness_eps;
    th.provenance = Thresholds::Provenance::Manual;
  }
  if (config.difference_eps) {
    th.difference_eps = *config.difference_eps;
    th.provenance = Thresholds::Provenance::Manual;
  }
  return th;
}

double MetricScores::get(Metric metric) const {
  switch (metric) {
    case Metric::Newness: return newness;
    case Metric::Uniqueness: return uniqueness;
    case Metric::Difference: return difference;
    case Metric::NewSurprise: return new_surprise;
    case Metric::DivergentSurprise: return divergent_surprise;
  }
  return newness;
}

MetricScores score_stream(const KnowledgeSpace& ks, const Thresholds& th, const TokenStream& nt,
                          const MetricConfig& config) {
  const TokenDistribution q = estimate_distribution(nt);
  MetricScores s;
  const auto n = newness(ks, q, th, config.disappearance_norm);
  s.newness = n.newness;
  s.appearance = n.appearance;
  s.disappearance = n.disappearance;
  s.uniqueness = uniqueness(ks, q);
  s.difference = difference(ks, q, th);

  const TokenStream streams[] = {nt};
  const PpmiMatrix qpmi = ppmi_matrix(streams, ks.window);
  s.new_surprise = new_surprise(ks.ppmi, qpmi);
  const auto ds = divergent_surprise(ks.ppmi, qpmi);
  s.divergent_surprise = ds.value;
  s.shared_words = ds.shared_words;
  s.scored_words = ds.scored_words;
  s.no_shared_words = ds.no_shared_words;
  return s;
}

MetricRecord score_variation(const KnowledgeSpace& ks, const Thresholds& th, const Recipe& recipe,
                             const PosTagger& tagger, const MetricConfig& config) {
  const TokenStream nt = config.filter_pos ? preprocess(recipe.instructions, tagger, recipe.recipe_id)
                                           : raw_stream(recipe.instructions, recipe.recipe_id);
  MetricRecord r;
  r.dish_id = recipe.dish_id;
  r.origin_country = ks.country;
  r.variation_country = recipe.country;
  r.recipe_id = recipe.recipe_id;
  r.source = recipe.source;
  r.model_name = recipe.model_name;
  r.keyword = recipe.keyword;
  r.template_id = recipe.template_id;
  r.scores = score_stream(ks, th, nt, config);
  r.degenerate = th.degenerate;
  return r;
}

}  // namespace culdiv
