#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "culdiv/corpus.h"
#include "culdiv/distrib.h"
#include "culdiv/knowledge_space.h"
#include "culdiv/text.h"

namespace culdiv {

inline constexpr double kLambdaAppearance = 0.8;
inline constexpr double kLambdaDisappearance = 0.2;

enum class Metric { Newness, Uniqueness, Difference, NewSurprise, DivergentSurprise };

inline constexpr std::array<Metric, 5> kMetrics = {Metric::Newness, Metric::Uniqueness,
                                                   Metric::Difference, Metric::NewSurprise,
                                                   Metric::DivergentSurprise};

std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view text);

struct Thresholds {
  enum class Provenance { LeaveOneOut, Manual };

  double newness_eps = 0.0;
  double difference_eps = 0.0;  // +inf when degenerate
  Provenance provenance = Provenance::LeaveOneOut;
  bool degenerate = false;  // fewer than two reference texts
};

std::string_view to_string(Thresholds::Provenance provenance);

// newness_eps: mean over held-out texts t of the mean positive contribution of
// jsd_contributions(P without t, P_t). difference_eps: mean pairwise JSD of the
// reference texts. A single-text community is degenerate.
Thresholds loo_thresholds(const KnowledgeSpace& ks);

enum class DisappearanceNorm { Variation, Reference };

struct NewnessScore {
  double newness = 0.0;
  double appearance = 0.0;
  double disappearance = 0.0;
};

// Words count when their direction matches and contribution >= newness_eps.
// Both counts are divided by |supp(nt)| unless norm is Reference, which
// divides disappearance by |supp(P)| instead.
NewnessScore newness(const KnowledgeSpace& ks, const TokenDistribution& nt, const Thresholds& th,
                     DisappearanceNorm norm = DisappearanceNorm::Variation);

double uniqueness(const KnowledgeSpace& ks, const TokenDistribution& nt);

// Fraction of reference texts with jsd(P_t, nt) >= difference_eps; 0 for a
// degenerate community.
double difference(const KnowledgeSpace& ks, const TokenDistribution& nt, const Thresholds& th);

// Fraction of positive-PMI pairs of the variation that have no positive entry
// in the community matrix; 0 when the variation has no such pair.
double new_surprise(const KnowledgeSpace& ks, const TokenStream& nt_stream);
double new_surprise(const PpmiMatrix& reference, const PpmiMatrix& variation);

struct DivergentSurpriseScore {
  double value = 0.0;
  std::size_t shared_words = 0;
  std::size_t scored_words = 0;
  bool no_shared_words = true;
};

// Mean JSD between the PPMI rows of each shared word, both restricted to the
// shared vocabulary; words with an empty restricted row on either side are
// skipped.
DivergentSurpriseScore divergent_surprise(const KnowledgeSpace& ks, const TokenStream& nt_stream);
DivergentSurpriseScore divergent_surprise(const PpmiMatrix& reference, const PpmiMatrix& variation);

struct MetricConfig {
  CoocWindow window = CoocWindow::sentence();
  DisappearanceNorm disappearance_norm = DisappearanceNorm::Variation;
  bool filter_pos = true;
  // Manual overrides; either one switches provenance to Manual.
  std::optional<double> newness_eps;
  std::optional<double> difference_eps;
};

// LOO thresholds with the config's manual overrides applied.
Thresholds community_thresholds(const KnowledgeSpace& ks, const MetricConfig& config);

struct MetricScores {
  double newness = 0.0;
  double appearance = 0.0;
  double disappearance = 0.0;
  double uniqueness = 0.0;
  double difference = 0.0;
  double new_surprise = 0.0;
  double divergent_surprise = 0.0;
  std::size_t shared_words = 0;
  std::size_t scored_words = 0;
  bool no_shared_words = true;

  double get(Metric metric) const;
};

// All five metrics for one variation stream. Throws EmptyDistributionError on
// an empty stream.
MetricScores score_stream(const KnowledgeSpace& ks, const Thresholds& th, const TokenStream& nt,
                          const MetricConfig& config);

struct MetricRecord {
  std::string dish_id;
  std::string origin_country;
  std::string variation_country;
  std::string recipe_id;
  Source source = Source::HumanVariation;
  std::optional<std::string> model_name;
  std::optional<std::string> keyword;
  std::optional<std::string> template_id;
  MetricScores scores;
  bool degenerate = false;

  double get(Metric metric) const { return scores.get(metric); }
};

MetricRecord score_variation(const KnowledgeSpace& ks, const Thresholds& th, const Recipe& recipe,
                             const PosTagger& tagger, const MetricConfig& config);

}  // namespace culdiv
