#include "culdiv/distances.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "culdiv/error.h"
#include "culdiv/stats.h"
#include "fixtures.h"

namespace culdiv {
namespace {

MetricRecord record(const std::string& dish, const std::string& origin, const std::string& variation, double v,
                    Source source = Source::HumanVariation, std::string model = "") {
  MetricRecord r;
  r.dish_id = dish;
  r.origin_country = origin;
  r.variation_country = variation;
  r.source = source;
  if (!model.empty()) r.model_name = model;
  r.scores.newness = r.scores.uniqueness = r.scores.difference = r.scores.new_surprise =
      r.scores.divergent_surprise = v;
  return r;
}

TEST(CulturalDistance, Basics) {
  CountryCoordinates c;
  c.points = {{"AA", {0, 0}}, {"BB", {3, 4}}, {"CC", {0, 0}}};
  const auto t = cultural_distance(c);
  EXPECT_EQ(*t.get("AA", "BB"), 5.0);
  EXPECT_EQ(*t.get("BB", "AA"), 5.0);
  EXPECT_EQ(*t.get("AA", "CC"), 0.0);
  EXPECT_EQ(*t.get("AA", "AA"), 0.0);
  EXPECT_FALSE(t.get("AA", "ZZ"));
}

void expect_matches_oracle(const DistanceTable& t, const std::string& expected, double tol) {
  const auto oracle = load_distance_table(testing::fixture_path(expected), t.dimension());
  ASSERT_EQ(oracle.entries().size(), t.entries().size());
  for (const auto& [k, v] : oracle.entries()) EXPECT_NEAR(*t.get(k.first, k.second), v, tol) << k.first << k.second;
}

TEST(CulturalDistance, TenCountryFixture) {
  const auto coords = load_coordinates(testing::fixture_path("distances/cultural_coords.csv"),
                                       CountryCoordinates::Kind::CulturalMap);
  ASSERT_EQ(coords.points.size(), 10u);
  expect_matches_oracle(cultural_distance(coords), "distances/cultural.expected.csv", 1e-12);
}

TEST(GeographicDistance, Basics) {
  EXPECT_EQ(haversine_km(10, 20, 10, 20), 0.0);
  EXPECT_NEAR(haversine_km(0, 0, 0, 180), std::numbers::pi * kEarthRadiusKm, 1e-6);
  EXPECT_NEAR(haversine_km(90, 0, -90, 0), 20015.086796, 1e-4);
}

TEST(GeographicDistance, PairFixture) {
  const auto coords = load_coordinates(testing::fixture_path("distances/latlon_coords.csv"),
                                       CountryCoordinates::Kind::LatLon);
  expect_matches_oracle(geographic_distance(coords), "distances/geographic.expected.csv", 1e-7);
}

TEST(Coordinates, LatLonRangeValidated) {
  std::istringstream in("iso,lat,lon\nMA,95,0\n");
  EXPECT_THROW(read_coordinates(in, CountryCoordinates::Kind::LatLon), ValidationError);
}

TEST(DistanceTable, SymmetrizesAndValidates) {
  std::istringstream ok("iso_a,iso_b,distance\nMA,JM,2.5\nJM,MA,2.5\nFR,MA,1\n");
  const auto t = read_distance_table(ok, Dimension::Linguistic);
  EXPECT_EQ(*t.get("MA", "JM"), 2.5);
  EXPECT_EQ(*t.get("MA", "FR"), 1.0);
  EXPECT_EQ(t.countries(), (std::vector<std::string>{"FR", "JM", "MA"}));

  std::istringstream bad("iso_a,iso_b,distance\nMA,JM,2.5\nJM,MA,3\nFR,MA,1\nMA,FR,2\n");
  try {
    read_distance_table(bad, Dimension::Linguistic);
    FAIL();
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("JM-MA"), std::string::npos);
    EXPECT_NE(msg.find("FR-MA"), std::string::npos);
  }
  std::istringstream neg("MA,JM,-1\n");
  EXPECT_THROW(read_distance_table(neg, Dimension::Religious), ValidationError);
  std::istringstream diag("MA,MA,1\n");
  EXPECT_THROW(read_distance_table(diag, Dimension::Religious), ValidationError);
}

DistanceTable line_table(int n) {
  DistanceTable t(Dimension::Cultural);
  for (int i = 1; i <= n; ++i) t.set("O", "C" + std::to_string(i), i);
  return t;
}

TEST(Correlate, PerfectLinearAndConstant) {
  const auto table = line_table(10);
  std::vector<MetricRecord> linear, flat;
  for (int i = 1; i <= 10; ++i) {
    linear.push_back(record("d", "O", "C" + std::to_string(i), 2.0 * i + 1.0));
    flat.push_back(record("d", "O", "C" + std::to_string(i), 0.5));
  }
  const auto r = correlate(linear, table);
  ASSERT_EQ(r.results.size(), kMetrics.size());
  EXPECT_NEAR(*r.results[0].r, 1.0, 1e-12);
  EXPECT_LT(*r.results[0].p, 1e-12);
  EXPECT_EQ(r.results[0].n, 10u);
  const auto f = correlate(flat, table);
  EXPECT_FALSE(f.results[0].r);
  EXPECT_EQ(f.results[0].flag, "zero_variance");
}

TEST(Correlate, AggregatesCellsAndReportsCoverage) {
  const auto table = line_table(3);
  std::vector<MetricRecord> recs = {record("d", "O", "C1", 0.1), record("d", "O", "C1", 0.3),
                                    record("d", "O", "C2", 0.4), record("d", "O", "C3", 0.6),
                                    record("d", "O", "C3", 0.6), record("d", "O", "C3", 0.0),
                                    record("d", "O", "XX", 0.9)};
  auto degenerate = record("e", "O", "C1", 0.7);
  degenerate.degenerate = true;
  recs.push_back(degenerate);
  const auto mean_report = correlate(recs, table);
  EXPECT_EQ(mean_report.coverage.degenerate_excluded, 1u);
  EXPECT_EQ(mean_report.coverage.cells, 4u);
  EXPECT_EQ(mean_report.coverage.cells_missing_distance, 1u);
  ASSERT_EQ(mean_report.coverage.missing_pairs.size(), 1u);
  EXPECT_EQ(mean_report.coverage.missing_pairs[0], (std::pair<std::string, std::string>{"O", "XX"}));
  // cells (1, 0.2), (2, 0.4), (3, 0.4)
  const std::vector<double> x = {1, 2, 3}, y = {0.2, 0.4, 0.4};
  EXPECT_NEAR(*mean_report.results[0].r, *pearson(x, y).r, 1e-12);
  // median cells (1, 0.2), (2, 0.4), (3, 0.6)
  const auto median_report = correlate(recs, table, {Aggregation::Median, GroupBy::Model});
  EXPECT_NEAR(*median_report.results[0].r, 1.0, 1e-12);
}

TEST(Correlate, GroupsHumanAndModels) {
  const auto table = line_table(4);
  std::vector<MetricRecord> recs;
  for (int i = 1; i <= 4; ++i) {
    const auto c = "C" + std::to_string(i);
    recs.push_back(record("d", "O", c, i * 0.1));
    recs.push_back(record("d", "O", c, i * 0.2, Source::ModelGenerated, "m-b"));
    recs.push_back(record("d", "O", c, 1.0 - i * 0.2, Source::ModelGenerated, "m-a"));
  }
  const auto by_model = correlate(recs, table);
  ASSERT_EQ(by_model.results.size(), 3 * kMetrics.size());
  EXPECT_EQ(by_model.results[0].group, "human");
  EXPECT_EQ(by_model.results[kMetrics.size()].group, "m-a");
  EXPECT_NEAR(*by_model.results[kMetrics.size()].r, -1.0, 1e-12);
  const auto pooled = correlate(recs, table, {Aggregation::Mean, GroupBy::Pooled});
  ASSERT_EQ(pooled.results.size(), 2 * kMetrics.size());
  EXPECT_EQ(pooled.results[kMetrics.size()].group, "models");
  EXPECT_EQ(pooled.results[kMetrics.size()].n, 4u);
}

TEST(Correlate, OrderAndAffineInvariance) {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(0, 1);
  DistanceTable table(Dimension::Cultural), scaled(Dimension::Cultural);
  std::vector<MetricRecord> recs;
  for (int i = 0; i < 25; ++i) {
    const auto c = "C" + std::to_string(i);
    const double d = u(rng) * 5;
    table.set("O", c, d);
    scaled.set("O", c, 3.7 * d + 11.0);
    for (int k = 0; k < 3; ++k) recs.push_back(record("d" + std::to_string(k), "O", c, u(rng)));
  }
  const auto base = correlate(recs, table);
  std::shuffle(recs.begin(), recs.end(), rng);
  const auto shuffled = correlate(recs, table);
  const auto affine = correlate(recs, scaled);
  for (std::size_t i = 0; i < base.results.size(); ++i) {
    EXPECT_EQ(*base.results[i].r, *shuffled.results[i].r);
    EXPECT_NEAR(*base.results[i].r, *affine.results[i].r, 1e-12);
  }
}

TEST(Correlate, CsvOutput) {
  std::ostringstream out;
  CorrelationResult r;
  r.group = "human";
  r.metric = Metric::Difference;
  r.n = 2;
  r.r = 1.0;
  r.flag = "too_few_pairs";
  write_correlations_csv({r}, out);
  EXPECT_EQ(out.str(), "group,metric,dimension,r,p_value,n,flag\nhuman,difference,cultural,1,,2,too_few_pairs\n");
}

}  // namespace
}  // namespace culdiv
