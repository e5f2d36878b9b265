#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "culdiv/novelty.h"

namespace culdiv {

enum class Dimension { Cultural, Linguistic, Religious, Geographic };

std::string_view to_string(Dimension dimension);
std::optional<Dimension> parse_dimension(std::string_view text);

// Symmetric, zero-diagonal, non-negative pairwise distances. Geographic
// distances are kilometers.
class DistanceTable {
 public:
  explicit DistanceTable(Dimension dimension = Dimension::Cultural) : dimension_(dimension) {}

  Dimension dimension() const { return dimension_; }

  // Throws ValidationError on negative or non-finite values, a non-zero
  // diagonal, or a value conflicting with the stored symmetric entry.
  void set(const std::string& a, const std::string& b, double distance);
  std::optional<double> get(std::string_view a, std::string_view b) const;

  std::vector<std::string> countries() const;
  // Unordered pairs with a < b.
  const std::map<std::pair<std::string, std::string>, double>& entries() const { return entries_; }

 private:
  Dimension dimension_;
  std::map<std::pair<std::string, std::string>, double> entries_;
  std::set<std::string, std::less<>> countries_;
};

// CSV iso_a,iso_b,distance. Mirror rows are symmetrized; all conflicting
// pairs are listed in one ValidationError.
DistanceTable load_distance_table(const std::filesystem::path& path, Dimension dimension);
DistanceTable read_distance_table(std::istream& in, Dimension dimension, const std::string& source = "<table>");
void write_distance_table(const DistanceTable& table, std::ostream& out);

struct CountryCoordinates {
  enum class Kind { CulturalMap, LatLon };
  Kind kind = Kind::CulturalMap;
  // (traditional_secular, survival_selfexpression) or (latitude, longitude).
  std::map<std::string, std::pair<double, double>> points;
};

// CSV iso,x,y or iso,lat,lon; latitude and longitude ranges are validated.
CountryCoordinates load_coordinates(const std::filesystem::path& path, CountryCoordinates::Kind kind);
CountryCoordinates read_coordinates(std::istream& in, CountryCoordinates::Kind kind,
                                    const std::string& source = "<coordinates>");

inline constexpr double kEarthRadiusKm = 6371.0;

DistanceTable cultural_distance(const CountryCoordinates& coords);
double haversine_km(double lat1, double lon1, double lat2, double lon2);
DistanceTable geographic_distance(const CountryCoordinates& coords);

enum class Aggregation { Mean, Median };
enum class GroupBy { Model, Pooled };

struct CorrelationConfig {
  Aggregation aggregation = Aggregation::Mean;
  GroupBy group_by = GroupBy::Model;
};

struct CorrelationResult {
  std::string group;  // "human", a model name, or "models" when pooled
  Metric metric = Metric::Newness;
  Dimension dimension = Dimension::Cultural;
  std::optional<double> r;
  std::optional<double> p;
  std::size_t n = 0;
  std::string flag;  // empty, "zero_variance" or "too_few_pairs"
};

struct CoverageReport {
  std::size_t records_used = 0;
  std::size_t degenerate_excluded = 0;
  std::size_t cells = 0;
  std::size_t cells_missing_distance = 0;
  std::vector<std::pair<std::string, std::string>> missing_pairs;  // sorted, unique
};

struct CorrelationReport {
  std::vector<CorrelationResult> results;
  CoverageReport coverage;
};

// Per group: aggregate each (dish, variation country) cell, pair it with
// distance(origin, variation), and correlate per metric.
CorrelationReport correlate(const std::vector<MetricRecord>& records, const DistanceTable& table,
                            const CorrelationConfig& config = {});

void write_correlations_csv(const std::vector<CorrelationResult>& results, std::ostream& out);

}  // namespace culdiv
