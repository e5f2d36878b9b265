#include "culdiv/distances.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>

#include "culdiv/csv.h"
#include "culdiv/error.h"
#include "culdiv/stats.h"

namespace culdiv {

std::string_view to_string(Dimension dimension) {
  switch (dimension) {
    case Dimension::Cultural: return "cultural";
    case Dimension::Linguistic: return "linguistic";
    case Dimension::Religious: return "religious";
    case Dimension::Geographic: return "geographic";
  }
  return "cultural";
}

std::optional<Dimension> parse_dimension(std::string_view text) {
  for (Dimension d : {Dimension::Cultural, Dimension::Linguistic, Dimension::Religious, Dimension::Geographic})
    if (to_string(d) == text) return d;
  return std::nullopt;
}

namespace {

std::pair<std::string, std::string> ordered(std::string_view a, std::string_view b) {
  return a < b ? std::pair{std::string(a), std::string(b)} : std::pair{std::string(b), std::string(a)};
}

double parse_number(const std::string& field, const std::string& source, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw ParseError(source, line, "not a number: '" + field + "'");
  }
}

}  // namespace

void DistanceTable::set(const std::string& a, const std::string& b, double distance) {
  if (!std::isfinite(distance) || distance < 0.0) {
    throw ValidationError("distance " + a + "-" + b + " must be finite and non-negative");
  }
  if (a == b) {
    if (distance != 0.0) throw ValidationError("diagonal distance " + a + "-" + a + " must be 0");
    countries_.insert(a);
    return;
  }
  const auto key = ordered(a, b);
  const auto [it, inserted] = entries_.emplace(key, distance);
  if (!inserted && it->second != distance) {
    throw ValidationError("conflicting distances for " + key.first + "-" + key.second);
  }
  countries_.insert(a);
  countries_.insert(b);
}

std::optional<double> DistanceTable::get(std::string_view a, std::string_view b) const {
  if (a == b) {
    if (countries_.find(a) != countries_.end()) return 0.0;
    return std::nullopt;
  }
  const auto it = entries_.find(ordered(a, b));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> DistanceTable::countries() const {
  return {countries_.begin(), countries_.end()};
}

DistanceTable read_distance_table(std::istream& in, Dimension dimension, const std::string& source) {
  CsvReader reader(in, source);
  std::vector<std::string> row;
  std::map<std::pair<std::string, std::string>, double> seen;
  std::set<std::pair<std::string, std::string>> conflicts;
  DistanceTable table(dimension);
  bool first = true;
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    if (first) {
      first = false;
      if (row.size() == 3 && row[0] == "iso_a") continue;
    }
    if (row.size() != 3) throw ParseError(source, reader.line(), "expected iso_a,iso_b,distance");
    const double d = parse_number(row[2], source, reader.line());
    const auto key = ordered(row[0], row[1]);
    if (const auto it = seen.find(key); it != seen.end() && it->second != d) {
      conflicts.insert(key);
      continue;
    }
    seen.emplace(key, d);
    table.set(row[0], row[1], d);
  }
  if (!conflicts.empty()) {
    std::string msg = "asymmetric distances in " + source + ":";
    for (const auto& [a, b] : conflicts) msg += " " + a + "-" + b;
    throw ValidationError(msg);
  }
  return table;
}

DistanceTable load_distance_table(const std::filesystem::path& path, Dimension dimension) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open distance table " + path.string());
  return read_distance_table(in, dimension, path.string());
}

void write_distance_table(const DistanceTable& table, std::ostream& out) {
  CsvWriter w(out);
  w.row({"iso_a", "iso_b", "distance"});
  for (const auto& [k, v] : table.entries()) w.row({k.first, k.second, format_double(v)});
}

CountryCoordinates read_coordinates(std::istream& in, CountryCoordinates::Kind kind, const std::string& source) {
  CountryCoordinates c;
  c.kind = kind;
  CsvReader reader(in, source);
  std::vector<std::string> row;
  bool first = true;
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    if (first) {
      first = false;
      if (row.size() == 3 && row[0] == "iso") continue;
    }
    if (row.size() != 3) throw ParseError(source, reader.line(), "expected iso,x,y or iso,lat,lon");
    const double x = parse_number(row[1], source, reader.line());
    const double y = parse_number(row[2], source, reader.line());
    if (kind == CountryCoordinates::Kind::LatLon && (std::abs(x) > 90.0 || std::abs(y) > 180.0)) {
      throw ValidationError(source + ":" + std::to_string(reader.line()) + ": coordinates out of range for " + row[0]);
    }
    if (!c.points.emplace(row[0], std::pair{x, y}).second) {
      throw ParseError(source, reader.line(), "duplicate country " + row[0]);
    }
  }
  return c;
}

CountryCoordinates load_coordinates(const std::filesystem::path& path, CountryCoordinates::Kind kind) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open coordinate file " + path.string());
  return read_coordinates(in, kind, path.string());
}

DistanceTable cultural_distance(const CountryCoordinates& coords) {
  DistanceTable t(Dimension::Cultural);
  for (auto a = coords.points.begin(); a != coords.points.end(); ++a)
    for (auto b = std::next(a); b != coords.points.end(); ++b)
      t.set(a->first, b->first, std::hypot(a->second.first - b->second.first, a->second.second - b->second.second));
  return t;
}

double haversine_km(double lat1, double lon1, double lat2, double lon2) {
  constexpr double rad = std::numbers::pi / 180.0;
  const double dlat = (lat2 - lat1) * rad;
  const double dlon = (lon2 - lon1) * rad;
  const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(lat1 * rad) * std::cos(lat2 * rad) * std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

DistanceTable geographic_distance(const CountryCoordinates& coords) {
  DistanceTable t(Dimension::Geographic);
  for (auto a = coords.points.begin(); a != coords.points.end(); ++a)
    for (auto b = std::next(a); b != coords.points.end(); ++b)
      t.set(a->first, b->first,
            haversine_km(a->second.first, a->second.second, b->second.first, b->second.second));
  return t;
}

// ---------------------------------------------------------------------------
// Correlation

namespace {

std::string group_of(const MetricRecord& r, GroupBy group_by) {
  if (r.source != Source::ModelGenerated) return "human";
  if (group_by == GroupBy::Pooled) return "models";
  return r.model_name.value_or("");
}

struct Cell {
  std::string origin;
  std::array<std::vector<double>, kMetrics.size()> values;
};

}  // namespace

CorrelationReport correlate(const std::vector<MetricRecord>& records, const DistanceTable& table,
                            const CorrelationConfig& config) {
  CorrelationReport report;
  // group -> (dish, variation country) -> values
  std::map<std::string, std::map<std::pair<std::string, std::string>, Cell>> groups;
  for (const auto& r : records) {
    if (r.degenerate) {
      ++report.coverage.degenerate_excluded;
      continue;
    }
    Cell& cell = groups[group_of(r, config.group_by)][{r.dish_id, r.variation_country}];
    cell.origin = r.origin_country;
    for (std::size_t m = 0; m < kMetrics.size(); ++m) cell.values[m].push_back(r.get(kMetrics[m]));
    ++report.coverage.records_used;
  }

  std::set<std::pair<std::string, std::string>> missing;
  std::vector<std::string> order;
  if (groups.count("human")) order.push_back("human");
  for (const auto& [g, cells] : groups)
    if (g != "human") order.push_back(g);

  for (const auto& g : order) {
    std::vector<double> x;
    std::array<std::vector<double>, kMetrics.size()> y;
    for (const auto& [key, cell] : groups[g]) {
      ++report.coverage.cells;
      const auto d = table.get(cell.origin, key.second);
      if (!d) {
        ++report.coverage.cells_missing_distance;
        missing.insert(ordered(cell.origin, key.second));
        continue;
      }
      x.push_back(*d);
      for (std::size_t m = 0; m < kMetrics.size(); ++m)
        y[m].push_back(config.aggregation == Aggregation::Mean ? mean(cell.values[m]) : median(cell.values[m]));
    }
    for (std::size_t m = 0; m < kMetrics.size(); ++m) {
      CorrelationResult res;
      res.group = g;
      res.metric = kMetrics[m];
      res.dimension = table.dimension();
      const auto pr = pearson(x, y[m]);
      res.n = pr.n;
      res.r = pr.r;
      res.p = pr.p;
      if (!pr.r) {
        res.flag = pr.n < 2 ? "too_few_pairs" : "zero_variance";
      } else if (!pr.p) {
        res.flag = "too_few_pairs";
      }
      report.results.push_back(std::move(res));
    }
  }
  report.coverage.missing_pairs.assign(missing.begin(), missing.end());
  return report;
}

void write_correlations_csv(const std::vector<CorrelationResult>& results, std::ostream& out) {
  CsvWriter w(out);
  w.row({"group", "metric", "dimension", "r", "p_value", "n", "flag"});
  for (const auto& r : results) {
    w.row({r.group, std::string(to_string(r.metric)), std::string(to_string(r.dimension)),
           r.r ? format_double(*r.r) : "", r.p ? format_double(*r.p) : "", std::to_string(r.n), r.flag});
  }
}

}  // namespace culdiv
