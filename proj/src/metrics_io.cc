#include "culdiv/metrics_io.h"

#include <charconv>
#include <fstream>
#include <ostream>

#include "culdiv/csv.h"
#include "culdiv/error.h"
#include "json.hpp"

namespace culdiv {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

double parse_double(const std::string& s, const std::string& source, std::size_t line) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ParseError(source, line, "not a number: '" + s + "'");
  }
  return v;
}

std::size_t parse_size(const std::string& s, const std::string& source, std::size_t line) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ParseError(source, line, "not a count: '" + s + "'");
  }
  return v;
}

bool parse_bool(const std::string& s, const std::string& source, std::size_t line) {
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false") return false;
  throw ParseError(source, line, "not a boolean: '" + s + "'");
}

Source require_source(const std::string& s, const std::string& source, std::size_t line) {
  const auto parsed = parse_source(s);
  if (!parsed) throw ParseError(source, line, "unknown source '" + s + "'");
  return *parsed;
}

}  // namespace

const std::vector<std::string>& metric_columns() {
  static const std::vector<std::string> columns = {
      "dish_id",         "origin_country", "variation_country", "recipe_id",    "source",
      "model_name",      "keyword",        "template_id",       "newness",      "appearance",
      "disappearance",   "uniqueness",     "difference",        "new_surprise", "divergent_surprise",
      "shared_words",    "scored_words",   "no_shared_words",   "degenerate"};
  return columns;
}

void write_metric_header(std::ostream& out) { CsvWriter(out).row(metric_columns()); }

void write_metric_csv(const MetricRecord& r, std::ostream& out) {
  const auto& s = r.scores;
  CsvWriter(out).row({r.dish_id, r.origin_country, r.variation_country, r.recipe_id,
                      std::string(to_string(r.source)), r.model_name.value_or(""), r.keyword.value_or(""),
                      r.template_id.value_or(""), format_double(s.newness), format_double(s.appearance),
                      format_double(s.disappearance), format_double(s.uniqueness), format_double(s.difference),
                      format_double(s.new_surprise), format_double(s.divergent_surprise),
                      std::to_string(s.shared_words), std::to_string(s.scored_words),
                      s.no_shared_words ? "1" : "0", r.degenerate ? "1" : "0"});
}

void write_metric_jsonl(const MetricRecord& r, std::ostream& out) {
  const auto& s = r.scores;
  json j;
  j["schema"] = kSchemaVersion;
  j["dish_id"] = r.dish_id;
  j["origin_country"] = r.origin_country;
  j["variation_country"] = r.variation_country;
  j["recipe_id"] = r.recipe_id;
  j["source"] = std::string(to_string(r.source));
  j["model_name"] = r.model_name ? json(*r.model_name) : json(nullptr);
  j["keyword"] = r.keyword ? json(*r.keyword) : json(nullptr);
  j["template_id"] = r.template_id ? json(*r.template_id) : json(nullptr);
  j["newness"] = s.newness;
  j["appearance"] = s.appearance;
  j["disappearance"] = s.disappearance;
  j["uniqueness"] = s.uniqueness;
  j["difference"] = s.difference;
  j["new_surprise"] = s.new_surprise;
  j["divergent_surprise"] = s.divergent_surprise;
  j["shared_words"] = s.shared_words;
  j["scored_words"] = s.scored_words;
  j["no_shared_words"] = s.no_shared_words;
  j["degenerate"] = r.degenerate;
  out << j.dump() << '\n';
}

std::vector<MetricRecord> read_metric_csv(std::istream& in, const std::string& source) {
  CsvReader reader(in, source);
  std::vector<std::string> row;
  std::vector<MetricRecord> out;
  if (!reader.next(row)) return out;
  if (row != metric_columns()) throw ParseError(source, reader.line(), "unexpected metric CSV header");
  const std::size_t width = metric_columns().size();
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    const std::size_t line = reader.line();
    if (row.size() != width) throw ParseError(source, line, "expected " + std::to_string(width) + " columns");
    MetricRecord r;
    r.dish_id = row[0];
    r.origin_country = row[1];
    r.variation_country = row[2];
    r.recipe_id = row[3];
    r.source = require_source(row[4], source, line);
    if (!row[5].empty()) r.model_name = row[5];
    if (r.source == Source::ModelGenerated || !row[6].empty()) r.keyword = row[6];
    if (!row[7].empty()) r.template_id = row[7];
    auto& s = r.scores;
    s.newness = parse_double(row[8], source, line);
    s.appearance = parse_double(row[9], source, line);
    s.disappearance = parse_double(row[10], source, line);
    s.uniqueness = parse_double(row[11], source, line);
    s.difference = parse_double(row[12], source, line);
    s.new_surprise = parse_double(row[13], source, line);
    s.divergent_surprise = parse_double(row[14], source, line);
    s.shared_words = parse_size(row[15], source, line);
    s.scored_words = parse_size(row[16], source, line);
    s.no_shared_words = parse_bool(row[17], source, line);
    r.degenerate = parse_bool(row[18], source, line);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<MetricRecord> read_metric_jsonl(std::istream& in, const std::string& source) {
  std::vector<MetricRecord> out;
  std::string text;
  std::size_t line = 0;
  auto opt = [](const json& j, const char* k) -> std::optional<std::string> {
    if (!j.contains(k) || j.at(k).is_null()) return std::nullopt;
    return j.at(k).get<std::string>();
  };
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(text);
      MetricRecord r;
      r.dish_id = j.at("dish_id").get<std::string>();
      r.origin_country = j.at("origin_country").get<std::string>();
      r.variation_country = j.at("variation_country").get<std::string>();
      r.recipe_id = j.at("recipe_id").get<std::string>();
      r.source = require_source(j.at("source").get<std::string>(), source, line);
      r.model_name = opt(j, "model_name");
      r.keyword = opt(j, "keyword");
      r.template_id = opt(j, "template_id");
      auto& s = r.scores;
      s.newness = j.at("newness").get<double>();
      s.appearance = j.at("appearance").get<double>();
      s.disappearance = j.at("disappearance").get<double>();
      s.uniqueness = j.at("uniqueness").get<double>();
      s.difference = j.at("difference").get<double>();
      s.new_surprise = j.at("new_surprise").get<double>();
      s.divergent_surprise = j.at("divergent_surprise").get<double>();
      s.shared_words = j.at("shared_words").get<std::size_t>();
      s.scored_words = j.at("scored_words").get<std::size_t>();
      s.no_shared_words = j.at("no_shared_words").get<bool>();
      r.degenerate = j.at("degenerate").get<bool>();
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError(source, line, e.what());
    }
  }
  return out;
}

std::vector<MetricRecord> load_metric_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open metric file " + path.string());
  const auto ext = path.extension().string();
  if (ext == ".jsonl" || ext == ".json") return read_metric_jsonl(in, path.string());
  return read_metric_csv(in, path.string());
}

}  // namespace culdiv
