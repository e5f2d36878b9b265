#include "culdiv/config.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "culdiv/error.h"

namespace culdiv {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

ValidationError bad_value(const std::string& key, const std::string& value, const std::string& expected) {
  return ValidationError("config key '" + key + "': '" + value + "' is not " + expected);
}

}  // namespace

Config Config::parse(std::string_view text, const std::string& source) {
  Config c;
  c.source_ = source;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(source, line_no, "unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(source, line_no, "expected key = value");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ParseError(source, line_no, "empty key");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (!section.empty()) key = section + "." + key;
    c.values_[std::move(key)] = std::move(value);
  }
  return c;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path.string());
}

std::optional<std::string> Config::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string Config::get_or(const std::string& key, std::string fallback) const {
  auto v = get(key);
  return v ? *v : std::move(fallback);
}

std::optional<double> Config::get_double(const std::string& key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  double out = 0.0;
  const auto [end, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || end != v->data() + v->size()) throw bad_value(key, *v, "a number");
  return out;
}

std::optional<std::size_t> Config::get_size(const std::string& key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  std::size_t out = 0;
  const auto [end, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || end != v->data() + v->size()) throw bad_value(key, *v, "a non-negative integer");
  return out;
}

std::optional<bool> Config::get_bool(const std::string& key) const {
  const auto v = get(key);
  if (!v) return std::nullopt;
  std::string s = *v;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
  if (s == "false" || s == "no" || s == "0" || s == "off") return false;
  throw bad_value(key, *v, "a boolean");
}

std::vector<std::string> Config::get_list(const std::string& key, char separator) const {
  std::vector<std::string> out;
  const auto v = get(key);
  if (!v) return out;
  std::string item;
  std::istringstream in(*v);
  while (std::getline(in, item, separator)) out.push_back(trim(item));
  return out;
}

void Config::check_keys(const std::set<std::string>& known) const {
  std::string unknown;
  for (const auto& [key, value] : values_) {
    if (known.count(key)) continue;
    if (!unknown.empty()) unknown += ", ";
    unknown += key;
  }
  if (!unknown.empty()) throw ValidationError(source_ + ": unknown config keys: " + unknown);
}

const std::set<std::string>& known_config_keys() {
  static const std::set<std::string> kKeys = {
      "lexicon",
      "metrics.window",
      "metrics.disappearance_norm",
      "metrics.filter_pos",
      "metrics.newness_eps",
      "metrics.difference_eps",
      "quality.min_tokens",
      "quality.repetition_run",
      "quality.english_threshold",
      "correlate.aggregation",
      "correlate.group_by",
      "prompts.keywords",
      "prompts.templates",
      "ingredients.key",
      "ingredients.top_k",
      "keywords.scope",
      "keywords.traditional",
      "keywords.creative",
      "layers.filter_pos",
  };
  return kKeys;
}

MetricConfig metric_config(const Config& config) {
  MetricConfig m;
  if (const auto w = config.get("metrics.window")) {
    const auto parsed = parse_cooc_window(*w);
    if (!parsed) throw bad_value("metrics.window", *w, "document, sentence or sliding:K");
    m.window = *parsed;
  }
  if (const auto n = config.get("metrics.disappearance_norm")) {
    if (*n == "variation") {
      m.disappearance_norm = DisappearanceNorm::Variation;
    } else if (*n == "reference") {
      m.disappearance_norm = DisappearanceNorm::Reference;
    } else {
      throw bad_value("metrics.disappearance_norm", *n, "variation or reference");
    }
  }
  if (const auto b = config.get_bool("metrics.filter_pos")) m.filter_pos = *b;
  m.newness_eps = config.get_double("metrics.newness_eps");
  m.difference_eps = config.get_double("metrics.difference_eps");
  return m;
}

QualityConfig quality_config(const Config& config) {
  QualityConfig q;
  if (const auto v = config.get_size("quality.min_tokens")) q.min_tokens = *v;
  if (const auto v = config.get_size("quality.repetition_run")) q.repetition_run = *v;
  return q;
}

CorrelationConfig correlation_config(const Config& config) {
  CorrelationConfig c;
  if (const auto a = config.get("correlate.aggregation")) {
    if (*a == "mean") {
      c.aggregation = Aggregation::Mean;
    } else if (*a == "median") {
      c.aggregation = Aggregation::Median;
    } else {
      throw bad_value("correlate.aggregation", *a, "mean or median");
    }
  }
  if (const auto g = config.get("correlate.group_by")) {
    if (*g == "model") {
      c.group_by = GroupBy::Model;
    } else if (*g == "pooled") {
      c.group_by = GroupBy::Pooled;
    } else {
      throw bad_value("correlate.group_by", *g, "model or pooled");
    }
  }
  return c;
}

PromptConfig prompt_config(const Config& config) {
  PromptConfig p;
  // ';' separates keywords since one of them contains commas; "empty" names
  // the empty keyword.
  if (config.get("prompts.keywords")) {
    p.keywords.clear();
    for (auto& k : config.get_list("prompts.keywords", ';')) p.keywords.push_back(k == "empty" ? "" : k);
  }
  if (config.get("prompts.templates")) {
    p.templates.clear();
    for (const auto& t : config.get_list("prompts.templates")) {
      const auto parsed = parse_template(t);
      if (!parsed) throw bad_value("prompts.templates", t, "basic, persona, blend or definition");
      p.templates.push_back(*parsed);
    }
  }
  return p;
}

KeywordGroups keyword_groups(const Config& config) {
  KeywordGroups g;
  if (config.get("keywords.traditional")) {
    const auto list = config.get_list("keywords.traditional", ';');
    g.traditional = {list.begin(), list.end()};
  }
  if (config.get("keywords.creative")) {
    const auto list = config.get_list("keywords.creative", ';');
    g.creative = {list.begin(), list.end()};
  }
  return g;
}

}  // namespace culdiv
