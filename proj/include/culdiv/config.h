#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "culdiv/distances.h"
#include "culdiv/ingredients.h"
#include "culdiv/novelty.h"
#include "culdiv/prompts.h"
#include "culdiv/quality.h"
#include "culdiv/reports.h"

namespace culdiv {

// INI-style key=value settings. `[section]` headers prefix the keys that
// follow ("section.key"); '#' and ';' start comment lines; values may be
// double-quoted.
class Config {
 public:
  static Config parse(std::string_view text, const std::string& source = "<config>");
  static Config load(const std::filesystem::path& path);

  void set(std::string key, std::string value) { values_[std::move(key)] = std::move(value); }
  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, std::string fallback) const;
  std::optional<double> get_double(const std::string& key) const;
  std::optional<std::size_t> get_size(const std::string& key) const;
  std::optional<bool> get_bool(const std::string& key) const;
  std::vector<std::string> get_list(const std::string& key, char separator = ',') const;

  // Throws ValidationError naming every key outside `known`.
  void check_keys(const std::set<std::string>& known) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  std::string source_ = "<config>";
};

const std::set<std::string>& known_config_keys();

MetricConfig metric_config(const Config& config);
QualityConfig quality_config(const Config& config);
CorrelationConfig correlation_config(const Config& config);
PromptConfig prompt_config(const Config& config);
KeywordGroups keyword_groups(const Config& config);

}  // namespace culdiv
