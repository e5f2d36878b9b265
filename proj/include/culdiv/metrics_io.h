#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "culdiv/novelty.h"

namespace culdiv {

// Stable column order of the metric CSV (schema version 1).
const std::vector<std::string>& metric_columns();

void write_metric_header(std::ostream& out);
void write_metric_csv(const MetricRecord& record, std::ostream& out);
void write_metric_jsonl(const MetricRecord& record, std::ostream& out);

// A model record's keyword is always present (possibly the empty keyword);
// human records have none.
std::vector<MetricRecord> read_metric_csv(std::istream& in, const std::string& source = "<metrics>");
std::vector<MetricRecord> read_metric_jsonl(std::istream& in, const std::string& source = "<metrics>");
// Picks the reader from the extension (.jsonl/.json, otherwise CSV).
std::vector<MetricRecord> load_metric_records(const std::filesystem::path& path);

}  // namespace culdiv
