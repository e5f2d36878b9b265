#include "fixtures.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace culdiv::testing {

std::filesystem::path fixture_path(const std::string& relative) {
  return std::filesystem::path(CULDIV_FIXTURE_DIR) / relative;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

nlohmann::json read_json(const std::filesystem::path& path) {
  return nlohmann::json::parse(read_file(path));
}

TokenStream stream_from_json(const nlohmann::json& sentences) {
  TokenStream s;
  for (const auto& sentence : sentences) {
    const auto tokens = sentence.get<std::vector<std::string>>();
    s.push_sentence(tokens);
  }
  return s;
}

TokenStream stream_of(const std::vector<std::vector<std::string>>& sentences) {
  TokenStream s;
  for (const auto& sentence : sentences) s.push_sentence(sentence);
  return s;
}

std::vector<OracleCorpus> load_oracle_corpora() {
  std::vector<OracleCorpus> out;
  for (int i = 1;; ++i) {
    const auto path = fixture_path("oracle/corpus_" + std::to_string(i) + ".json");
    if (!std::filesystem::exists(path)) break;
    const auto j = read_json(path);
    OracleCorpus c;
    c.name = j.at("name").get<std::string>();
    c.window = parse_cooc_window(j.at("window").get<std::string>()).value();
    for (const auto& t : j.at("references")) c.references.push_back(stream_from_json(t));
    for (const auto& t : j.at("variations")) c.variations.push_back(stream_from_json(t));
    c.expected = read_json(fixture_path("oracle/corpus_" + std::to_string(i) + ".expected.json"));
    out.push_back(std::move(c));
  }
  return out;
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::path(CULDIV_SCRATCH_DIR) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace culdiv::testing
