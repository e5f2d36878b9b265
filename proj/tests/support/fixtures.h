#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "culdiv/distrib.h"
#include "culdiv/text.h"
#include "json.hpp"

namespace culdiv::testing {

std::filesystem::path fixture_path(const std::string& relative);
std::string read_file(const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

// [["a","b"],["c"]] -> stream with two sentences.
TokenStream stream_from_json(const nlohmann::json& sentences);
TokenStream stream_of(const std::vector<std::vector<std::string>>& sentences);

struct OracleCorpus {
  std::string name;
  CoocWindow window;
  std::vector<TokenStream> references;
  std::vector<TokenStream> variations;
  nlohmann::json expected;
};

std::vector<OracleCorpus> load_oracle_corpora();

// Scratch directory under the build tree, emptied on creation.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace culdiv::testing
