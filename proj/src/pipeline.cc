#include "culdiv/pipeline.h"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "culdiv/csv.h"
#include "culdiv/error.h"
#include "culdiv/knowledge_space.h"
#include "culdiv/metrics_io.h"
#include "culdiv/parallel.h"

namespace culdiv {

namespace {

constexpr std::string_view kManifestMagic = "culdiv-score-manifest\t1";

struct DishResult {
  std::vector<MetricRecord> records;
  std::vector<SkippedItem> skipped;
  bool dish_skipped = false;
};

DishResult score_dish(const Dish& dish, const ScoreOptions& options) {
  DishResult out;
  const MetricConfig& config = options.metrics;
  std::optional<KnowledgeSpace> ks;
  try {
    ks = knowledge_space(dish, dish.origin_country, Source::HumanReference, *options.tagger, config.window,
                         config.filter_pos);
  } catch (const EmptyCommunityError&) {
    out.dish_skipped = true;
    out.skipped.push_back({dish.dish_id, "", "empty reference community"});
    return out;
  }
  const Thresholds th = community_thresholds(*ks, config);
  for (const auto& [country, recipes] : dish.variations) {
    for (const auto& r : recipes) {
      try {
        out.records.push_back(score_variation(*ks, th, r, *options.tagger, config));
      } catch (const EmptyDistributionError&) {
        out.skipped.push_back({dish.dish_id, r.recipe_id, "empty instruction stream"});
      }
    }
  }
  return out;
}

void tally(const DishResult& r, ScoreSummary& s) {
  ++s.dishes_done;
  s.records += r.records.size();
  if (r.dish_skipped) {
    ++s.skipped_dishes;
  } else {
    s.skipped_recipes += r.skipped.size();
  }
  s.skipped.insert(s.skipped.end(), r.skipped.begin(), r.skipped.end());
}

struct Fnv {
  std::uint64_t h = 1469598103934665603ull;
  void add(std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  }
};

std::string config_string(const ScoreOptions& o) {
  std::ostringstream s;
  s << to_string(o.metrics.window) << ';' << static_cast<int>(o.metrics.disappearance_norm) << ';'
    << o.metrics.filter_pos << ';' << (o.metrics.newness_eps ? format_double(*o.metrics.newness_eps) : "loo") << ';'
    << (o.metrics.difference_eps ? format_double(*o.metrics.difference_eps) : "loo") << ';'
    << (o.format == MetricFormat::Csv ? "csv" : "jsonl");
  return s.str();
}

struct ManifestEntry {
  std::string dish_id;
  std::uintmax_t offset = 0;
  std::size_t records = 0;
  std::size_t skipped_recipes = 0;
  bool dish_skipped = false;
};

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path, const std::string& fingerprint) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kManifestMagic)
    throw ValidationError("not a score manifest: " + path.string());
  if (!std::getline(in, line) || line != "fingerprint\t" + fingerprint)
    throw ValidationError("manifest " + path.string() + " was written for a different corpus or configuration");
  std::vector<ManifestEntry> out;
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string tag, skipped_flag;
    ManifestEntry e;
    std::getline(fields, tag, '\t');
    std::getline(fields, e.dish_id, '\t');
    if (tag != "dish" || !(fields >> e.offset >> e.records >> e.skipped_recipes >> skipped_flag))
      throw ParseError(path.string(), line_no, "malformed manifest entry");
    e.dish_skipped = skipped_flag == "skipped";
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

std::string score_fingerprint(const Corpus& corpus, const ScoreOptions& options) {
  Fnv f;
  f.add(config_string(options));
  for (const Recipe* r : corpus.recipes()) {
    f.add(r->recipe_id);
    f.add(r->dish_id);
    f.add(r->country);
    f.add(to_string(r->source));
    f.add(r->model_name.value_or("\x01"));
    f.add(r->keyword.value_or("\x01"));
    f.add(r->template_id.value_or("\x01"));
    f.add(r->instructions);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(f.h));
  return buf;
}

std::vector<MetricRecord> score_corpus(const Corpus& corpus, const ScoreOptions& options, ScoreSummary* summary) {
  ScoreSummary local;
  ScoreSummary& s = summary ? *summary : local;
  s = {};
  const auto& dishes = corpus.dishes();
  s.dishes_total = dishes.size();
  const std::size_t n = options.max_dishes ? std::min(*options.max_dishes, dishes.size()) : dishes.size();
  std::vector<MetricRecord> out;
  parallel_ordered(
      n, options.jobs, [&](std::size_t i) { return score_dish(dishes[i], options); },
      [&](std::size_t, DishResult r) {
        tally(r, s);
        std::move(r.records.begin(), r.records.end(), std::back_inserter(out));
      });
  return out;
}

ScoreSummary score_corpus_to_file(const Corpus& corpus, const ScoreOptions& options,
                                  const std::filesystem::path& output,
                                  const std::optional<std::filesystem::path>& manifest, bool resume) {
  namespace fs = std::filesystem;
  ScoreSummary s;
  const auto& dishes = corpus.dishes();
  s.dishes_total = dishes.size();
  const std::string fingerprint = score_fingerprint(corpus, options);

  std::vector<ManifestEntry> done;
  const bool resuming = resume && manifest && fs::exists(*manifest) && fs::exists(output);
  std::uintmax_t offset = 0;
  std::ofstream out;
  std::ofstream man;
  if (resuming) {
    done = read_manifest(*manifest, fingerprint);
    if (done.size() > dishes.size()) throw ValidationError("manifest lists more dishes than the corpus");
    for (std::size_t i = 0; i < done.size(); ++i) {
      if (done[i].dish_id != dishes[i].dish_id)
        throw ValidationError("manifest dish '" + done[i].dish_id + "' does not match corpus order");
    }
    if (!done.empty()) {
      offset = done.back().offset;
    } else if (options.format == MetricFormat::Csv) {
      std::ostringstream header;
      write_metric_header(header);
      offset = header.str().size();
    }
    if (fs::file_size(output) < offset) throw ValidationError("output is shorter than the manifest records");
    fs::resize_file(output, offset);
    out.open(output, std::ios::binary | std::ios::app);
    man.open(*manifest, std::ios::binary | std::ios::app);
    for (const auto& e : done) {
      ++s.dishes_done;
      ++s.dishes_resumed;
      s.records += e.records;
      s.skipped_recipes += e.skipped_recipes;
      s.skipped_dishes += e.dish_skipped;
    }
  } else {
    out.open(output, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + output.string());
    if (options.format == MetricFormat::Csv) write_metric_header(out);
    out.flush();
    offset = static_cast<std::uintmax_t>(out.tellp());
    if (manifest) {
      man.open(*manifest, std::ios::binary | std::ios::trunc);
      if (!man) throw Error("cannot write " + manifest->string());
      man << kManifestMagic << "\nfingerprint\t" << fingerprint << '\n';
      man.flush();
    }
  }
  if (!out) throw Error("cannot write " + output.string());

  const std::size_t start = done.size();
  std::size_t end = dishes.size();
  if (options.max_dishes) end = std::min(end, start + *options.max_dishes);
  parallel_ordered(
      end - start, options.jobs, [&](std::size_t i) { return score_dish(dishes[start + i], options); },
      [&](std::size_t i, DishResult r) {
        std::ostringstream block;
        for (const auto& rec : r.records) {
          if (options.format == MetricFormat::Csv) {
            write_metric_csv(rec, block);
          } else {
            write_metric_jsonl(rec, block);
          }
        }
        const std::string bytes = block.str();
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) throw Error("write failed for " + output.string());
        offset += bytes.size();
        if (man.is_open()) {
          man << "dish\t" << dishes[start + i].dish_id << '\t' << offset << ' ' << r.records.size() << ' '
              << (r.dish_skipped ? 0 : r.skipped.size()) << ' ' << (r.dish_skipped ? "skipped" : "scored") << '\n';
          man.flush();
        }
        tally(r, s);
      });
  return s;
}

}  // namespace culdiv
