// culdiv command-line driver.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "culdiv/config.h"
#include "culdiv/corpus.h"
#include "culdiv/csv.h"
#include "culdiv/distances.h"
#include "culdiv/error.h"
#include "culdiv/ingredients.h"
#include "culdiv/layers.h"
#include "culdiv/metrics_io.h"
#include "culdiv/pipeline.h"
#include "culdiv/prompts.h"
#include "culdiv/quality.h"
#include "culdiv/reports.h"
#include "culdiv/synth.h"

namespace fs = std::filesystem;
using namespace culdiv;

namespace {

struct Globals {
  std::string config_path;
  std::size_t jobs = 1;
  std::uint64_t seed = 1;
};

Globals g;

const Config& config() {
  static std::optional<Config> c;
  if (!c) {
    c = g.config_path.empty() ? Config{} : Config::load(g.config_path);
    c->check_keys(known_config_keys());
  }
  return *c;
}

const CountryLexicon& lexicon() {
  static std::unique_ptr<CountryLexicon> owned;
  if (const auto path = config().get("lexicon")) {
    if (!owned) owned = std::make_unique<CountryLexicon>(CountryLexicon::load(*path));
    return *owned;
  }
  return CountryLexicon::bundled();
}

// "-" or empty writes to stdout.
void write_to(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  if (const auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  body(out);
  if (!out) throw Error("write failed for " + path);
}

Corpus load(const std::string& path) {
  auto loaded = load_corpus(path, lexicon());
  if (!loaded.report.issues.empty())
    std::cerr << path << ": " << loaded.report.issues.size() << " load issues (see `culdiv ingest --issues`)\n";
  return std::move(loaded.corpus);
}

template <typename E>
E pick(const std::string& key, const std::string& value, const std::map<std::string, E>& choices) {
  const auto it = choices.find(value);
  if (it != choices.end()) return it->second;
  std::string names;
  for (const auto& [name, e] : choices) names += (names.empty() ? "" : ", ") + name;
  throw ValidationError(key + ": '" + value + "' is not one of " + names);
}

IngredientKey ingredient_key(const std::string& override_value) {
  const std::string v = override_value.empty() ? config().get_or("ingredients.key", "phrase") : override_value;
  return pick<IngredientKey>("ingredients.key", v, {{"phrase", IngredientKey::Phrase}, {"head", IngredientKey::HeadLemma}});
}

KeywordScope keyword_scope(const std::string& override_value) {
  const std::string v = override_value.empty() ? config().get_or("keywords.scope", "origin") : override_value;
  return pick<KeywordScope>(
      "keywords.scope", v,
      {{"origin", KeywordScope::Origin}, {"variation", KeywordScope::Variation}, {"all", KeywordScope::All}});
}

Dimension dimension(const std::string& v) {
  const auto d = parse_dimension(v);
  if (!d) throw ValidationError("--dimension: '" + v + "' is not cultural, linguistic, religious or geographic");
  return *d;
}

// A distance CSV, or coordinates turned into distances.
DistanceTable distance_table(const std::string& table, const std::string& coordinates, Dimension dim) {
  if (!table.empty()) return load_distance_table(table, dim);
  if (dim == Dimension::Cultural) return cultural_distance(load_coordinates(coordinates, CountryCoordinates::Kind::CulturalMap));
  if (dim == Dimension::Geographic) return geographic_distance(load_coordinates(coordinates, CountryCoordinates::Kind::LatLon));
  throw ValidationError("--coordinates only derives cultural or geographic distances");
}

StopwordDetector detector() {
  return StopwordDetector(config().get_double("quality.english_threshold").value_or(0.15));
}

std::vector<AttributionRecord> attribute_all(const Corpus& corpus) {
  const auto profiles = country_profiles(corpus);
  const TitleMatcher titles(lexicon());
  std::vector<AttributionRecord> out;
  for (const auto& dish : corpus.dishes())
    for (const auto& [country, recipes] : dish.variations)
      for (const auto& r : recipes) out.push_back(attribute(r, profiles, dish, &titles));
  return out;
}

void print_summary(const ScoreSummary& s) {
  std::cerr << "dishes " << s.dishes_done << "/" << s.dishes_total << " (" << s.dishes_resumed << " resumed), records "
            << s.records << ", skipped recipes " << s.skipped_recipes << ", skipped dishes " << s.skipped_dishes
            << '\n';
}

void write_skipped(const std::string& path, const std::vector<SkippedItem>& items) {
  if (path.empty()) return;
  write_to(path, [&](std::ostream& out) {
    CsvWriter w(out);
    w.row({"dish_id", "recipe_id", "reason"});
    for (const auto& s : items) w.row({s.dish_id, s.recipe_id, s.reason});
  });
}

ScoreOptions score_options(const std::string& format) {
  ScoreOptions o;
  o.metrics = metric_config(config());
  o.jobs = g.jobs;
  o.format = pick<MetricFormat>("--format", format, {{"csv", MetricFormat::Csv}, {"jsonl", MetricFormat::Jsonl}});
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cultural divergence metrics for recipe corpora"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--config", g.config_path, "INI-style key=value settings")->check(CLI::ExistingFile);
  app.add_option("--jobs,-j", g.jobs, "worker threads for scoring")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for synthetic corpora");

  // ingest
  std::string corpus_path, out_path, issues_path;
  auto* ingest = app.add_subcommand("ingest", "validate a corpus and write it back normalized");
  ingest->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
  ingest->add_option("--out,-o", out_path, "normalized corpus JSONL");
  ingest->add_option("--issues", issues_path, "load issues CSV");
  ingest->callback([&] {
    const auto loaded = load_corpus(corpus_path, lexicon());
    write_to(out_path, [&](std::ostream& out) { write_corpus(loaded.corpus, out); });
    if (!issues_path.empty()) {
      write_to(issues_path, [&](std::ostream& out) {
        CsvWriter w(out);
        w.row({"line", "recipe_id", "reason", "value"});
        for (const auto& i : loaded.report.issues) w.row({std::to_string(i.line), i.recipe_id, i.reason, i.value});
      });
    }
    std::cerr << "records " << loaded.report.records_read << ", indexed " << loaded.report.recipes_indexed
              << ", dishes " << loaded.corpus.size() << ", issues " << loaded.report.issues.size() << '\n';
  });

  // prompts
  auto* prompts = app.add_subcommand("prompts", "emit generation prompts as JSONL");
  prompts->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
  prompts->add_option("--out,-o", out_path);
  prompts->callback([&] {
    const auto specs = emit_prompts(load(corpus_path), lexicon(), prompt_config(config()));
    write_to(out_path, [&](std::ostream& out) {
      for (const auto& p : specs) write_prompt_jsonl(p, out);
    });
    std::cerr << "prompts " << specs.size() << '\n';
  });

  // score
  std::string format = "csv", manifest_path, skipped_path;
  bool resume = false;
  std::optional<std::size_t> max_dishes;
  auto* score = app.add_subcommand("score", "score every variation against its origin community");
  score->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
  score->add_option("--out,-o", out_path)->required();
  score->add_option("--format", format)->check(CLI::IsMember({"csv", "jsonl"}));
  score->add_option("--manifest", manifest_path, "progress manifest for --resume");
  score->add_flag("--resume", resume);
  score->add_option("--max-dishes", max_dishes, "stop after this many dishes");
  score->add_option("--skipped", skipped_path, "skipped dishes and recipes CSV");
  score->callback([&] {
    const Corpus corpus = load(corpus_path);
    ScoreOptions o = score_options(format);
    o.max_dishes = max_dishes;
    std::optional<fs::path> manifest;
    if (!manifest_path.empty()) manifest = manifest_path;
    if (resume && !manifest) throw ValidationError("--resume needs --manifest");
    const auto s = score_corpus_to_file(corpus, o, out_path, manifest, resume);
    write_skipped(skipped_path, s.skipped);
    print_summary(s);
  });

  // quality
  std::string per_recipe_path;
  auto* quality = app.add_subcommand("quality", "per-group validity, length, repetition, language and usage");
  quality->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
  quality->add_option("--out,-o", out_path);
  quality->add_option("--per-recipe", per_recipe_path, "per-recipe CSV");
  quality->callback([&] {
    const Corpus corpus = load(corpus_path);
    const auto cfg = quality_config(config());
    const auto det = detector();
    std::vector<RecipeQuality> assessed;
    for (const Recipe* r : corpus.recipes()) assessed.push_back(assess_recipe(*r, cfg, det));
    write_to(out_path, [&](std::ostream& out) { write_quality_csv(summarize_quality(assessed), out); });
    if (!per_recipe_path.empty())
      write_to(per_recipe_path, [&](std::ostream& out) { write_recipe_quality_csv(assessed, out); });
  });

  // correlate
  std::string metrics_path, table_path, coords_path, dim = "cultural", aggregation, group_by, coverage_path;
  auto* corr = app.add_subcommand("correlate", "Pearson r of cell means against a distance");
  corr->add_option("--metrics", metrics_path)->required()->check(CLI::ExistingFile);
  auto* table_opt = corr->add_option("--distances", table_path, "CSV iso_a,iso_b,distance")->check(CLI::ExistingFile);
  auto* coord_opt = corr->add_option("--coordinates", coords_path, "CSV iso,x,y or iso,lat,lon")->check(CLI::ExistingFile);
  table_opt->excludes(coord_opt);
  corr->add_option("--dimension", dim);
  corr->add_option("--aggregation", aggregation)->check(CLI::IsMember({"mean", "median"}));
  corr->add_option("--group-by", group_by)->check(CLI::IsMember({"model", "pooled"}));
  corr->add_option("--out,-o", out_path);
  corr->add_option("--missing-pairs", coverage_path, "country pairs without a distance");
  corr->callback([&] {
    if (table_path.empty() && coords_path.empty()) throw ValidationError("correlate needs --distances or --coordinates");
    Config c = config();
    if (!aggregation.empty()) c.set("correlate.aggregation", aggregation);
    if (!group_by.empty()) c.set("correlate.group_by", group_by);
    const auto report = correlate(load_metric_records(metrics_path), distance_table(table_path, coords_path, dimension(dim)),
                                  correlation_config(c));
    write_to(out_path, [&](std::ostream& out) { write_correlations_csv(report.results, out); });
    const auto& cov = report.coverage;
    std::cerr << "records used " << cov.records_used << ", degenerate excluded " << cov.degenerate_excluded
              << ", cells " << cov.cells << ", cells without distance " << cov.cells_missing_distance << '\n';
    if (!coverage_path.empty()) {
      write_to(coverage_path, [&](std::ostream& out) {
        CsvWriter w(out);
        w.row({"iso_a", "iso_b"});
        for (const auto& [a, b] : cov.missing_pairs) w.row({a, b});
      });
    }
  });

  // ingredients
  std::string key, overlap_path, group = "all";
  std::optional<std::size_t> top_k;
  auto* ingr = app.add_subcommand("ingredients", "top ingredients and overlap/preservation by region");
  ingr->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
  ingr->add_option("--top-k", top_k);
  ingr->add_option("--group", group, "all, human, or a model name");
  ingr->add_option("--key", key)->check(CLI::IsMember({"phrase", "head"}));
  ingr->add_option("--out,-o", out_path, "top ingredients CSV");
  ingr->add_option("--overlap", overlap_path, "overlap/preservation CSV");
  ingr->callback([&] {
    const Corpus corpus = load(corpus_path);
    const std::size_t k = top_k ? *top_k : config().get_size("ingredients.top_k").value_or(20);
    std::vector<const Recipe*> selected;
    for (const Recipe* r : corpus.recipes()) {
      const std::string owner = r->source == Source::ModelGenerated ? r->model_name.value_or("") : "human";
      if (group == "all" || group == owner) selected.push_back(r);
    }
    write_to(out_path, [&](std::ostream& out) { write_top_ingredients_csv(top_ingredients(selected, k), out); });
    if (!overlap_path.empty()) {
      const auto cells = overlap_table(corpus, lexicon(), ingredient_key(key));
      write_to(overlap_path, [&](std::ostream& out) { write_overlap_csv(cells, out); });
    }
  });

  // attribution
  std::string summary_path;
  auto* attr = app.add_subcommand("attribution", "TF-IDF country attribution of variation recipes");
  attr->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
  attr->add_option("--out,-o", out_path, "per-recipe CSV");
  attr->add_option("--summary", summary_path, "per-group shares CSV");
  attr->callback([&] {
    const auto records = attribute_all(load(corpus_path));
    write_to(out_path, [&](std::ostream& out) { write_attribution_csv(records, out); });
    if (!summary_path.empty())
      write_to(summary_path, [&](std::ostream& out) { write_attribution_summary_csv(attribution_summary(records), out); });
  });

  // mismatch
  std::string region_pairs_path;
  std::size_t top_countries = 5;
  auto* mism = app.add_subcommand("mismatch", "model titles naming the wrong country");
  mism->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
  mism->add_option("--top", top_countries, "most frequent wrong countries to list");
  mism->add_option("--out,-o", out_path);
  mism->add_option("--region-pairs", region_pairs_path);
  mism->callback([&] {
    const auto report = mismatch_report(load(corpus_path), lexicon(), top_countries);
    write_to(out_path, [&](std::ostream& out) { write_mismatch_csv(report, out); });
    if (!region_pairs_path.empty())
      write_to(region_pairs_path, [&](std::ostream& out) { write_region_pairs_csv(report, out); });
  });

  // increase
  std::string mode = "both";
  auto* incr = app.add_subcommand("increase", "relative increase of model over human divergence");
  incr->add_option("--metrics", metrics_path)->required()->check(CLI::ExistingFile);
  incr->add_option("--mode", mode)->check(CLI::IsMember({"origin", "paired_variation", "both"}));
  incr->add_option("--out,-o", out_path);
  incr->callback([&] {
    const auto records = load_metric_records(metrics_path);
    std::vector<IncreaseRate> rates;
    for (auto m : {IncreaseMode::Origin, IncreaseMode::PairedVariation}) {
      if (mode != "both" && mode != to_string(m)) continue;
      const auto part = increase_rates(records, m);
      rates.insert(rates.end(), part.begin(), part.end());
    }
    write_to(out_path, [&](std::ostream& out) { write_increase_csv(rates, out); });
  });

  // keywords
  std::string scope, means_path;
  auto* kw = app.add_subcommand("keywords", "creative vs traditional keyword gaps (Welch t-test)");
  kw->add_option("--metrics", metrics_path)->required()->check(CLI::ExistingFile);
  kw->add_option("--scope", scope)->check(CLI::IsMember({"origin", "variation", "all"}));
  kw->add_option("--out,-o", out_path, "gap CSV");
  kw->add_option("--per-keyword", means_path, "per-keyword means CSV");
  kw->callback([&] {
    const auto records = load_metric_records(metrics_path);
    const auto s = keyword_scope(scope);
    write_to(out_path, [&](std::ostream& out) {
      write_keyword_gaps_csv(keyword_gaps(records, s, keyword_groups(config())), out);
    });
    if (!means_path.empty())
      write_to(means_path, [&](std::ostream& out) { write_keyword_means_csv(keyword_means(records, s), out); });
  });

  // layers
  std::string layers_path;
  auto* layers = app.add_subcommand("layers", "origin vs variation gaps over per-layer decoded streams");
  layers->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
  layers->add_option("--layers", layers_path, "LayerRecord JSONL")->required()->check(CLI::ExistingFile);
  layers->add_option("--out,-o", out_path);
  layers->callback([&] {
    std::ifstream in(layers_path);
    const auto records = read_layer_records(in, layers_path);
    LayerGapConfig lc;
    lc.metrics = metric_config(config());
    lc.filter_pos = config().get_bool("layers.filter_pos").value_or(false);
    const auto rows = layer_gap_report(records, load(corpus_path), lc);
    write_to(out_path, [&](std::ostream& out) { write_layer_gaps_csv(rows, out); });
  });

  // report
  std::string out_dir;
  auto* report = app.add_subcommand("report", "score a corpus and write every table into a directory");
  report->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
  report->add_option("--out-dir", out_dir)->required();
  auto* rtable = report->add_option("--distances", table_path)->check(CLI::ExistingFile);
  auto* rcoord = report->add_option("--coordinates", coords_path)->check(CLI::ExistingFile);
  rtable->excludes(rcoord);
  report->add_option("--dimension", dim);
  report->add_option("--layers", layers_path)->check(CLI::ExistingFile);
  report->callback([&] {
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    const Corpus corpus = load(corpus_path);
    const auto file = [&](const char* name) { return (dir / name).string(); };

    const auto s = score_corpus_to_file(corpus, score_options("csv"), file("metrics.csv"));
    print_summary(s);
    write_skipped(file("skipped.csv"), s.skipped);
    const auto records = load_metric_records(file("metrics.csv"));

    std::vector<IncreaseRate> rates;
    for (auto m : {IncreaseMode::Origin, IncreaseMode::PairedVariation}) {
      const auto part = increase_rates(records, m);
      rates.insert(rates.end(), part.begin(), part.end());
    }
    write_to(file("increase.csv"), [&](std::ostream& out) { write_increase_csv(rates, out); });
    const auto scope_value = keyword_scope("");
    write_to(file("keyword_gaps.csv"), [&](std::ostream& out) {
      write_keyword_gaps_csv(keyword_gaps(records, scope_value, keyword_groups(config())), out);
    });
    write_to(file("keyword_means.csv"),
             [&](std::ostream& out) { write_keyword_means_csv(keyword_means(records, scope_value), out); });
    if (!table_path.empty() || !coords_path.empty()) {
      const auto c = correlate(records, distance_table(table_path, coords_path, dimension(dim)),
                               correlation_config(config()));
      write_to(file("correlations.csv"), [&](std::ostream& out) { write_correlations_csv(c.results, out); });
    }

    const auto det = detector();
    std::vector<RecipeQuality> assessed;
    for (const Recipe* r : corpus.recipes()) assessed.push_back(assess_recipe(*r, quality_config(config()), det));
    write_to(file("quality.csv"), [&](std::ostream& out) { write_quality_csv(summarize_quality(assessed), out); });

    const std::size_t k = config().get_size("ingredients.top_k").value_or(20);
    write_to(file("top_ingredients.csv"),
             [&](std::ostream& out) { write_top_ingredients_csv(top_ingredients(corpus.recipes(), k), out); });
    write_to(file("overlap.csv"),
             [&](std::ostream& out) { write_overlap_csv(overlap_table(corpus, lexicon(), ingredient_key("")), out); });
    const auto attribution = attribute_all(corpus);
    write_to(file("attribution_summary.csv"),
             [&](std::ostream& out) { write_attribution_summary_csv(attribution_summary(attribution), out); });
    write_to(file("mismatch.csv"), [&](std::ostream& out) { write_mismatch_csv(mismatch_report(corpus, lexicon()), out); });

    if (!layers_path.empty()) {
      std::ifstream in(layers_path);
      LayerGapConfig lc;
      lc.metrics = metric_config(config());
      lc.filter_pos = config().get_bool("layers.filter_pos").value_or(false);
      const auto rows = layer_gap_report(read_layer_records(in, layers_path), corpus, lc);
      write_to(file("layer_gaps.csv"), [&](std::ostream& out) { write_layer_gaps_csv(rows, out); });
    }
  });

  // synth
  std::size_t dishes = 10;
  bool planted = false;
  std::string distances_out;
  auto* synth = app.add_subcommand("synth", "write a deterministic synthetic corpus");
  synth->add_option("--dishes", dishes);
  synth->add_flag("--planted", planted, "drift proportional to a planted distance");
  synth->add_option("--distances-out", distances_out, "planted distance table CSV");
  synth->add_option("--out,-o", out_path);
  synth->callback([&] {
    if (planted) {
      PlantedConfig pc;
      pc.dishes = dishes;
      pc.seed = g.seed;
      const auto p = planted_corpus(pc, lexicon());
      write_to(out_path, [&](std::ostream& out) { write_corpus(p.corpus, out); });
      if (!distances_out.empty())
        write_to(distances_out, [&](std::ostream& out) { write_distance_table(p.distances, out); });
      return;
    }
    if (!distances_out.empty()) throw ValidationError("--distances-out needs --planted");
    SynthConfig sc;
    sc.dishes = dishes;
    sc.seed = g.seed;
    write_to(out_path, [&](std::ostream& out) { write_corpus(synth_corpus(sc, lexicon()), out); });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
