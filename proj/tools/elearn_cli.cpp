// Command-line driver: run the pipeline, classify learners, print reports.

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "elearn/error.hpp"
#include "elearn/pipeline.hpp"

namespace {

// Flags that mirror PipelineConfig fields, in CLI spelling.
const std::map<std::string, std::string> kConfigFlags = {
    {"corpus_dir", "--corpus-dir"},         {"stopwords_path", "--stopwords"},
    {"lexicon_path", "--lexicon"},          {"window_size", "--window-size"},
    {"concept_pos", "--concept-pos"},       {"idf_smoothing", "--idf-smoothing"},
    {"filter_threshold", "--filter-threshold"}, {"top_n", "--top-n"},
    {"lsi_k", "--lsi-k"},                   {"clusters_k", "--clusters-k"},
    {"seed", "--seed"},                     {"out_dir", "--out-dir"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learner-knowledge analysis: TF-IDF, LSI, Jaccard, fuzzy levels, k-means"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(elearn::kToolVersion));

  auto* run = app.add_subcommand("run", "Run every pipeline stage over a corpus directory");
  std::string config_path;
  run->add_option("--config", config_path, "Flat key = value configuration file")->check(CLI::ExistingFile);
  std::map<std::string, std::string> overrides;
  std::map<std::string, CLI::Option*> override_opts;
  for (const auto& [key, flag] : kConfigFlags) {
    override_opts[key] = run->add_option(flag + ",--" + key, overrides[key], "Overrides `" + key + "`");
  }

  auto* classify = app.add_subcommand("classify", "Score a learner document against a reference map");
  std::string learner, reference, manifest_override, out_path;
  classify->add_option("--learner", learner, "Learner answer text file")->required()->check(CLI::ExistingFile);
  classify->add_option("--reference", reference, "Reference concept_map.json of a run")
      ->required()
      ->check(CLI::ExistingFile);
  classify->add_option("--manifest", manifest_override, "Run manifest (default: beside the reference map)");
  classify->add_option("--out", out_path, "Output file (default: <run>/classifications/<learner>.json)");

  auto* report = app.add_subcommand("report", "Print a CSV report for a finished run");
  std::string report_manifest, kind_name;
  report->add_option("--manifest", report_manifest, "Run manifest")->required()->check(CLI::ExistingFile);
  report->add_option("--kind", kind_name, "clusters | levels | timings")
      ->required()
      ->check(CLI::IsMember({"clusters", "levels", "timings"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto cfg = config_path.empty() ? elearn::PipelineConfig{} : elearn::load_config(config_path);
      for (const auto& [key, opt] : override_opts) {
        if (opt->count() > 0) elearn::set_config_value(cfg, key, overrides[key]);
      }
      const auto manifest = elearn::run_pipeline(cfg);
      for (const auto& s : manifest.stages) {
        std::cout << s.stage << '\t' << (cfg.out_dir / s.file).string() << '\t' << s.sha256 << '\n';
      }
      std::cout << "manifest\t" << (cfg.out_dir / elearn::kManifestFile).string() << '\n';
    } else if (*classify) {
      std::optional<std::filesystem::path> manifest;
      std::optional<std::filesystem::path> out;
      if (!manifest_override.empty()) manifest = manifest_override;
      if (!out_path.empty()) out = out_path;
      const auto result = elearn::classify_learner(learner, reference, manifest, out);
      std::cout << elearn::render(elearn::learner_result_to_json(result));
    } else if (*report) {
      elearn::report(report_manifest, *elearn::parse_report_kind(kind_name), std::cout);
    }
  } catch (const elearn::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
