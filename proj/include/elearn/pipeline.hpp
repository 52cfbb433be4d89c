#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "elearn/artifacts.hpp"

namespace elearn {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct PipelineConfig {
  std::filesystem::path corpus_dir;
  std::filesystem::path stopwords_path;  // empty: bundled list
  std::filesystem::path lexicon_path;    // empty: bundled lexicon
  std::size_t window_size = kDefaultWindowSize;
  std::set<PosTag> concept_pos{PosTag::Noun};
  IdfSmoothing idf_smoothing = IdfSmoothing::None;
  double filter_threshold = 0.0;
  std::optional<std::size_t> top_n;
  Eigen::Index lsi_k = 2;
  Eigen::Index clusters_k = 4;
  std::uint64_t seed = 42;
  std::filesystem::path out_dir = "out";

  /// Throws InvalidArgument naming the first bad field.
  void validate() const;
};

/// Sets one field from its textual form; `key` is the field name.
void set_config_value(PipelineConfig& cfg, std::string_view key, std::string_view value);

/// Flat `key = value` lines, `#` comments. Relative paths resolve against
/// `base_dir`.
PipelineConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {},
                            std::string_view origin = "<config>");
PipelineConfig load_config(const std::filesystem::path& path);

Json config_to_json(const PipelineConfig& cfg);
PipelineConfig config_from_json(const Json& j);

struct StageRecord {
  std::string stage;
  std::string file;  // relative to the run directory
  std::string sha256;
  double millis = 0.0;
};

struct RunManifest {
  PipelineConfig config;
  std::vector<StageRecord> stages;
  std::string tool_version{kToolVersion};
  std::string started_at;
  std::string finished_at;
};

Json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);

inline constexpr std::string_view kManifestFile = "manifest.json";
inline constexpr std::string_view kClassificationDir = "classifications";

/// Runs every stage and writes its artifact plus `manifest.json` into
/// `cfg.out_dir`. Artifacts are staged under a `.partial` suffix and only
/// renamed once the whole run succeeds.
RunManifest run_pipeline(const PipelineConfig& cfg);

/// Jaccard score of each document's positively weighted reference concepts
/// against the full reference concept set.
std::vector<double> document_similarities(const WeightMatrix& weights, const ConceptMap& reference);

/// Learner concept map built with the same settings as the reference run.
ConceptMap learner_concept_map(const std::string& text, const PipelineConfig& cfg);

struct LearnerResult {
  std::string learner;
  Eigen::Index cluster = 0;
  Classification classification;
  Recommendation recommendation;
};

Json learner_result_to_json(const LearnerResult& r);
LearnerResult learner_result_from_json(const Json& j);

/// Scores a learner document against a run's reference concept map. The run
/// manifest defaults to the one beside `reference_map`. The result is written
/// to `out` (default: `<run>/classifications/<learner>.json`).
LearnerResult classify_learner(const std::filesystem::path& learner_doc,
                               const std::filesystem::path& reference_map,
                               std::optional<std::filesystem::path> manifest = std::nullopt,
                               std::optional<std::filesystem::path> out = std::nullopt);

enum class ReportKind { Clusters, Levels, Timings };
std::optional<ReportKind> parse_report_kind(std::string_view name);

/// CSV with a header row, rows sorted by the first column, numbers at six
/// significant digits.
void report(const std::filesystem::path& manifest, ReportKind kind, std::ostream& out);

std::string sha256_hex(std::string_view bytes);

}  // namespace elearn
