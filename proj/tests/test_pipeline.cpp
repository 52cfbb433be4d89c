#include <doctest.h>

#include <fstream>
#include <sstream>

#include "elearn/error.hpp"
#include "elearn/pipeline.hpp"

using namespace elearn;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("elearn_pipeline_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PipelineConfig toy_config(const fs::path& out) {
  auto cfg = load_config(fs::path(ELEARN_DATA_DIR) / "toy.conf");
  cfg.out_dir = out;
  return cfg;
}

// Three windows of eight nouns over six concepts, each confined to one window.
const std::string kLesson =
    "database query database query database query database query\n"
    "router packet router packet router packet router packet\n"
    "table socket table socket table socket table socket\n";

PipelineConfig lesson_run(const fs::path& root) {
  write(root / "corpus" / "lesson.txt", kLesson);
  PipelineConfig cfg;
  cfg.corpus_dir = root / "corpus";
  cfg.out_dir = root / "run";
  cfg.lsi_k = 2;
  cfg.clusters_k = 2;
  run_pipeline(cfg);
  return cfg;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse_config(
      "# comment\ncorpus_dir = texts\nwindow_size = 5\nconcept_pos = noun, verb\n"
      "idf_smoothing = add_one_documents\ntop_n = 7\nseed = 9\n",
      "/base");
  CHECK(cfg.corpus_dir == fs::path("/base/texts"));
  CHECK(cfg.window_size == 5);
  CHECK(cfg.concept_pos == std::set<PosTag>{PosTag::Noun, PosTag::Verb});
  CHECK(cfg.idf_smoothing == IdfSmoothing::AddOneDocuments);
  CHECK(cfg.top_n == 7u);
  CHECK(cfg.seed == 9u);

  CHECK(code_of([] { parse_config("window_size = zero\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_config("colour = blue\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_config("just a line\n"); }) == ErrorCode::ParseError);

  PipelineConfig bad;
  bad.corpus_dir = "x";
  bad.lsi_k = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK(code_of([] { PipelineConfig{}.validate(); }) == ErrorCode::InvalidArgument);

  const auto back = config_from_json(config_to_json(cfg));
  CHECK(config_to_json(back) == config_to_json(cfg));
}

TEST_CASE("empty corpus fails with EmptyCorpus and leaves no final artifacts") {
  const auto root = scratch("empty");
  PipelineConfig cfg;
  cfg.corpus_dir = fs::path(ELEARN_FIXTURE_DIR) / "empty_corpus";
  cfg.out_dir = root / "run";
  CHECK(code_of([&] { run_pipeline(cfg); }) == ErrorCode::EmptyCorpus);
  CHECK_FALSE(fs::exists(root / "run" / "manifest.json"));
  CHECK_FALSE(fs::exists(root / "run" / "tokens.json"));
}

TEST_CASE("toy run writes six artifacts and repeats byte for byte") {
  const auto root = scratch("toy");
  const auto first = run_pipeline(toy_config(root / "a"));
  const auto second = run_pipeline(toy_config(root / "b"));
  REQUIRE(first.stages.size() == 6);
  REQUIRE(second.stages.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(first.stages[i].stage == second.stages[i].stage);
    CHECK(first.stages[i].sha256 == second.stages[i].sha256);
    const auto a = slurp(root / "a" / first.stages[i].file);
    CHECK(a == slurp(root / "b" / second.stages[i].file));
    CHECK(sha256_hex(a) == first.stages[i].sha256);
  }
  CHECK(fs::exists(root / "a" / "manifest.json"));
  for (const auto& entry : fs::directory_iterator(root / "a")) CHECK(entry.path().extension() != ".partial");

  const auto manifest = manifest_from_json(read_json(root / "a" / "manifest.json"));
  CHECK(manifest.tool_version == kToolVersion);
  CHECK(manifest.stages.size() == 6);
}

TEST_CASE("too many clusters names the failing stage") {
  const auto root = scratch("too_many");
  auto cfg = toy_config(root / "run");
  cfg.clusters_k = 500;
  try {
    run_pipeline(cfg);
    FAIL("expected TooFewPoints");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooFewPoints);
    CHECK(std::string(e.what()).find("clustering") != std::string::npos);
  }
  CHECK_FALSE(fs::exists(root / "run" / "manifest.json"));
}

TEST_CASE("classify: a learner identical to the reference is delivered to") {
  const auto root = scratch("identity");
  const auto cfg = lesson_run(root);
  const auto result = classify_learner(root / "corpus" / "lesson.txt", cfg.out_dir / "concept_map.json");
  CHECK(result.learner == "lesson");
  CHECK(result.classification.similarity == 1.0);
  CHECK(result.classification.assignment.level == Level::High);
  CHECK(result.recommendation.action == Action::DeliverAndStore);
  CHECK(result.recommendation.deliver_group == result.cluster);
  const auto stored = learner_result_from_json(read_json(cfg.out_dir / "classifications" / "lesson.json"));
  CHECK(stored.classification == result.classification);
}

TEST_CASE("classify: disjoint and half-overlapping learners") {
  const auto root = scratch("partial");
  const auto cfg = lesson_run(root);
  const auto map = cfg.out_dir / "concept_map.json";

  write(root / "learners" / "novice.txt",
        "melody chord melody chord melody chord melody chord\n"
        "tempo rhythm tempo rhythm tempo rhythm tempo rhythm\n");
  const auto novice = classify_learner(root / "learners" / "novice.txt", map);
  CHECK(novice.classification.similarity == 0.0);
  CHECK(novice.classification.assignment.level == Level::Low);
  CHECK(novice.recommendation.action == Action::Reteach);

  write(root / "learners" / "partial.txt",
        "database query database query database query database query\n"
        "table table table table table table table table\n");
  const auto partial = classify_learner(root / "learners" / "partial.txt", map);
  CHECK(partial.classification.similarity == 0.5);
  CHECK(partial.classification.assignment.level == Level::Medium);
  CHECK(partial.recommendation.action == Action::Elaborate);
  CHECK_FALSE(partial.recommendation.deliver_group.has_value());

  std::ostringstream levels;
  report(cfg.out_dir / "manifest.json", ReportKind::Levels, levels);
  std::istringstream lines(levels.str());
  std::string header, first, second;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(header == "learner,similarity,level,support,action,cluster");
  CHECK(first.rfind("novice,0,low,", 0) == 0);
  CHECK(second.rfind("partial,0.5,medium,0.5,elaborate,", 0) == 0);
}

TEST_CASE("learner concept map follows the reference settings") {
  PipelineConfig cfg;
  cfg.corpus_dir = "unused";
  CHECK(learner_concept_map(kLesson, cfg).concepts ==
        ConceptSet{"database", "packet", "query", "router", "socket", "table"});
  // A single window gives every term zero weight.
  CHECK(learner_concept_map("database query table", cfg).concepts.empty());
  CHECK(learner_concept_map("the of and", cfg).concepts.empty());
}

TEST_CASE("reports") {
  const auto root = scratch("reports");
  const auto cfg = lesson_run(root);
  const auto manifest = cfg.out_dir / "manifest.json";

  std::ostringstream levels;
  report(manifest, ReportKind::Levels, levels);
  CHECK(levels.str() == "learner,similarity,level,support,action,cluster\n");

  std::ostringstream clusters;
  report(manifest, ReportKind::Clusters, clusters);
  std::istringstream cl(clusters.str());
  std::string line;
  std::getline(cl, line);
  CHECK(line == "cluster,size,label,mean_similarity");
  int rows = 0, total = 0;
  while (std::getline(cl, line)) {
    ++rows;
    total += std::stoi(line.substr(line.find(',') + 1));
  }
  CHECK(rows == 2);
  CHECK(total == 3);

  std::ostringstream timings;
  report(manifest, ReportKind::Timings, timings);
  CHECK(timings.str().rfind("stage,milliseconds\nclustering,", 0) == 0);

  CHECK(parse_report_kind("levels") == ReportKind::Levels);
  CHECK_FALSE(parse_report_kind("everything").has_value());
  CHECK_THROWS_AS(report(root / "missing.json", ReportKind::Timings, timings), Error);
}

TEST_CASE("document similarities score each window against the reference set") {
  const auto root = scratch("docsims");
  const auto cfg = lesson_run(root);
  const auto weights = weights_from_json(read_json(cfg.out_dir / "weights.json"));
  const auto reference = concept_map_from_json(read_json(cfg.out_dir / "concept_map.json"));
  const auto sims = document_similarities(weights, reference);
  REQUIRE(sims.size() == 3);
  for (double s : sims) CHECK(s == doctest::Approx(2.0 / 6.0));
}

TEST_CASE("sha256 of known inputs") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
