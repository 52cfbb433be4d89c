#include "elearn/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "elearn/error.hpp"

namespace elearn {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Configuration

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::ParseError, std::string(key) + ": not a number: '" + std::string(value) + "'");
  }
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  try {
    std::size_t used = 0;
    const std::string s(value);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, std::string(key) + ": not a number: '" + std::string(value) + "'");
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string join_tags(const std::set<PosTag>& tags) {
  std::string out;
  for (auto t : tags) {
    if (!out.empty()) out += ",";
    out += to_string(t);
  }
  return out;
}

}  // namespace

void PipelineConfig::validate() const {
  if (corpus_dir.empty()) throw Error(ErrorCode::InvalidArgument, "corpus_dir is required");
  if (window_size < 1) throw Error(ErrorCode::InvalidArgument, "window_size must be >= 1");
  if (lsi_k < 1) throw Error(ErrorCode::InvalidArgument, "lsi_k must be >= 1");
  if (clusters_k < 1) throw Error(ErrorCode::InvalidArgument, "clusters_k must be >= 1");
  if (!(filter_threshold >= 0.0)) throw Error(ErrorCode::InvalidArgument, "filter_threshold must be >= 0");
  if (top_n && *top_n == 0) throw Error(ErrorCode::InvalidArgument, "top_n must be positive");
  if (concept_pos.empty()) throw Error(ErrorCode::InvalidArgument, "concept_pos must name at least one tag");
}

void set_config_value(PipelineConfig& cfg, std::string_view key, std::string_view raw) {
  const auto value = trim(raw);
  if (key == "corpus_dir") {
    cfg.corpus_dir = std::string(value);
  } else if (key == "stopwords_path") {
    cfg.stopwords_path = std::string(value);
  } else if (key == "lexicon_path") {
    cfg.lexicon_path = std::string(value);
  } else if (key == "out_dir") {
    cfg.out_dir = std::string(value);
  } else if (key == "window_size") {
    cfg.window_size = parse_number<std::size_t>(key, value);
  } else if (key == "concept_pos") {
    std::set<PosTag> tags;
    std::string_view rest = value;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto name = trim(rest.substr(0, comma));
      const auto tag = parse_pos_tag(name);
      if (!tag) throw Error(ErrorCode::ParseError, "concept_pos: unknown tag '" + std::string(name) + "'");
      tags.insert(*tag);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    cfg.concept_pos = std::move(tags);
  } else if (key == "idf_smoothing") {
    const auto s = parse_idf_smoothing(value);
    if (!s) throw Error(ErrorCode::ParseError, "idf_smoothing: expected none or add_one_documents");
    cfg.idf_smoothing = *s;
  } else if (key == "filter_threshold") {
    cfg.filter_threshold = parse_real(key, value);
  } else if (key == "top_n") {
    if (value.empty() || value == "none") {
      cfg.top_n.reset();
    } else {
      cfg.top_n = parse_number<std::size_t>(key, value);
    }
  } else if (key == "lsi_k") {
    cfg.lsi_k = parse_number<Eigen::Index>(key, value);
  } else if (key == "clusters_k") {
    cfg.clusters_k = parse_number<Eigen::Index>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else {
    throw Error(ErrorCode::ParseError, "unknown configuration key '" + std::string(key) + "'");
  }
}

PipelineConfig parse_config(std::string_view text, const fs::path& base_dir, std::string_view origin) {
  PipelineConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    const auto where = std::string(origin) + ":" + std::to_string(line_no);
    if (eq == std::string_view::npos) throw Error(ErrorCode::ParseError, where + ": expected key = value");
    const auto key = trim(body.substr(0, eq));
    try {
      set_config_value(cfg, key, body.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(e.code(), where + ": " + e.detail());
    }
  }
  if (!base_dir.empty()) {
    for (auto* p : {&cfg.corpus_dir, &cfg.stopwords_path, &cfg.lexicon_path, &cfg.out_dir}) {
      if (!p->empty() && p->is_relative()) *p = base_dir / *p;
    }
  }
  return cfg;
}

PipelineConfig load_config(const fs::path& path) {
  return parse_config(read_file(path), path.parent_path(), path.string());
}

Json config_to_json(const PipelineConfig& cfg) {
  return Json{{"corpus_dir", cfg.corpus_dir.string()},
              {"stopwords_path", cfg.stopwords_path.string()},
              {"lexicon_path", cfg.lexicon_path.string()},
              {"out_dir", cfg.out_dir.string()},
              {"window_size", cfg.window_size},
              {"concept_pos", join_tags(cfg.concept_pos)},
              {"idf_smoothing", std::string(to_string(cfg.idf_smoothing))},
              {"filter_threshold", cfg.filter_threshold},
              {"top_n", cfg.top_n ? Json(*cfg.top_n) : Json(nullptr)},
              {"lsi_k", cfg.lsi_k},
              {"clusters_k", cfg.clusters_k},
              {"seed", cfg.seed}};
}

PipelineConfig config_from_json(const Json& j) {
  try {
    PipelineConfig cfg;
    cfg.corpus_dir = j.at("corpus_dir").get<std::string>();
    cfg.stopwords_path = j.at("stopwords_path").get<std::string>();
    cfg.lexicon_path = j.at("lexicon_path").get<std::string>();
    cfg.out_dir = j.at("out_dir").get<std::string>();
    cfg.window_size = j.at("window_size").get<std::size_t>();
    set_config_value(cfg, "concept_pos", j.at("concept_pos").get<std::string>());
    set_config_value(cfg, "idf_smoothing", j.at("idf_smoothing").get<std::string>());
    cfg.filter_threshold = j.at("filter_threshold").get<double>();
    if (!j.at("top_n").is_null()) cfg.top_n = j.at("top_n").get<std::size_t>();
    cfg.lsi_k = j.at("lsi_k").get<Eigen::Index>();
    cfg.clusters_k = j.at("clusters_k").get<Eigen::Index>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    return cfg;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("config snapshot: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Manifest

Json manifest_to_json(const RunManifest& m) {
  Json artifacts = Json::array();
  Json timings = Json::object();
  for (const auto& s : m.stages) {
    artifacts.push_back(Json{{"stage", s.stage}, {"path", s.file}, {"sha256", s.sha256}});
    timings[s.stage] = s.millis;
  }
  return Json{{"tool_version", m.tool_version}, {"config", config_to_json(m.config)},
              {"artifacts", std::move(artifacts)}, {"timings_ms", std::move(timings)},
              {"started_at", m.started_at}, {"finished_at", m.finished_at}};
}

RunManifest manifest_from_json(const Json& j) {
  try {
    RunManifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.config = config_from_json(j.at("config"));
    const auto& timings = j.at("timings_ms");
    for (const auto& a : j.at("artifacts")) {
      StageRecord s;
      s.stage = a.at("stage").get<std::string>();
      s.file = a.at("path").get<std::string>();
      s.sha256 = a.at("sha256").get<std::string>();
      s.millis = timings.value(s.stage, 0.0);
      m.stages.push_back(std::move(s));
    }
    m.started_at = j.at("started_at").get<std::string>();
    m.finished_at = j.at("finished_at").get<std::string>();
    return m;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("manifest: ") + e.what());
  }
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw Error(ErrorCode::IoError, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

StopWordList stop_words_for(const PipelineConfig& cfg) {
  return cfg.stopwords_path.empty() ? StopWordList::builtin() : StopWordList::load(cfg.stopwords_path);
}

PosLexicon lexicon_for(const PipelineConfig& cfg) {
  return cfg.lexicon_path.empty() ? PosLexicon::builtin() : PosLexicon::load(cfg.lexicon_path);
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path.string());
}

fs::path partial_path(const fs::path& p) { return fs::path(p.string() + ".partial"); }

// Times one stage and tags any failure with the stage name.
class StageRunner {
 public:
  StageRunner(fs::path dir, RunManifest& manifest) : dir_(std::move(dir)), manifest_(manifest) {}

  template <typename Fn>
  auto run(const std::string& stage, const std::string& file, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    try {
      auto [value, json] = fn();
      const auto bytes = render(json);
      write_file(partial_path(dir_ / file), bytes);
      const std::chrono::duration<double, std::milli> took = std::chrono::steady_clock::now() - start;
      manifest_.stages.push_back({stage, file, sha256_hex(bytes), took.count()});
      return value;
    } catch (const Error& e) {
      throw Error(e.code(), "stage '" + stage + "': " + e.detail());
    }
  }

  void commit() {
    for (const auto& s : manifest_.stages) fs::rename(partial_path(dir_ / s.file), dir_ / s.file);
  }

 private:
  fs::path dir_;
  RunManifest& manifest_;
};

std::vector<RawDocument> read_corpus(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::IoError, "corpus directory not found: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  if (files.empty()) throw Error(ErrorCode::EmptyCorpus, "no .txt files in " + dir.string());
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.stem().string() < b.stem().string(); });
  std::vector<RawDocument> docs;
  for (const auto& f : files) docs.push_back({f.stem().string(), read_file(f)});
  return docs;
}

std::vector<PseudoDocument> windows_of(const std::vector<TaggedDocument>& docs, std::size_t window) {
  std::vector<PseudoDocument> out;
  for (const auto& d : docs) {
    auto w = segment(d.id, d.tokens, window);
    std::move(w.begin(), w.end(), std::back_inserter(out));
  }
  return out;
}

ConceptMap concept_map_from_text(const std::vector<RawDocument>& docs, const PipelineConfig& cfg,
                                 const StopWordList& stops, const PosLexicon& lexicon) {
  std::vector<TaggedDocument> tagged;
  for (const auto& d : docs) tagged.push_back({d.id, preprocess(d, stops, lexicon)});
  TermDocumentMatrix matrix;
  try {
    matrix = build_matrix(windows_of(tagged, cfg.window_size), cfg.concept_pos);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::EmptyVocabulary) return {};
    throw;
  }
  const auto weights = tf_idf(matrix, inverse_document_frequency(matrix, cfg.idf_smoothing));
  return build_concept_map(filter_concepts(weights, cfg.filter_threshold, cfg.top_n), weights);
}

}  // namespace

std::vector<double> document_similarities(const WeightMatrix& weights, const ConceptMap& reference) {
  std::vector<ConceptSet> per_doc(static_cast<std::size_t>(weights.num_docs()));
  for (Eigen::Index t = 0; t < weights.weights.outerSize(); ++t) {
    if (!reference.concepts.count(weights.index[t])) continue;
    for (WeightStorage::InnerIterator it(weights.weights, t); it; ++it) {
      if (it.value() > 0.0) per_doc[static_cast<std::size_t>(it.col())].insert(weights.index[t]);
    }
  }
  std::vector<double> sims;
  sims.reserve(per_doc.size());
  for (const auto& s : per_doc) sims.push_back(jaccard_sets(s, reference.concepts).value);
  return sims;
}

RunManifest run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  RunManifest manifest;
  manifest.config = cfg;
  manifest.started_at = utc_now();

  const auto stops = stop_words_for(cfg);
  const auto lexicon = lexicon_for(cfg);
  fs::create_directories(cfg.out_dir);
  StageRunner stages(cfg.out_dir, manifest);

  const auto tagged = stages.run("text-pipeline", "tokens.json", [&] {
    const auto corpus = read_corpus(cfg.corpus_dir);
    std::vector<TaggedDocument> docs;
    for (const auto& d : corpus) docs.push_back({d.id, preprocess(d, stops, lexicon)});
    auto json = tokens_to_json(docs);
    return std::pair{std::move(docs), std::move(json)};
  });

  const auto matrix = stages.run("term-matrix", "matrix.json", [&] {
    auto m = build_matrix(windows_of(tagged, cfg.window_size), cfg.concept_pos);
    auto json = matrix_to_json(m);
    return std::pair{std::move(m), std::move(json)};
  });

  const auto weights = stages.run("weighting", "weights.json", [&] {
    auto w = tf_idf(matrix, inverse_document_frequency(matrix, cfg.idf_smoothing));
    auto json = weights_to_json(w);
    return std::pair{std::move(w), std::move(json)};
  });

  const auto truncated = stages.run("latent-semantics", "latent.json", [&] {
    LatentArtifact a{cfg.lsi_k, svd(weights.dense())};
    auto t = truncate(a.model, a.k);
    return std::pair{std::move(t), latent_to_json(a)};
  });

  const auto reference = stages.run("similarity", "concept_map.json", [&] {
    auto map = build_concept_map(filter_concepts(weights, cfg.filter_threshold, cfg.top_n), weights);
    if (map.concepts.empty()) throw Error(ErrorCode::EmptyConcepts, "no term survived concept filtering");
    auto json = concept_map_to_json(map);
    return std::pair{std::move(map), std::move(json)};
  });

  stages.run("clustering", "clusters.json", [&] {
    ClusterArtifact a;
    a.model = kmeans(truncated.doc_vectors, cfg.clusters_k, cfg.seed);
    const auto sims = document_similarities(weights, reference);
    a.labels = label_difficulty(a.model, sims);
    auto json = clusters_to_json(a);
    return std::pair{0, std::move(json)};
  });

  stages.commit();
  manifest.finished_at = utc_now();
  const auto manifest_path = cfg.out_dir / kManifestFile;
  write_file(partial_path(manifest_path), render(manifest_to_json(manifest)));
  fs::rename(partial_path(manifest_path), manifest_path);
  return manifest;
}

// ---------------------------------------------------------------------------
// Learner classification

ConceptMap learner_concept_map(const std::string& text, const PipelineConfig& cfg) {
  return concept_map_from_text({RawDocument{"learner", text}}, cfg, stop_words_for(cfg), lexicon_for(cfg));
}

Json learner_result_to_json(const LearnerResult& r) {
  return Json{{"learner", r.learner},
              {"cluster", r.cluster},
              {"classification", classification_to_json(r.classification)},
              {"recommendation", recommendation_to_json(r.recommendation)}};
}

LearnerResult learner_result_from_json(const Json& j) {
  try {
    LearnerResult r;
    r.learner = j.at("learner").get<std::string>();
    r.cluster = j.at("cluster").get<Eigen::Index>();
    r.classification = classification_from_json(j.at("classification"));
    r.recommendation = recommendation_from_json(j.at("recommendation"));
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("learner result: ") + e.what());
  }
}

LearnerResult classify_learner(const fs::path& learner_doc, const fs::path& reference_map,
                               std::optional<fs::path> manifest_path, std::optional<fs::path> out) {
  const fs::path run_dir = manifest_path ? manifest_path->parent_path() : reference_map.parent_path();
  const auto manifest = manifest_from_json(read_json(manifest_path.value_or(run_dir / kManifestFile)));
  const auto& cfg = manifest.config;
  auto artifact = [&](std::string_view stage) {
    for (const auto& s : manifest.stages) {
      if (s.stage == stage) return run_dir / s.file;
    }
    throw Error(ErrorCode::ParseError, "manifest lacks stage '" + std::string(stage) + "'");
  };

  const auto stops = stop_words_for(cfg);
  const auto lexicon = lexicon_for(cfg);
  const RawDocument learner{learner_doc.stem().string(), read_file(learner_doc)};

  const auto reference = concept_map_from_json(read_json(reference_map));
  const auto learner_map = concept_map_from_text({learner}, cfg, stops, lexicon);

  LearnerResult result;
  result.learner = learner.id;
  result.classification.similarity = map_similarity(learner_map, reference).value;
  result.classification.assignment = classify(result.classification.similarity);

  // Fold the learner's TF-IDF vector over the reference vocabulary into the
  // latent space and take the nearest cluster centroid.
  const auto matrix = matrix_from_json(read_json(artifact("term-matrix")));
  const auto latent = latent_from_json(read_json(artifact("latent-semantics")));
  const auto clusters = clusters_from_json(read_json(artifact("clustering")));
  const auto idf = inverse_document_frequency(matrix, cfg.idf_smoothing);
  Eigen::VectorXd column = Eigen::VectorXd::Zero(matrix.num_terms());
  double total = 0.0;
  for (const auto& tok : preprocess(learner, stops, lexicon)) {
    if (!cfg.concept_pos.count(tok.pos)) continue;
    total += 1.0;
    if (auto t = matrix.index.find(tok.surface)) column[*t] += 1.0;
  }
  if (total > 0.0) column = (column / total).cwiseProduct(idf.values);
  const Eigen::VectorXd point = fold_in(truncate(latent.model, latent.k), column);
  Eigen::Index best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < clusters.model.centroids.rows(); ++c) {
    const double d = (clusters.model.centroids.row(c).transpose() - point).squaredNorm();
    if (d < best_d) best_d = d, best = c;
  }
  result.cluster = best;
  result.recommendation = recommend(result.classification.assignment, result.classification.similarity,
                                    clusters.labels, best);

  const fs::path target = out.value_or(run_dir / kClassificationDir / (learner.id + ".json"));
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  write_file(partial_path(target), render(learner_result_to_json(result)));
  fs::rename(partial_path(target), target);
  return result;
}

// ---------------------------------------------------------------------------
// Reports

std::optional<ReportKind> parse_report_kind(std::string_view name) {
  if (name == "clusters") return ReportKind::Clusters;
  if (name == "levels") return ReportKind::Levels;
  if (name == "timings") return ReportKind::Timings;
  return std::nullopt;
}

namespace {

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void report(const fs::path& manifest_path, ReportKind kind, std::ostream& out) {
  const auto manifest = manifest_from_json(read_json(manifest_path));
  const auto run_dir = manifest_path.parent_path();
  auto artifact = [&](std::string_view stage) {
    for (const auto& s : manifest.stages) {
      if (s.stage == stage) return run_dir / s.file;
    }
    throw Error(ErrorCode::ParseError, "manifest lacks stage '" + std::string(stage) + "'");
  };

  switch (kind) {
    case ReportKind::Clusters: {
      const auto clusters = clusters_from_json(read_json(artifact("clustering")));
      const auto weights = weights_from_json(read_json(artifact("weighting")));
      const auto reference = concept_map_from_json(read_json(artifact("similarity")));
      const auto sims = document_similarities(weights, reference);
      const auto k = static_cast<std::size_t>(clusters.model.k);
      std::vector<std::size_t> size(k, 0);
      std::vector<double> sum(k, 0.0);
      for (std::size_t d = 0; d < clusters.model.assignments.size(); ++d) {
        const auto c = static_cast<std::size_t>(clusters.model.assignments[d]);
        ++size[c];
        sum[c] += sims.at(d);
      }
      out << "cluster,size,label,mean_similarity\n";
      for (std::size_t c = 0; c < k; ++c) {
        const auto label = clusters.labels.count(static_cast<Eigen::Index>(c))
                               ? clusters.labels.at(static_cast<Eigen::Index>(c))
                               : std::string();
        out << c << ',' << size[c] << ',' << label << ','
            << fmt6(size[c] ? sum[c] / static_cast<double>(size[c]) : 0.0) << '\n';
      }
      break;
    }
    case ReportKind::Levels: {
      std::vector<LearnerResult> rows;
      const auto dir = run_dir / kClassificationDir;
      if (fs::is_directory(dir)) {
        for (const auto& entry : fs::directory_iterator(dir)) {
          if (entry.path().extension() == ".json") rows.push_back(learner_result_from_json(read_json(entry.path())));
        }
      }
      std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.learner < b.learner; });
      out << "learner,similarity,level,support,action,cluster\n";
      for (const auto& r : rows) {
        out << r.learner << ',' << fmt6(r.classification.similarity) << ','
            << to_string(r.classification.assignment.level) << ',' << fmt6(r.classification.assignment.support)
            << ',' << to_string(r.recommendation.action) << ',' << r.cluster << '\n';
      }
      break;
    }
    case ReportKind::Timings: {
      std::vector<std::pair<std::string, double>> rows;
      for (const auto& s : manifest.stages) rows.emplace_back(s.stage, s.millis);
      std::sort(rows.begin(), rows.end());
      out << "stage,milliseconds\n";
      for (const auto& [stage, ms] : rows) out << stage << ',' << fmt6(ms) << '\n';
      break;
    }
  }
}

}  // namespace elearn
