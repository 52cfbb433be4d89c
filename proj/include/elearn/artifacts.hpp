#pragma once

#include <filesystem>
#include "json.hpp"
#include <string>
#include <vector>

#include "elearn/clustering.hpp"
#include "elearn/fuzzy.hpp"
#include "elearn/latent.hpp"
#include "elearn/recommend.hpp"
#include "elearn/similarity.hpp"
#include "elearn/term_matrix.hpp"
#include "elearn/text.hpp"
#include "elearn/weighting.hpp"

// JSON codecs for every stage artifact. Objects serialize with sorted keys;
// doubles use the shortest representation that reads back bit-exact.

namespace elearn {

using Json = nlohmann::json;

struct TaggedDocument {
  std::string id;
  std::vector<Token> tokens;

  friend bool operator==(const TaggedDocument&, const TaggedDocument&) = default;
};

struct LatentArtifact {
  Eigen::Index k = 0;
  LatentModel<double> model;

  friend bool operator==(const LatentArtifact&, const LatentArtifact&) = default;
};

struct ClusterArtifact {
  ClusterModel<double> model;
  DifficultyLabels labels;

  friend bool operator==(const ClusterArtifact& a, const ClusterArtifact& b) {
    return a.model == b.model && a.labels == b.labels;
  }
};

struct Classification {
  double similarity = 0.0;
  LevelAssignment assignment;

  friend bool operator==(const Classification&, const Classification&) = default;
};

Json tokens_to_json(const std::vector<TaggedDocument>& docs);
std::vector<TaggedDocument> tokens_from_json(const Json& j);

Json matrix_to_json(const TermDocumentMatrix& m);
TermDocumentMatrix matrix_from_json(const Json& j);

Json weights_to_json(const WeightMatrix& w);
WeightMatrix weights_from_json(const Json& j);

Json latent_to_json(const LatentArtifact& a);
LatentArtifact latent_from_json(const Json& j);

Json concept_map_to_json(const ConceptMap& m);
ConceptMap concept_map_from_json(const Json& j);

Json clusters_to_json(const ClusterArtifact& a);
ClusterArtifact clusters_from_json(const Json& j);

Json classification_to_json(const Classification& c);
Classification classification_from_json(const Json& j);

Json recommendation_to_json(const Recommendation& r);
Recommendation recommendation_from_json(const Json& j);

/// Pretty-printed JSON with a trailing newline.
std::string render(const Json& j);
Json read_json(const std::filesystem::path& path);

}  // namespace elearn
