#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>

#include "elearn/weighting.hpp"

namespace elearn {

using ConceptSet = std::set<std::string>;

/// Jaccard score with its presence/absence contingency counts.
struct SimilarityScore {
  double value = 0.0;
  std::size_t n11 = 0;  // in both
  std::size_t n10 = 0;  // only in the first
  std::size_t n01 = 0;  // only in the second

  friend bool operator==(const SimilarityScore&, const SimilarityScore&) = default;
};

/// Concepts plus weighted undirected relations. Relation keys are ordered
/// pairs (s, t) with s < t; both endpoints are concepts.
struct ConceptMap {
  ConceptSet concepts;
  std::map<std::pair<std::string, std::string>, double> relations;

  void add_relation(const std::string& a, const std::string& b, double weight);

  friend bool operator==(const ConceptMap&, const ConceptMap&) = default;
};

/// Throws UndefinedSimilarity when both sets are empty.
SimilarityScore jaccard_sets(const ConceptSet& a, const ConceptSet& b);

/// Positional contingency form. Non-zero entries count as present.
SimilarityScore jaccard_binary_vectors(std::span<const int> a, std::span<const int> b);

/// Concepts are the retained terms; an edge joins two concepts whose sets of
/// positively weighted documents overlap, weighted by their Jaccard score.
ConceptMap build_concept_map(const TermIndex& retained, const WeightMatrix& weights);

/// Jaccard over concept sets only; relations do not enter the score.
SimilarityScore map_similarity(const ConceptMap& learner, const ConceptMap& reference);

}  // namespace elearn
