#include "elearn/similarity.hpp"

#include <vector>

#include "elearn/error.hpp"

namespace elearn {

namespace {

SimilarityScore from_counts(std::size_t n11, std::size_t n10, std::size_t n01) {
  const std::size_t denom = n11 + n10 + n01;
  if (denom == 0) throw Error(ErrorCode::UndefinedSimilarity, "both concept sets are empty");
  return {static_cast<double>(n11) / static_cast<double>(denom), n11, n10, n01};
}

}  // namespace

void ConceptMap::add_relation(const std::string& a, const std::string& b, double weight) {
  if (a == b) throw Error(ErrorCode::InvalidArgument, "self relation on '" + a + "'");
  if (!concepts.count(a) || !concepts.count(b)) {
    throw Error(ErrorCode::InvalidArgument, "relation endpoint is not a concept");
  }
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "relation weight outside [0,1]");
  }
  relations[a < b ? std::pair{a, b} : std::pair{b, a}] = weight;
}

SimilarityScore jaccard_sets(const ConceptSet& a, const ConceptSet& b) {
  std::size_t both = 0;
  for (const auto& x : a) both += b.count(x);
  return from_counts(both, a.size() - both, b.size() - both);
}

SimilarityScore jaccard_binary_vectors(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::ShapeMismatch, "presence vectors have lengths " + std::to_string(a.size()) +
                                              " and " + std::to_string(b.size()));
  }
  std::size_t n11 = 0, n10 = 0, n01 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool x = a[i] != 0;
    const bool y = b[i] != 0;
    n11 += x && y;
    n10 += x && !y;
    n01 += !x && y;
  }
  return from_counts(n11, n10, n01);
}

ConceptMap build_concept_map(const TermIndex& retained, const WeightMatrix& weights) {
  ConceptMap map;
  std::vector<ConceptSet> doc_sets;
  doc_sets.reserve(static_cast<std::size_t>(retained.size()));
  for (const auto& term : retained.terms()) {
    const auto row = weights.index.find(term);
    if (!row) throw Error(ErrorCode::InvalidArgument, "concept '" + term + "' not in weight vocabulary");
    ConceptSet docs;
    for (WeightStorage::InnerIterator it(weights.weights, *row); it; ++it) {
      if (it.value() > 0.0) docs.insert(weights.doc_ids[static_cast<std::size_t>(it.col())]);
    }
    doc_sets.push_back(std::move(docs));
    map.concepts.insert(term);
  }
  const auto& terms = retained.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (doc_sets[i].empty() && doc_sets[j].empty()) continue;
      const double w = jaccard_sets(doc_sets[i], doc_sets[j]).value;
      if (w > 0.0) map.add_relation(terms[i], terms[j], w);
    }
  }
  return map;
}

SimilarityScore map_similarity(const ConceptMap& learner, const ConceptMap& reference) {
  return jaccard_sets(learner.concepts, reference.concepts);
}

}  // namespace elearn
