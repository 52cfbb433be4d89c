#include <doctest.h>

#include <random>

#include "elearn/error.hpp"
#include "elearn/similarity.hpp"
#include "oracles.hpp"

using namespace elearn;

TEST_CASE("jaccard on sets") {
  CHECK(jaccard_sets({"x", "y"}, {"x", "y"}).value == 1.0);
  CHECK(jaccard_sets({"a"}, {"b"}).value == 0.0);
  const auto s = jaccard_sets({"a", "b", "c"}, {"b", "c", "d"});
  CHECK(s.value == 0.5);
  CHECK(s.n11 == 2);
  CHECK(s.n10 == 1);
  CHECK(s.n01 == 1);
  CHECK(jaccard_sets({}, {"a"}).value == 0.0);
  try {
    jaccard_sets({}, {});
    FAIL("expected UndefinedSimilarity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UndefinedSimilarity);
  }
}

TEST_CASE("jaccard on presence vectors") {
  const std::vector<int> a{1, 1, 0}, b{1, 1, 0};
  CHECK(jaccard_binary_vectors(a, b).value == 1.0);
  CHECK(jaccard_binary_vectors(std::vector<int>{1, 0}, std::vector<int>{0, 1}).value == 0.0);
  const auto s = jaccard_binary_vectors(std::vector<int>{1, 1, 0, 1}, std::vector<int>{0, 1, 1, 1});
  CHECK(s.n11 == 2);
  CHECK(s.n10 == 1);
  CHECK(s.n01 == 1);
  CHECK(s.value == 0.5);
  CHECK_THROWS_AS(jaccard_binary_vectors(std::vector<int>{1}, std::vector<int>{1, 0}), Error);
  CHECK_THROWS_AS(jaccard_binary_vectors(std::vector<int>{0, 0}, std::vector<int>{0, 0}), Error);
}

TEST_CASE("adding a shared element never lowers the score") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 500; ++trial) {
    ConceptSet a, b;
    for (int i = 0; i < 10; ++i) {
      if (gen() % 2) a.insert("c" + std::to_string(i));
      if (gen() % 2) b.insert("c" + std::to_string(i));
    }
    if (a.empty() && b.empty()) continue;
    const double before = jaccard_sets(a, b).value;
    const auto extra = "c" + std::to_string(gen() % 14);
    a.insert(extra);
    b.insert(extra);
    CHECK(jaccard_sets(a, b).value >= before);
    CHECK(jaccard_sets(a, b).value == doctest::Approx(oracle::jaccard(a, b)));
  }
}

namespace {

WeightMatrix weights_from(const std::vector<std::string>& terms, const Eigen::MatrixXd& dense) {
  WeightMatrix w;
  w.index = TermIndex(terms);
  for (Index d = 0; d < dense.cols(); ++d) w.doc_ids.push_back("s#" + std::to_string(d));
  w.weights = dense.sparseView();
  return w;
}

}  // namespace

TEST_CASE("concept map relations are document co-occurrence Jaccard") {
  Eigen::MatrixXd dense(4, 3);
  // s in {0,1}, t in {0,1}, u in {1,2}, v in {2}
  dense << 0.5, 0.2, 0.0,  //
      0.5, 0.2, 0.0,       //
      0.0, 0.3, 0.1,       //
      0.0, 0.0, 0.7;
  const auto w = weights_from({"s", "t", "u", "v"}, dense);
  // Row order follows the sorted index: s, t, u, v.
  const auto map = build_concept_map(TermIndex({"s", "t", "u", "v"}), w);
  CHECK(map.concepts == ConceptSet{"s", "t", "u", "v"});
  CHECK(map.relations.at({"s", "t"}) == 1.0);
  CHECK(map.relations.at({"u", "v"}) == 0.5);
  CHECK(map.relations.at({"s", "u"}) == doctest::Approx(1.0 / 3.0));
  CHECK(map.relations.at({"t", "u"}) == doctest::Approx(1.0 / 3.0));
  CHECK(map.relations.count({"s", "v"}) == 0);
  CHECK(map.relations.count({"t", "v"}) == 0);
  for (const auto& [pair, weight] : map.relations) {
    CHECK(pair.first < pair.second);
    CHECK(weight > 0.0);
    CHECK(weight <= 1.0);
  }

  const auto subset = build_concept_map(TermIndex({"s", "v"}), w);
  CHECK(subset.relations.empty());
  CHECK(build_concept_map(TermIndex(), w).concepts.empty());
  CHECK_THROWS_AS(build_concept_map(TermIndex({"nope"}), w), Error);
}

TEST_CASE("map similarity uses concept sets") {
  ConceptMap learner, reference;
  learner.concepts = {"a", "b", "c", "d"};
  reference.concepts = {"a", "b", "c", "e", "f"};
  reference.add_relation("a", "b", 0.4);
  CHECK(map_similarity(learner, reference).value == 0.5);
  CHECK(map_similarity(reference, reference).value == 1.0);

  ConceptMap sub, super;
  sub.concepts = {"a", "b", "c"};
  super.concepts = {"a", "b", "c", "d"};
  CHECK(map_similarity(sub, super).value == 0.75);
  CHECK_THROWS_AS(map_similarity(ConceptMap{}, ConceptMap{}), Error);
}

TEST_CASE("concept map relation invariants") {
  ConceptMap m;
  m.concepts = {"a", "b"};
  CHECK_THROWS_AS(m.add_relation("a", "a", 0.5), Error);
  CHECK_THROWS_AS(m.add_relation("a", "z", 0.5), Error);
  CHECK_THROWS_AS(m.add_relation("a", "b", 1.5), Error);
  m.add_relation("b", "a", 0.25);
  CHECK(m.relations.at({"a", "b"}) == 0.25);
}
