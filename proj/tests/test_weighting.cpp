#include <doctest.h>

#include <cmath>
#include <random>

#include "elearn/error.hpp"
#include "elearn/weighting.hpp"
#include "oracles.hpp"

using namespace elearn;

namespace {

TermDocumentMatrix matrix_of(const std::vector<oracle::Doc>& docs) {
  std::vector<PseudoDocument> pds;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    PseudoDocument pd{{"s", d}, {}};
    for (const auto& w : docs[d]) pd.tokens.push_back({w, PosTag::Noun, pd.tokens.size()});
    pds.push_back(std::move(pd));
  }
  return build_matrix(pds);
}

}  // namespace

TEST_CASE("term frequency normalizes by document length") {
  const auto m = matrix_of({{"w1", "w1", "w2", "w2", "w2"}});
  const auto tf = term_frequency(m, 0);
  CHECK(tf.coeff(0) == 0.4);
  CHECK(tf.coeff(1) == 0.6);

  CHECK(term_frequency(matrix_of({{"w1", "w1", "w1", "w1", "w1"}}), 0).coeff(0) == 1.0);

  const auto abc = term_frequency(matrix_of({{"a", "b", "c", "c"}}), 0);
  CHECK(abc.coeff(0) == 0.25);
  CHECK(abc.coeff(1) == 0.25);
  CHECK(abc.coeff(2) == 0.5);
}

TEST_CASE("term frequency of an empty document is an error") {
  // Second document holds only a verb, so its column is empty.
  PseudoDocument a{{"s", 0}, {{"x", PosTag::Noun, 0}}};
  PseudoDocument b{{"s", 1}, {{"go", PosTag::Verb, 0}}};
  const auto m = build_matrix({a, b});
  try {
    term_frequency(m, 1);
    FAIL("expected EmptyDocument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyDocument);
  }
}

TEST_CASE("idf matches the brute-force oracle") {
  const std::vector<oracle::Doc> docs{{"all", "one"}, {"all", "two"}, {"all", "two"}, {"all", "three"}};
  const auto m = matrix_of(docs);
  for (auto smoothing : {IdfSmoothing::None, IdfSmoothing::AddOneDocuments}) {
    const auto idf = inverse_document_frequency(m, smoothing);
    for (Index t = 0; t < m.num_terms(); ++t) {
      const double expected = oracle::brute_idf(docs, m.index[t], smoothing == IdfSmoothing::AddOneDocuments);
      CHECK(std::abs(idf.values[t] - expected) <= 1e-12);
      CHECK(idf.values[t] >= 0.0);
    }
  }
  const auto none = inverse_document_frequency(m, IdfSmoothing::None);
  CHECK(none.values[*m.index.find("all")] == 0.0);
  CHECK(std::abs(none.values[*m.index.find("one")] - 1.3862944) < 1e-7);
  const auto smoothed = inverse_document_frequency(m, IdfSmoothing::AddOneDocuments);
  CHECK(std::abs(smoothed.values[*m.index.find("one")] - 0.6931472) < 1e-7);
  // ln(4/5) < 0 clamps to zero.
  CHECK(smoothed.values[*m.index.find("all")] == 0.0);
}

TEST_CASE("idf guards a zero document frequency") {
  CHECK_THROWS_AS(idf_value(4, 0, IdfSmoothing::None), Error);
  CHECK(std::abs(idf_value(4, 0, IdfSmoothing::AddOneDocuments) - std::log(4.0)) < 1e-15);
}

TEST_CASE("idf decreases with document frequency") {
  for (Index n : {1, 2, 5, 17}) {
    for (auto smoothing : {IdfSmoothing::None, IdfSmoothing::AddOneDocuments}) {
      for (Index df = 1; df < n; ++df) {
        const double lo = idf_value(n, df, smoothing);
        const double hi = idf_value(n, df + 1, smoothing);
        if (lo > 0.0) {
          CHECK(lo > hi);
        } else {
          // Both clamped at zero.
          CHECK(hi == 0.0);
        }
      }
    }
  }
}

TEST_CASE("tf_idf multiplies and drops zeroed entries") {
  const std::vector<oracle::Doc> docs{{"a", "a", "c", "c", "c"}, {"c", "b"}, {"c"}, {"c"}};
  const auto m = matrix_of(docs);
  const auto w = tf_idf(m, inverse_document_frequency(m));
  // "c" appears everywhere and is filtered out entirely.
  CHECK(w.weights.coeff(*m.index.find("c"), 0) == 0.0);
  CHECK(w.weights.nonZeros() == 2);
  // tf 0.5 * ln 4
  CHECK(std::abs(w.weights.coeff(*m.index.find("b"), 1) - 0.6931472) < 1e-7);

  IdfVector short_idf;
  short_idf.values = Eigen::VectorXd::Zero(1);
  CHECK_THROWS_AS(tf_idf(m, short_idf), Error);

  const auto empty = tf_idf(TermDocumentMatrix{}, IdfVector{});
  CHECK(empty.weights.nonZeros() == 0);
  CHECK(empty.num_terms() == 0);
}

TEST_CASE("tf_idf agrees with the brute-force oracle and TF rows sum to one") {
  std::mt19937_64 gen(99);
  const std::vector<std::string> vocab{"t0", "t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8", "t9"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<oracle::Doc> docs(1 + gen() % 5);
    for (auto& d : docs) {
      for (std::size_t i = 0; i < 1 + gen() % 9; ++i) d.push_back(vocab[gen() % vocab.size()]);
    }
    const bool add_one = gen() % 2;
    const auto m = matrix_of(docs);
    const auto w = tf_idf(m, inverse_document_frequency(m, add_one ? IdfSmoothing::AddOneDocuments
                                                                     : IdfSmoothing::None));
    const auto expected = oracle::brute_tfidf(docs, add_one);
    const Eigen::MatrixXd dense = w.dense();
    for (Index t = 0; t < m.num_terms(); ++t) {
      for (Index d = 0; d < m.num_docs(); ++d) {
        const auto& row = expected.at(m.index[t]);
        const auto it = row.find(static_cast<std::size_t>(d));
        const double want = it == row.end() ? 0.0 : it->second;
        CHECK(std::abs(dense(t, d) - want) <= 1e-12);
        CHECK(dense(t, d) >= 0.0);
      }
    }
    for (Index d = 0; d < m.num_docs(); ++d) CHECK(std::abs(term_frequency(m, d).sum() - 1.0) <= 1e-12);
  }
}

TEST_CASE("filter_concepts keeps terms above the threshold") {
  const auto all_common = matrix_of({{"x", "y"}, {"x", "y"}});
  CHECK(filter_concepts(tf_idf(all_common, inverse_document_frequency(all_common))).empty());

  // a: tf 1 * ln 2 in doc 0; b: in both docs, idf 0.
  const auto m = matrix_of({{"a", "b"}, {"b"}});
  const auto w = tf_idf(m, inverse_document_frequency(m));
  CHECK(filter_concepts(w).terms() == std::vector<std::string>{"a"});
  CHECK(filter_concepts(w, 10.0).empty());
  CHECK_THROWS_AS(filter_concepts(w, -1.0), Error);
}

TEST_CASE("filter_concepts top_n breaks ties lexicographically") {
  const auto m = matrix_of({{"b"}, {"a"}, {"z"}, {"z"}});
  const auto w = tf_idf(m, inverse_document_frequency(m));
  // a and b tie at ln 4; z has ln 2.
  CHECK(filter_concepts(w, 0.0, 1).terms() == std::vector<std::string>{"a"});
  CHECK(filter_concepts(w, 0.0, 2).terms() == std::vector<std::string>{"a", "b"});
  CHECK(filter_concepts(w, 0.0, 9).size() == 3);
}
