#include "elearn/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "elearn/error.hpp"

namespace elearn {

std::string_view to_string(IdfSmoothing s) {
  return s == IdfSmoothing::None ? "none" : "add_one_documents";
}

std::optional<IdfSmoothing> parse_idf_smoothing(std::string_view name) {
  if (name == "none") return IdfSmoothing::None;
  if (name == "add_one_documents") return IdfSmoothing::AddOneDocuments;
  return std::nullopt;
}

Eigen::VectorXd WeightMatrix::max_weights() const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(num_terms());
  for (Index t = 0; t < weights.outerSize(); ++t) {
    for (WeightStorage::InnerIterator it(weights, t); it; ++it) out[t] = std::max(out[t], it.value());
  }
  return out;
}

bool operator==(const WeightMatrix& a, const WeightMatrix& b) {
  if (!(a.index == b.index) || a.doc_ids != b.doc_ids) return false;
  if (a.weights.rows() != b.weights.rows() || a.weights.cols() != b.weights.cols()) return false;
  if (a.weights.nonZeros() != b.weights.nonZeros()) return false;
  return a.dense() == b.dense();
}

double idf_value(Index num_docs, Index df, IdfSmoothing smoothing) {
  if (num_docs < 1) throw Error(ErrorCode::InvalidArgument, "corpus has no documents");
  const double denom = static_cast<double>(df) + (smoothing == IdfSmoothing::AddOneDocuments ? 1.0 : 0.0);
  if (denom <= 0.0) throw Error(ErrorCode::DivisionByZero, "term occurs in no document");
  return std::max(0.0, std::log(static_cast<double>(num_docs) / denom));
}

Eigen::SparseVector<double> term_frequency(const TermDocumentMatrix& matrix, Index doc) {
  if (doc < 0 || doc >= matrix.num_docs()) {
    throw Error(ErrorCode::OutOfRange, "document ordinal " + std::to_string(doc));
  }
  // Ascending term order fixes the summation order.
  double total = 0.0;
  for (Index t = 0; t < matrix.counts.outerSize(); ++t) total += matrix.counts.coeff(t, doc);
  if (total == 0.0) {
    throw Error(ErrorCode::EmptyDocument, "document '" + matrix.doc_ids[static_cast<std::size_t>(doc)] +
                                              "' has no counted terms");
  }
  Eigen::SparseVector<double> tf(matrix.num_terms());
  for (Index t = 0; t < matrix.counts.outerSize(); ++t) {
    const int c = matrix.counts.coeff(t, doc);
    if (c != 0) tf.insert(t) = c / total;
  }
  return tf;
}

IdfVector inverse_document_frequency(const TermDocumentMatrix& matrix, IdfSmoothing smoothing) {
  IdfVector idf;
  idf.smoothing = smoothing;
  const Eigen::VectorXi df = matrix.document_frequency();
  idf.values.resize(df.size());
  for (Index t = 0; t < df.size(); ++t) idf.values[t] = idf_value(matrix.num_docs(), df[t], smoothing);
  return idf;
}

WeightMatrix tf_idf(const TermDocumentMatrix& matrix, const IdfVector& idf) {
  if (idf.values.size() != matrix.num_terms()) {
    throw Error(ErrorCode::ShapeMismatch, "idf has " + std::to_string(idf.values.size()) +
                                              " terms, matrix has " + std::to_string(matrix.num_terms()));
  }
  WeightMatrix out;
  out.index = matrix.index;
  out.doc_ids = matrix.doc_ids;
  const Eigen::VectorXi totals = matrix.doc_totals();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(matrix.counts.nonZeros()));
  for (Index t = 0; t < matrix.counts.outerSize(); ++t) {
    for (CountMatrix::InnerIterator it(matrix.counts, t); it; ++it) {
      const double tf = static_cast<double>(it.value()) / totals[it.col()];
      const double w = tf * idf.values[t];
      if (w != 0.0) triplets.emplace_back(t, it.col(), w);
    }
  }
  out.weights.resize(matrix.num_terms(), matrix.num_docs());
  out.weights.setFromTriplets(triplets.begin(), triplets.end());
  out.weights.makeCompressed();
  return out;
}

TermIndex filter_concepts(const WeightMatrix& weights, double threshold,
                          std::optional<std::size_t> top_n) {
  if (threshold < 0.0) throw Error(ErrorCode::InvalidArgument, "threshold must be >= 0");
  if (top_n && *top_n == 0) throw Error(ErrorCode::InvalidArgument, "top_n must be positive");
  const Eigen::VectorXd maxw = weights.max_weights();
  std::vector<Index> keep;
  for (Index t = 0; t < maxw.size(); ++t) {
    if (maxw[t] > threshold) keep.push_back(t);
  }
  if (top_n && keep.size() > *top_n) {
    // Index order is lexicographic, so a stable sort breaks ties correctly.
    std::stable_sort(keep.begin(), keep.end(), [&](Index a, Index b) { return maxw[a] > maxw[b]; });
    keep.resize(*top_n);
  }
  std::vector<std::string> terms;
  terms.reserve(keep.size());
  for (auto t : keep) terms.push_back(weights.index[t]);
  return TermIndex(std::move(terms));
}

}  // namespace elearn
