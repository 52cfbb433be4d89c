#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <optional>
#include <string_view>

#include "elearn/term_matrix.hpp"

namespace elearn {

enum class IdfSmoothing { None, AddOneDocuments };

std::string_view to_string(IdfSmoothing s);
std::optional<IdfSmoothing> parse_idf_smoothing(std::string_view name);

using WeightStorage = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// TF-IDF weights; same shape and vocabulary as the count matrix. Entries
/// whose weight is zero are not stored.
struct WeightMatrix {
  TermIndex index;
  std::vector<std::string> doc_ids;
  WeightStorage weights;

  Index num_terms() const { return index.size(); }
  Index num_docs() const { return static_cast<Index>(doc_ids.size()); }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(weights); }
  /// Per-term maximum over documents.
  Eigen::VectorXd max_weights() const;
};

bool operator==(const WeightMatrix& a, const WeightMatrix& b);

struct IdfVector {
  Eigen::VectorXd values;
  IdfSmoothing smoothing = IdfSmoothing::None;
};

/// Natural-log IDF for a term seen in `df` of `num_docs` documents, clamped
/// at zero. With no smoothing a zero `df` raises DivisionByZero.
double idf_value(Index num_docs, Index df, IdfSmoothing smoothing);

/// count / column total. Throws EmptyDocument for an empty column.
Eigen::SparseVector<double> term_frequency(const TermDocumentMatrix& matrix, Index doc);

IdfVector inverse_document_frequency(const TermDocumentMatrix& matrix,
                                     IdfSmoothing smoothing = IdfSmoothing::None);

WeightMatrix tf_idf(const TermDocumentMatrix& matrix, const IdfVector& idf);

/// Keeps terms whose max weight is strictly above `threshold`; with `top_n`
/// only the heaviest n survive, ties going to the lexicographically smaller
/// term. An empty result is not an error.
TermIndex filter_concepts(const WeightMatrix& weights, double threshold = 0.0,
                          std::optional<std::size_t> top_n = std::nullopt);

}  // namespace elearn
