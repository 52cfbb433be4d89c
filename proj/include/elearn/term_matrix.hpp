#pragma once

#include <Eigen/SparseCore>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "elearn/text.hpp"

namespace elearn {

using Index = Eigen::Index;

struct PseudoDocumentId {
  std::string source;
  std::size_t window = 0;

  /// `source#window`, the form used in artifacts.
  std::string str() const { return source + "#" + std::to_string(window); }
  friend auto operator<=>(const PseudoDocumentId&, const PseudoDocumentId&) = default;
};

struct PseudoDocument {
  PseudoDocumentId id;
  std::vector<Token> tokens;
};

/// Ascending, duplicate-free vocabulary with its inverse lookup.
class TermIndex {
 public:
  TermIndex() = default;
  /// Sorts and de-duplicates.
  explicit TermIndex(std::vector<std::string> terms);

  const std::vector<std::string>& terms() const { return terms_; }
  const std::string& operator[](Index i) const { return terms_[static_cast<std::size_t>(i)]; }
  Index size() const { return static_cast<Index>(terms_.size()); }
  bool empty() const { return terms_.empty(); }
  std::optional<Index> find(const std::string& term) const;

  friend bool operator==(const TermIndex& a, const TermIndex& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, Index> lookup_;
};

using CountMatrix = Eigen::SparseMatrix<int, Eigen::RowMajor>;

/// Raw term counts, terms in rows and pseudo-documents in columns.
struct TermDocumentMatrix {
  TermIndex index;
  std::vector<std::string> doc_ids;
  CountMatrix counts;

  Index num_terms() const { return index.size(); }
  Index num_docs() const { return static_cast<Index>(doc_ids.size()); }
  /// Column totals (tokens per document after the tag filter).
  Eigen::VectorXi doc_totals() const;
  /// Number of documents holding each term.
  Eigen::VectorXi document_frequency() const;
};

bool operator==(const TermDocumentMatrix& a, const TermDocumentMatrix& b);

constexpr std::size_t kDefaultWindowSize = 8;

/// Splits one source document's tokens into consecutive non-overlapping
/// windows. Every window but the last holds exactly `window_size` tokens.
std::vector<PseudoDocument> segment(const std::string& source_id, const std::vector<Token>& tokens,
                                    std::size_t window_size = kDefaultWindowSize);

/// Counts tokens whose tag is in `concept_pos`. Throws EmptyVocabulary when
/// nothing survives the filter.
TermDocumentMatrix build_matrix(const std::vector<PseudoDocument>& docs,
                                const std::set<PosTag>& concept_pos = {PosTag::Noun});

}  // namespace elearn
