#include "elearn/term_matrix.hpp"

#include <algorithm>

#include "elearn/error.hpp"

namespace elearn {

TermIndex::TermIndex(std::vector<std::string> terms) : terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end());
  terms_.erase(std::unique(terms_.begin(), terms_.end()), terms_.end());
  lookup_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) lookup_.emplace(terms_[i], static_cast<Index>(i));
}

std::optional<Index> TermIndex::find(const std::string& term) const {
  auto it = lookup_.find(term);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Eigen::VectorXi TermDocumentMatrix::doc_totals() const {
  Eigen::VectorXi totals = Eigen::VectorXi::Zero(num_docs());
  for (Index t = 0; t < counts.outerSize(); ++t) {
    for (CountMatrix::InnerIterator it(counts, t); it; ++it) totals[it.col()] += it.value();
  }
  return totals;
}

Eigen::VectorXi TermDocumentMatrix::document_frequency() const {
  Eigen::VectorXi df(num_terms());
  for (Index t = 0; t < counts.outerSize(); ++t) {
    int n = 0;
    for (CountMatrix::InnerIterator it(counts, t); it; ++it) n += it.value() > 0 ? 1 : 0;
    df[t] = n;
  }
  return df;
}

bool operator==(const TermDocumentMatrix& a, const TermDocumentMatrix& b) {
  if (!(a.index == b.index) || a.doc_ids != b.doc_ids) return false;
  if (a.counts.rows() != b.counts.rows() || a.counts.cols() != b.counts.cols()) return false;
  if (a.counts.nonZeros() != b.counts.nonZeros()) return false;
  return Eigen::MatrixXi(a.counts) == Eigen::MatrixXi(b.counts);
}

std::vector<PseudoDocument> segment(const std::string& source_id, const std::vector<Token>& tokens,
                                    std::size_t window_size) {
  if (window_size == 0) throw Error(ErrorCode::InvalidArgument, "window_size must be >= 1");
  std::vector<PseudoDocument> windows;
  windows.reserve((tokens.size() + window_size - 1) / window_size);
  for (std::size_t start = 0; start < tokens.size(); start += window_size) {
    const auto end = std::min(tokens.size(), start + window_size);
    PseudoDocument doc;
    doc.id = {source_id, windows.size()};
    doc.tokens.assign(tokens.begin() + static_cast<std::ptrdiff_t>(start),
                      tokens.begin() + static_cast<std::ptrdiff_t>(end));
    windows.push_back(std::move(doc));
  }
  return windows;
}

TermDocumentMatrix build_matrix(const std::vector<PseudoDocument>& docs,
                                const std::set<PosTag>& concept_pos) {
  std::vector<std::string> vocabulary;
  for (const auto& doc : docs) {
    for (const auto& tok : doc.tokens) {
      if (concept_pos.count(tok.pos)) vocabulary.push_back(tok.surface);
    }
  }
  if (vocabulary.empty()) {
    throw Error(ErrorCode::EmptyVocabulary, "no token carries a concept part-of-speech tag");
  }

  TermDocumentMatrix m;
  m.index = TermIndex(std::move(vocabulary));
  m.doc_ids.reserve(docs.size());
  std::vector<Eigen::Triplet<int>> triplets;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    m.doc_ids.push_back(docs[d].id.str());
    for (const auto& tok : docs[d].tokens) {
      if (!concept_pos.count(tok.pos)) continue;
      triplets.emplace_back(*m.index.find(tok.surface), static_cast<Index>(d), 1);
    }
  }
  m.counts.resize(m.index.size(), static_cast<Index>(docs.size()));
  m.counts.setFromTriplets(triplets.begin(), triplets.end());
  m.counts.makeCompressed();
  return m;
}

}  // namespace elearn
