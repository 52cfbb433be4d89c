#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace elearn {

enum class PosTag { Noun, Verb, Adjective, Adverb, Other };

std::string_view to_string(PosTag tag);
std::optional<PosTag> parse_pos_tag(std::string_view name);

struct RawDocument {
  std::string id;
  std::string text;
};

struct Token {
  std::string surface;
  PosTag pos = PosTag::Noun;
  std::size_t position = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

class StopWordList {
 public:
  StopWordList() = default;
  explicit StopWordList(std::unordered_set<std::string> words);

  /// One word per line; blank lines and `#` comments are skipped.
  static StopWordList parse(std::string_view contents);
  static StopWordList load(const std::filesystem::path& path);
  /// The list bundled with the library (data/stopwords.txt).
  static const StopWordList& builtin();

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

class PosLexicon {
 public:
  PosLexicon() = default;

  /// Lines are `word<TAB>tag`. Blank lines and `#` comments are skipped.
  /// A repeated word or an unknown tag raises ParseError naming the line.
  static PosLexicon parse(std::string_view contents, std::string_view origin = "<lexicon>");
  static PosLexicon load(const std::filesystem::path& path);
  static const PosLexicon& builtin();

  void insert(std::string word, PosTag tag);
  std::optional<PosTag> find(std::string_view word) const;
  PosTag lookup(std::string_view word, PosTag fallback) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, PosTag> entries_;
};

/// Validates UTF-8 and splits into lowercase words: maximal runs of ASCII
/// letters, keeping an apostrophe or hyphen only when letters sit on both
/// sides. Everything else separates words.
std::vector<std::string> tokenize(const RawDocument& doc);
std::vector<std::string> tokenize(std::string_view text);

bool is_valid_utf8(std::string_view bytes);

std::vector<std::string> remove_stop_words(const std::vector<std::string>& words,
                                           const StopWordList& stops);

std::vector<Token> pos_tag(const std::vector<std::string>& words, const PosLexicon& lexicon,
                           PosTag fallback = PosTag::Noun);

/// tokenize -> remove_stop_words -> pos_tag.
std::vector<Token> preprocess(const RawDocument& doc, const StopWordList& stops,
                              const PosLexicon& lexicon, PosTag fallback = PosTag::Noun);

}  // namespace elearn
