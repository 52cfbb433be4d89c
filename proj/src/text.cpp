#include "elearn/text.hpp"

#include <fstream>
#include <sstream>

#include "builtin_data.hpp"
#include "elearn/error.hpp"

namespace elearn {

namespace {

bool is_ascii_letter(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

char to_lower_ascii(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename Fn>
void for_each_line(std::string_view contents, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= contents.size()) {
    auto end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    ++line_no;
    fn(contents.substr(start, end - start), line_no);
    if (end == contents.size()) break;
    start = end + 1;
  }
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = to_lower_ascii(static_cast<unsigned char>(c));
  return out;
}

}  // namespace

std::string_view to_string(PosTag tag) {
  switch (tag) {
    case PosTag::Noun: return "noun";
    case PosTag::Verb: return "verb";
    case PosTag::Adjective: return "adjective";
    case PosTag::Adverb: return "adverb";
    case PosTag::Other: return "other";
  }
  return "other";
}

std::optional<PosTag> parse_pos_tag(std::string_view name) {
  for (auto tag : {PosTag::Noun, PosTag::Verb, PosTag::Adjective, PosTag::Adverb, PosTag::Other}) {
    if (to_string(tag) == name) return tag;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// StopWordList

StopWordList::StopWordList(std::unordered_set<std::string> words) : words_(std::move(words)) {}

StopWordList StopWordList::parse(std::string_view contents) {
  std::unordered_set<std::string> words;
  for_each_line(contents, [&](std::string_view line, std::size_t) {
    line = trim(line);
    if (line.empty() || line.front() == '#') return;
    words.insert(lowercase(line));
  });
  return StopWordList(std::move(words));
}

StopWordList StopWordList::load(const std::filesystem::path& path) { return parse(read_file(path)); }

const StopWordList& StopWordList::builtin() {
  static const StopWordList list = parse(data::kStopWords);
  return list;
}

bool StopWordList::contains(std::string_view word) const {
  return words_.find(std::string(word)) != words_.end();
}

// ---------------------------------------------------------------------------
// PosLexicon

PosLexicon PosLexicon::parse(std::string_view contents, std::string_view origin) {
  PosLexicon lexicon;
  for_each_line(contents, [&](std::string_view raw, std::size_t line_no) {
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') return;
    const auto where = std::string(origin) + ":" + std::to_string(line_no);
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw Error(ErrorCode::ParseError, where + ": expected word<TAB>tag");
    }
    const auto word = lowercase(trim(line.substr(0, tab)));
    const auto tag_name = trim(line.substr(tab + 1));
    if (word.empty()) throw Error(ErrorCode::ParseError, where + ": empty word");
    const auto tag = parse_pos_tag(tag_name);
    if (!tag) {
      throw Error(ErrorCode::ParseError, where + ": unknown tag '" + std::string(tag_name) + "'");
    }
    if (lexicon.find(word)) {
      throw Error(ErrorCode::ParseError, where + ": duplicate word '" + word + "'");
    }
    lexicon.insert(word, *tag);
  });
  return lexicon;
}

PosLexicon PosLexicon::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

const PosLexicon& PosLexicon::builtin() {
  static const PosLexicon lexicon = parse(data::kLexicon, "<builtin lexicon>");
  return lexicon;
}

void PosLexicon::insert(std::string word, PosTag tag) { entries_.emplace(std::move(word), tag); }

std::optional<PosTag> PosLexicon::find(std::string_view word) const {
  auto it = entries_.find(std::string(word));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

PosTag PosLexicon::lookup(std::string_view word, PosTag fallback) const {
  return find(word).value_or(fallback);
}

// ---------------------------------------------------------------------------
// Operations

bool is_valid_utf8(std::string_view bytes) {
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(bytes[i]);
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t extra = 0;
    char32_t cp = 0;
    char32_t min_cp = 0;
    if ((c & 0xE0) == 0xC0) {
      extra = 1, cp = c & 0x1F, min_cp = 0x80;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2, cp = c & 0x0F, min_cp = 0x800;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3, cp = c & 0x07, min_cp = 0x10000;
    } else {
      return false;
    }
    if (i + extra >= n) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
    i += extra + 1;
  }
  return true;
}

std::vector<std::string> tokenize(std::string_view text) {
  if (!is_valid_utf8(text)) throw Error(ErrorCode::InvalidEncoding, "input is not valid UTF-8");

  std::vector<std::string> words;
  std::string current;
  const std::size_t n = text.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (is_ascii_letter(c)) {
      current.push_back(to_lower_ascii(c));
      continue;
    }
    const bool joiner = (c == '\'' || c == '-');
    if (joiner && !current.empty() && i + 1 < n &&
        is_ascii_letter(static_cast<unsigned char>(text[i + 1]))) {
      current.push_back(static_cast<char>(c));
      continue;
    }
    if (!current.empty()) words.push_back(std::move(current));
    current.clear();
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::vector<std::string> tokenize(const RawDocument& doc) {
  try {
    return tokenize(std::string_view(doc.text));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InvalidEncoding) throw;
    throw Error(ErrorCode::InvalidEncoding, "document '" + doc.id + "' is not valid UTF-8");
  }
}

std::vector<std::string> remove_stop_words(const std::vector<std::string>& words,
                                           const StopWordList& stops) {
  std::vector<std::string> kept;
  kept.reserve(words.size());
  for (const auto& w : words) {
    if (!stops.contains(w)) kept.push_back(w);
  }
  return kept;
}

std::vector<Token> pos_tag(const std::vector<std::string>& words, const PosLexicon& lexicon,
                           PosTag fallback) {
  std::vector<Token> tokens;
  tokens.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    tokens.push_back(Token{words[i], lexicon.lookup(words[i], fallback), i});
  }
  return tokens;
}

std::vector<Token> preprocess(const RawDocument& doc, const StopWordList& stops,
                              const PosLexicon& lexicon, PosTag fallback) {
  return pos_tag(remove_stop_words(tokenize(doc), stops), lexicon, fallback);
}

}  // namespace elearn
