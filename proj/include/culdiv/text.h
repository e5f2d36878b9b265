#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace culdiv {

// Universal-dependencies style coarse tags. Only the first five survive
// filtering.
enum class Pos {
  Noun,
  Verb,
  Adjective,
  Adverb,
  Number,
  Determiner,
  Pronoun,
  Adposition,
  Conjunction,
  Auxiliary,
  Particle,
  Interjection,
  Other,
};

std::string_view to_string(Pos pos);

// True for noun, verb, adjective, adverb and number.
bool is_content(Pos pos);

// Lowercases ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic letters.
std::string to_lower(std::string_view utf8);

// Splits on non-alphanumeric code points. Letter runs and digit runs become
// separate tokens ("350f" -> "350", "f"); vulgar fractions are one token each.
// Output is lowercase.
std::vector<std::string> tokenize(std::string_view text);

// Splits on '!', '?', newline, and '.' unless the period sits between two
// digits. Empty sentences are dropped.
std::vector<std::string_view> split_sentences(std::string_view text);

struct TaggedToken {
  std::string text;
  std::string lemma;
  Pos pos = Pos::Other;
};

class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual std::vector<TaggedToken> tag(std::span<const std::string> tokens) const = 0;
};

// Context-free English tagger: closed-class and irregular-form lexicons
// followed by suffix heuristics. Lemmas are fixed points of the tagger, which
// makes preprocessing idempotent.
class RuleTagger final : public PosTagger {
 public:
  RuleTagger();

  std::vector<TaggedToken> tag(std::span<const std::string> tokens) const override;
  TaggedToken tag_word(std::string_view lowercase_word) const;

 private:
  struct Analysis {
    Pos pos;
    std::string lemma;
  };
  Analysis step(const std::string& word) const;
  std::string verb_stem(std::string stem) const;

  std::unordered_map<std::string, Pos> closed_;
  std::unordered_map<std::string, Analysis> irregular_;
  std::unordered_set<std::string> verbs_;
  std::unordered_set<std::string> adverbs_;
  std::unordered_set<std::string> adjectives_;
  std::unordered_set<std::string> nouns_;
};

const RuleTagger& default_tagger();

struct TokenStream {
  enum class Stage { RawText, Filtered };

  std::vector<std::string> tokens;
  // Exclusive end offset of each sentence; the last equals tokens.size().
  std::vector<std::size_t> sentence_ends;
  std::string source_recipe;
  Stage stage = Stage::Filtered;

  bool empty() const { return tokens.empty(); }
  std::size_t size() const { return tokens.size(); }
  std::vector<std::span<const std::string>> sentences() const;

  // Appends a sentence; empty sentences are ignored.
  void push_sentence(std::span<const std::string> sentence);
  void append(const TokenStream& other);
};

TokenStream preprocess(std::string_view text, const PosTagger& tagger,
                       std::string source_recipe = {});

// Sentence-segmented tokens without tagging (RawText stage).
TokenStream raw_stream(std::string_view text, std::string source_recipe = {});

// Tokens joined by spaces, sentences terminated by " ." so that
// preprocess(detokenize(s)) reproduces s.
std::string detokenize(const TokenStream& stream);

}  // namespace culdiv
