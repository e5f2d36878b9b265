#include "culdiv/text.h"

#include <array>
#include <cstdint>

namespace culdiv {
namespace {

// Decodes one code point starting at text[i]; invalid bytes decode as
// U+FFFD and consume one byte.
char32_t decode_utf8(std::string_view text, std::size_t& i) {
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(text[k]); };
  const unsigned char lead = byte(i);
  if (lead < 0x80) {
    ++i;
    return lead;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    len = 2;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
    cp = lead & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + len > text.size()) {
    ++i;
    return 0xFFFD;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const unsigned char b = byte(i + k);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

char32_t lower_cp(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp < 0x80) return cp;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x100 && cp <= 0x17F) {
    // Latin Extended-A alternates upper/lower, with an offset block.
    const bool odd_block = (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E);
    if (odd_block) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp == 0x130 || cp == 0x131 || cp == 0x138 || cp == 0x149 || cp == 0x17F) return cp;
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  return cp;
}

enum class CharClass { Letter, Digit, Fraction, Separator };

CharClass classify(char32_t cp) {
  if (cp < 0x80) {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return CharClass::Letter;
    if (cp >= '0' && cp <= '9') return CharClass::Digit;
    return CharClass::Separator;
  }
  if ((cp >= 0xBC && cp <= 0xBE) || (cp >= 0x2150 && cp <= 0x215F)) return CharClass::Fraction;
  if (cp == 0xAA || cp == 0xBA || cp == 0xB5) return CharClass::Letter;
  if (cp >= 0x80 && cp <= 0xBF) return CharClass::Separator;  // Latin-1 punctuation and symbols
  if (cp == 0xD7 || cp == 0xF7) return CharClass::Separator;
  if (cp >= 0x2000 && cp <= 0x2BFF) return CharClass::Separator;  // punctuation, arrows, symbols
  if (cp >= 0x3000 && cp <= 0x303F) return CharClass::Separator;
  if (cp >= 0xFE30 && cp <= 0xFE4F) return CharClass::Separator;
  if (cp >= 0xFF00 && cp <= 0xFF0F) return CharClass::Separator;
  if (cp == 0xFFFD || cp == 0xFEFF) return CharClass::Separator;
  if (cp >= 0x1F000) return CharClass::Separator;  // emoji and pictographs
  return CharClass::Letter;
}

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::Noun: return "NOUN";
    case Pos::Verb: return "VERB";
    case Pos::Adjective: return "ADJ";
    case Pos::Adverb: return "ADV";
    case Pos::Number: return "NUM";
    case Pos::Determiner: return "DET";
    case Pos::Pronoun: return "PRON";
    case Pos::Adposition: return "ADP";
    case Pos::Conjunction: return "CONJ";
    case Pos::Auxiliary: return "AUX";
    case Pos::Particle: return "PART";
    case Pos::Interjection: return "INTJ";
    case Pos::Other: return "X";
  }
  return "X";
}

bool is_content(Pos pos) {
  return pos == Pos::Noun || pos == Pos::Verb || pos == Pos::Adjective || pos == Pos::Adverb ||
         pos == Pos::Number;
}

std::string to_lower(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  while (i < utf8.size()) encode_utf8(lower_cp(decode_utf8(utf8, i)), out);
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  CharClass current_class = CharClass::Separator;
  const auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
    current_class = CharClass::Separator;
  };
  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t cp = decode_utf8(text, i);
    const CharClass cls = classify(cp);
    if (cls == CharClass::Separator) {
      flush();
      continue;
    }
    if (cls == CharClass::Fraction) {
      flush();
      encode_utf8(cp, current);
      flush();
      continue;
    }
    if (cls != current_class) flush();
    current_class = cls;
    encode_utf8(lower_cp(cp), current);
  }
  flush();
  return tokens;
}

std::vector<std::string_view> split_sentences(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  const auto emit = [&](std::size_t end) {
    std::string_view s = text.substr(start, end - start);
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos) {
      const auto last = s.find_last_not_of(" \t\r\n");
      out.push_back(s.substr(first, last - first + 1));
    }
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    bool boundary = c == '!' || c == '?' || c == '\n';
    if (c == '.') {
      const bool decimal = i > 0 && i + 1 < text.size() && is_ascii_digit(text[i - 1]) &&
                           is_ascii_digit(text[i + 1]);
      boundary = !decimal;
    }
    if (boundary) {
      emit(i);
      start = i + 1;
    }
  }
  emit(text.size());
  return out;
}

// ---------------------------------------------------------------------------
// RuleTagger

namespace {

constexpr std::array kDeterminers = {
    "the", "a", "an", "this", "that", "these", "those", "each", "every", "some", "any",
    "no", "all", "both", "either", "neither", "another", "such", "what", "which",
    "whose", "much", "many", "more", "most", "few", "several", "enough", "other",
    "whatever", "whichever", "less", "least"};
constexpr std::array kPronouns = {
    "i", "me", "my", "mine", "myself", "you", "your", "yours", "yourself", "yourselves",
    "he", "him", "his", "himself", "she", "her", "hers", "herself", "it", "its", "itself",
    "we", "us", "our", "ours", "ourselves", "they", "them", "their", "theirs",
    "themselves", "who", "whom", "someone", "something", "anything", "everything",
    "nothing", "everyone", "anyone", "nobody", "somebody", "everybody", "others",
    "oneself", "whoever"};
constexpr std::array kAdpositions = {
    "in", "on", "at", "by", "for", "with", "without", "about", "against", "between",
    "into", "through", "during", "before", "after", "above", "below", "to", "from",
    "up", "down", "over", "under", "of", "off", "out", "onto", "upon", "within",
    "across", "along", "around", "behind", "beside", "besides", "beyond", "near",
    "per", "than", "toward", "towards", "until", "till", "via", "inside", "outside",
    "throughout", "underneath", "among", "amongst", "atop", "alongside", "except", "like"};
constexpr std::array kConjunctions = {
    "and", "or", "but", "nor", "if", "while", "because", "although", "though",
    "unless", "whether", "as", "since", "whereas", "whilst", "plus", "either"};
constexpr std::array kAuxiliaries = {
    "be", "is", "am", "are", "was", "were", "been", "being", "have", "has", "had",
    "having", "do", "does", "did", "will", "would", "shall", "should", "can", "could",
    "may", "might", "must", "ought"};
constexpr std::array kParticles = {
    "not", "s", "t", "d", "ll", "m", "re", "ve", "don", "doesn", "didn", "isn", "aren",
    "wasn", "weren", "won", "wouldn", "shouldn", "couldn", "hasn", "haven", "hadn",
    "cannot", "o", "e", "g", "eg", "ie", "etc"};
constexpr std::array kInterjections = {"oh", "yes", "ok", "okay", "please", "voila", "wow", "hey"};

constexpr std::array kNumbers = {
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
    "eleven", "twelve", "fifteen", "twenty", "thirty", "forty", "fifty", "sixty",
    "hundred", "thousand", "zero"};

constexpr std::array kAdverbs = {
    "very", "too", "also", "just", "then", "now", "here", "there", "again", "well",
    "still", "soon", "always", "never", "often", "only", "even", "already", "almost",
    "together", "away", "back", "instead", "later", "once", "twice", "meanwhile",
    "otherwise", "however", "thus", "therefore", "else", "far", "rather", "quite",
    "so", "yet", "aside", "ahead", "overnight", "apart", "first", "next", "finally",
    "sometimes", "maybe", "perhaps", "long", "forward", "afterwards", "beforehand"};

constexpr std::array kAdjectives = {
    "hot", "cold", "warm", "large", "small", "big", "little", "medium", "fresh", "good",
    "best", "better", "high", "low", "soft", "hard", "thick", "thin", "golden", "brown",
    "red", "green", "white", "black", "yellow", "sweet", "sour", "tender", "smooth",
    "dry", "wet", "whole", "remaining", "light", "dark", "deep", "shallow", "clean",
    "raw", "ripe", "firm", "crisp", "fine", "coarse", "extra", "same", "new", "old",
    "ready", "done", "cool", "lukewarm", "bitter", "spicy", "creamy", "crispy", "juicy",
    "fluffy", "sticky", "salty", "tasty", "hearty", "frozen", "ground", "own", "free",
    "rich", "mild", "strong", "short", "wide", "full", "empty", "flat", "round",
    "square", "even", "level", "heavy", "plain", "simple", "traditional", "authentic",
    "original", "unique", "novel", "different", "creative", "prototypical", "useful",
    "desirable", "surprising"};

// Nouns that the suffix rules would otherwise mangle.
constexpr std::array kNouns = {
    "pudding", "dumpling", "filling", "stuffing", "topping", "frosting", "icing",
    "seasoning", "dressing", "morning", "evening", "string", "spring", "thing", "king",
    "ring", "wing", "ceiling", "wedding", "herring", "shortening", "lasagna", "hummus",
    "couscous", "molasses", "gas", "series", "species", "swiss", "asparagus", "citrus",
    "octopus", "bus", "lens", "news", "pancreas", "chess", "glass", "grass", "bass",
    "bread", "seed", "speed", "shed", "bed", "feed", "steed", "tweed", "weed", "reed",
    "greed", "need", "breed", "chips", "ginger", "butter", "water", "sugar", "flour",
    "pepper", "oven", "dish", "fish", "lentil", "noodle", "sauce", "rice", "tea", "pea",
    "peas", "oats", "grits", "bias", "canvas", "atlas", "iris", "analysis", "basis",
    "thesis", "axis", "tennis", "mayonnaise", "bouillabaisse", "cress", "watercress",
    "dress", "press", "mess", "quiche", "cheese", "spice", "juice", "slice", "piece",
    "anise", "pulse", "rinse", "surface", "sesame", "heat", "half", "dozen", "pinch",
    "dash", "meat", "breast", "roast", "toast", "yeast", "salt", "oil", "garlic", "olive", "chive", "endive",
    "vegetable", "table", "radish", "relish", "handful", "spoonful", "cupful", "arabica",
    "paprika", "tonic", "magic", "music", "clinic", "logic", "panic"};

// Cooking verbs in base form. Used to recover stems from -ed/-ing/-s forms.
constexpr std::array kVerbs = {
    "add", "bake", "beat", "blend", "boil", "braise", "bring", "broil", "brush", "chill",
    "chop", "coat", "combine", "cook", "cover", "crack", "crush", "cut", "dice", "dip",
    "drain", "drizzle", "dust", "fill", "flip", "fold", "fry", "garnish", "grate",
    "grease", "grill", "grind", "heat", "knead", "layer", "let", "marinate", "mash",
    "measure", "melt", "mince", "mix", "pat", "peel", "place", "pour", "preheat", "press",
    "puree", "reduce", "refrigerate", "remove", "rinse", "roast", "roll", "rub", "saute",
    "scoop", "season", "serve", "set", "shake", "shape", "shred", "sift", "simmer", "skim",
    "slice", "soak", "spread", "sprinkle", "squeeze", "steam", "stir", "strain", "stuff",
    "taste", "thicken", "toast", "top", "toss", "transfer", "trim", "turn", "wash", "whip",
    "whisk", "wrap", "make", "use", "get", "put", "keep", "leave", "allow", "continue",
    "wait", "arrange", "divide", "return", "repeat", "start", "finish", "prepare", "enjoy",
    "lower", "raise", "adjust", "check", "discard", "form", "cube", "warm", "soften",
    "slit", "fluff", "sear", "brown", "caramelize", "blanch", "poach", "smoke", "cure",
    "ferment", "pickle", "freeze", "thaw", "store", "cool", "bring", "cream", "glaze",
    "baste", "stew", "puree", "purée", "deglaze", "flambe", "infuse", "steep", "scramble",
    "stuff", "tenderize", "score", "pound", "flatten", "chop", "julienne", "zest",
    "crumble", "sauté", "drop", "plate", "pack", "line", "spoon", "ladle", "pulse",
    "process", "split", "halve", "quarter", "debone", "skin", "scale", "gut", "clean",
    "dry", "dress", "toss", "coat", "dredge", "batter", "bread", "shallow", "deep",
    "invert", "unmold", "carve", "rest", "open", "close", "lift", "move", "flip", "need",
    "want", "like", "look", "see", "become", "begin", "give", "take", "go", "come",
    "think", "try", "call", "find", "tell", "show", "hold", "stand", "sit", "lay", "run",
    "melt", "combine", "whisk", "double", "mark", "sprout", "render", "cut", "boil"};

struct IrregularEntry {
  const char* form;
  Pos pos;
  const char* lemma;
};

constexpr std::array kIrregular = {
    IrregularEntry{"leaves", Pos::Noun, "leaf"},
    IrregularEntry{"halves", Pos::Noun, "half"},
    IrregularEntry{"loaves", Pos::Noun, "loaf"},
    IrregularEntry{"knives", Pos::Noun, "knife"},
    IrregularEntry{"shelves", Pos::Noun, "shelf"},
    IrregularEntry{"calves", Pos::Noun, "calf"},
    IrregularEntry{"children", Pos::Noun, "child"},
    IrregularEntry{"people", Pos::Noun, "person"},
    IrregularEntry{"feet", Pos::Noun, "foot"},
    IrregularEntry{"teeth", Pos::Noun, "tooth"},
    IrregularEntry{"geese", Pos::Noun, "goose"},
    IrregularEntry{"mice", Pos::Noun, "mouse"},
    IrregularEntry{"men", Pos::Noun, "man"},
    IrregularEntry{"women", Pos::Noun, "woman"},
    IrregularEntry{"brought", Pos::Verb, "bring"},
    IrregularEntry{"beaten", Pos::Verb, "beat"},
    IrregularEntry{"made", Pos::Verb, "make"},
    IrregularEntry{"took", Pos::Verb, "take"},
    IrregularEntry{"taken", Pos::Verb, "take"},
    IrregularEntry{"gave", Pos::Verb, "give"},
    IrregularEntry{"given", Pos::Verb, "give"},
    IrregularEntry{"got", Pos::Verb, "get"},
    IrregularEntry{"gotten", Pos::Verb, "get"},
    IrregularEntry{"froze", Pos::Verb, "freeze"},
    IrregularEntry{"shook", Pos::Verb, "shake"},
    IrregularEntry{"shaken", Pos::Verb, "shake"},
    IrregularEntry{"held", Pos::Verb, "hold"},
    IrregularEntry{"kept", Pos::Verb, "keep"},
    IrregularEntry{"ate", Pos::Verb, "eat"},
    IrregularEntry{"eaten", Pos::Verb, "eat"},
    IrregularEntry{"chosen", Pos::Verb, "choose"},
    IrregularEntry{"chose", Pos::Verb, "choose"},
    IrregularEntry{"went", Pos::Verb, "go"},
    IrregularEntry{"gone", Pos::Verb, "go"},
    IrregularEntry{"came", Pos::Verb, "come"},
    IrregularEntry{"became", Pos::Verb, "become"},
    IrregularEntry{"began", Pos::Verb, "begin"},
    IrregularEntry{"begun", Pos::Verb, "begin"},
    IrregularEntry{"stood", Pos::Verb, "stand"},
    IrregularEntry{"laid", Pos::Verb, "lay"},
    IrregularEntry{"found", Pos::Verb, "find"},
    IrregularEntry{"thought", Pos::Verb, "think"},
    IrregularEntry{"told", Pos::Verb, "tell"},
    IrregularEntry{"shown", Pos::Verb, "show"},
    IrregularEntry{"seen", Pos::Verb, "see"},
    IrregularEntry{"saw", Pos::Verb, "see"},
    IrregularEntry{"ran", Pos::Verb, "run"},
    IrregularEntry{"sat", Pos::Verb, "sit"},
    IrregularEntry{"fried", Pos::Verb, "fry"},
    IrregularEntry{"dried", Pos::Verb, "dry"},
    IrregularEntry{"tried", Pos::Verb, "try"},
    IrregularEntry{"fries", Pos::Verb, "fry"},
    IrregularEntry{"dries", Pos::Verb, "dry"},
    IrregularEntry{"tries", Pos::Verb, "try"},
    IrregularEntry{"goes", Pos::Verb, "go"},
    IrregularEntry{"ground", Pos::Adjective, "ground"},
    IrregularEntry{"done", Pos::Adjective, "done"},
    IrregularEntry{"frozen", Pos::Adjective, "frozen"},
    IrregularEntry{"left", Pos::Verb, "leave"},
    IrregularEntry{"used", Pos::Verb, "use"},
    IrregularEntry{"cookies", Pos::Noun, "cookie"},
    IrregularEntry{"brownies", Pos::Noun, "brownie"},
    IrregularEntry{"smoothies", Pos::Noun, "smoothie"},
    IrregularEntry{"calories", Pos::Noun, "calorie"},
    IrregularEntry{"veggies", Pos::Noun, "veggie"},
};

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!is_ascii_digit(c)) return false;
  return true;
}

bool is_fraction_glyph(std::string_view s) {
  std::size_t i = 0;
  if (s.empty()) return false;
  const char32_t cp = decode_utf8(s, i);
  return i == s.size() && classify(cp) == CharClass::Fraction;
}

bool undoublable(char c) {
  return c == 'b' || c == 'd' || c == 'g' || c == 'm' || c == 'n' || c == 'p' || c == 'r' ||
         c == 't';
}

}  // namespace

RuleTagger::RuleTagger() {
  for (const char* w : kDeterminers) closed_.emplace(w, Pos::Determiner);
  for (const char* w : kPronouns) closed_.emplace(w, Pos::Pronoun);
  for (const char* w : kAdpositions) closed_.emplace(w, Pos::Adposition);
  for (const char* w : kConjunctions) closed_.emplace(w, Pos::Conjunction);
  for (const char* w : kAuxiliaries) closed_.emplace(w, Pos::Auxiliary);
  for (const char* w : kParticles) closed_.emplace(w, Pos::Particle);
  for (const char* w : kInterjections) closed_.emplace(w, Pos::Interjection);
  for (const char* w : kNumbers) irregular_.emplace(w, Analysis{Pos::Number, w});
  for (const auto& e : kIrregular) irregular_.emplace(e.form, Analysis{e.pos, e.lemma});
  verbs_.insert(kVerbs.begin(), kVerbs.end());
  adverbs_.insert(kAdverbs.begin(), kAdverbs.end());
  adjectives_.insert(kAdjectives.begin(), kAdjectives.end());
  nouns_.insert(kNouns.begin(), kNouns.end());
}

std::string RuleTagger::verb_stem(std::string stem) const {
  if (verbs_.count(stem)) return stem;
  const std::size_t n = stem.size();
  if (n >= 3 && stem[n - 1] == stem[n - 2] && undoublable(stem[n - 1])) {
    std::string single = stem.substr(0, n - 1);
    if (verbs_.count(single)) return single;
  }
  if (verbs_.count(stem + "e")) return stem + "e";
  if (n >= 3 && stem[n - 1] == stem[n - 2] && undoublable(stem[n - 1])) return stem.substr(0, n - 1);
  const char last = stem.back();
  if (last == 'c' || last == 'v' || last == 'z' || last == 'u') return stem + "e";
  if (n >= 2 && stem[n - 1] == 'i' && !is_vowel(stem[n - 2])) return stem.substr(0, n - 1) + "y";
  return stem;
}

// One lemmatization step for a non-closed-class word.
RuleTagger::Analysis RuleTagger::step(const std::string& word) const {
  if (all_digits(word) || is_fraction_glyph(word)) return {Pos::Number, word};
  if (auto it = irregular_.find(word); it != irregular_.end()) return it->second;
  if (nouns_.count(word)) return {Pos::Noun, word};
  if (verbs_.count(word)) return {Pos::Verb, word};
  if (adverbs_.count(word)) return {Pos::Adverb, word};
  if (adjectives_.count(word)) return {Pos::Adjective, word};

  const std::size_t n = word.size();
  if (n > 4 && ends_with(word, "ly")) return {Pos::Adverb, word};
  for (std::string_view suffix : {"ous", "ful", "ive", "able", "ible", "less", "ish", "ic"}) {
    if (n > suffix.size() + 2 && ends_with(word, suffix)) return {Pos::Adjective, word};
  }
  if (n >= 5 && ends_with(word, "ing")) return {Pos::Verb, verb_stem(word.substr(0, n - 3))};
  if (n >= 5 && ends_with(word, "ed")) {
    if (ends_with(word, "ied")) return {Pos::Verb, word.substr(0, n - 3) + "y"};
    return {Pos::Verb, verb_stem(word.substr(0, n - 2))};
  }
  if (n >= 4 && word.back() == 's' && !ends_with(word, "ss") && !ends_with(word, "us") &&
      !ends_with(word, "is")) {
    const std::string bare = word.substr(0, n - 1);
    if (verbs_.count(bare)) return {Pos::Verb, bare};
    if (n > 4 && ends_with(word, "ies")) return {Pos::Noun, word.substr(0, n - 3) + "y"};
    if (ends_with(word, "sses") || ends_with(word, "shes") || ends_with(word, "ches") ||
        ends_with(word, "xes") || ends_with(word, "zzes") || (n > 5 && ends_with(word, "oes"))) {
      return {Pos::Noun, word.substr(0, n - 2)};
    }
    return {Pos::Noun, bare};
  }
  return {Pos::Noun, word};
}

TaggedToken RuleTagger::tag_word(std::string_view lowercase_word) const {
  std::string word(lowercase_word);
  if (auto it = closed_.find(word); it != closed_.end()) return {word, word, it->second};

  Analysis first = step(word);
  std::string lemma = first.lemma;
  // Iterate to a fixed point so that the lemma re-tags to itself.
  for (int guard = 0; guard < 8; ++guard) {
    if (closed_.count(lemma)) {
      lemma = word;  // never lemmatize into a function word
      break;
    }
    Analysis next = step(lemma);
    if (next.lemma == lemma) break;
    lemma = std::move(next.lemma);
  }
  if (closed_.count(lemma)) lemma = word;
  return {word, lemma, first.pos};
}

std::vector<TaggedToken> RuleTagger::tag(std::span<const std::string> tokens) const {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(tag_word(t));
  return out;
}

const RuleTagger& default_tagger() {
  static const RuleTagger tagger;
  return tagger;
}

// ---------------------------------------------------------------------------
// TokenStream

std::vector<std::span<const std::string>> TokenStream::sentences() const {
  std::vector<std::span<const std::string>> out;
  std::size_t start = 0;
  for (std::size_t end : sentence_ends) {
    out.emplace_back(tokens.data() + start, end - start);
    start = end;
  }
  if (start < tokens.size()) out.emplace_back(tokens.data() + start, tokens.size() - start);
  return out;
}

void TokenStream::push_sentence(std::span<const std::string> sentence) {
  if (sentence.empty()) return;
  tokens.insert(tokens.end(), sentence.begin(), sentence.end());
  sentence_ends.push_back(tokens.size());
}

void TokenStream::append(const TokenStream& other) {
  for (const auto& s : other.sentences()) push_sentence(s);
}

TokenStream preprocess(std::string_view text, const PosTagger& tagger, std::string source_recipe) {
  TokenStream stream;
  stream.source_recipe = std::move(source_recipe);
  stream.stage = TokenStream::Stage::Filtered;
  std::vector<std::string> kept;
  for (std::string_view sentence : split_sentences(text)) {
    const auto tokens = tokenize(sentence);
    kept.clear();
    for (auto& tagged : tagger.tag(tokens)) {
      if (is_content(tagged.pos)) kept.push_back(std::move(tagged.lemma));
    }
    stream.push_sentence(kept);
  }
  return stream;
}

TokenStream raw_stream(std::string_view text, std::string source_recipe) {
  TokenStream stream;
  stream.source_recipe = std::move(source_recipe);
  stream.stage = TokenStream::Stage::RawText;
  for (std::string_view sentence : split_sentences(text)) stream.push_sentence(tokenize(sentence));
  return stream;
}

std::string detokenize(const TokenStream& stream) {
  std::string out;
  for (const auto& sentence : stream.sentences()) {
    for (const auto& token : sentence) {
      out += token;
      out += ' ';
    }
    out += ".\n";
  }
  return out;
}

}  // namespace culdiv
