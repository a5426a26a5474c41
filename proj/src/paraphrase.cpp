#include "kalmqa/paraphrase.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "kalmqa/error.hpp"

namespace kalmqa {

static std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Load, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

static std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

static bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

static std::vector<std::string> whitespace_split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

static Token tag_word(const std::string& word, const Lexicon& lx) {
  Token t;
  t.surface = word;
  if (const Lexicon::Entry* e = lx.find(word)) {
    t.lemma = e->lemma;
    t.pos = e->pos.front();
    t.all_pos = e->pos;
    return t;
  }
  t.lemma = word;
  if (all_digits(word) || std::isupper(static_cast<unsigned char>(word[0])))
    t.pos = Pos::Proper;
  else
    t.pos = Pos::Other;
  t.all_pos = {t.pos};
  return t;
}

std::vector<Token> tokenize(const std::string& text, const Lexicon& lx) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == ']') fail(ErrorKind::MalformedQuestion, "unmatched ']' in question");
    if (c == '[') {
      size_t close = text.find_first_of("[]", i + 1);
      if (close == std::string::npos || text[close] == '[')
        fail(ErrorKind::MalformedQuestion, "unclosed or nested '[' in question");
      auto words = whitespace_split(text.substr(i + 1, close - i - 1));
      if (words.empty())
        fail(ErrorKind::MalformedQuestion, "empty [] entity span");
      Token t;
      t.entity = true;
      t.pos = Pos::Proper;
      t.all_pos = {Pos::Proper};
      for (size_t w = 0; w < words.size(); ++w) {
        if (w) {
          t.surface += '-';
          t.lemma += ' ';
        }
        t.surface += words[w];
        t.lemma += words[w];
      }
      tokens.push_back(std::move(t));
      i = close + 1;
      continue;
    }
    size_t end = i;
    while (end < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[end])) &&
           text[end] != '[' && text[end] != ']')
      ++end;
    std::string word = text.substr(i, end - i);
    i = end;
    while (!word.empty() && (word.back() == '?' || word.back() == '!' ||
                             word.back() == '.' || word.back() == ',' ||
                             word.back() == ';' || word.back() == ':'))
      word.pop_back();
    if (word.empty()) continue;
    tokens.push_back(tag_word(word, lx));
  }
  if (tokens.empty()) fail(ErrorKind::MalformedQuestion, "empty question");
  return tokens;
}

AdhocRules AdhocRules::from_text(const std::string& text) {
  AdhocRules r;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      fail(ErrorKind::Load, "ad-hoc rule line " + std::to_string(lineno) +
                                ": expected match<TAB>replacement");
    Rule rule;
    for (std::string& w : whitespace_split(line.substr(0, tab)))
      rule.match.push_back(lower(w));
    rule.replacement = whitespace_split(line.substr(tab + 1));
    if (rule.match.empty())
      fail(ErrorKind::Load, "ad-hoc rule line " + std::to_string(lineno) +
                                ": empty match pattern");
    r.rules_.push_back(std::move(rule));
  }
  return r;
}

AdhocRules AdhocRules::load(const std::string& path) {
  return from_text(read_file(path));
}

std::vector<Token> AdhocRules::apply(std::vector<Token> tokens,
                                     const Lexicon& lx) const {
  for (const Rule& rule : rules_) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < tokens.size()) {
      bool matched = i + rule.match.size() <= tokens.size();
      for (size_t k = 0; matched && k < rule.match.size(); ++k) {
        const Token& t = tokens[i + k];
        matched = !t.entity && lower(t.surface) == rule.match[k];
      }
      if (matched) {
        for (const std::string& w : rule.replacement)
          out.push_back(tag_word(w, lx));
        i += rule.match.size();
      } else {
        out.push_back(tokens[i]);
        ++i;
      }
    }
    tokens = std::move(out);
  }
  return tokens;
}

static Token function_word(const std::string& w, const Lexicon& lx) {
  return tag_word(w, lx);
}

// Maximal runs of adjacent non-entity proper tokens become one hyphenated
// token; the lemma keeps the original spacing.
static void merge_proper_runs(std::vector<Token>& tokens) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < tokens.size()) {
    if (tokens[i].pos == Pos::Proper && !tokens[i].entity) {
      size_t j = i + 1;
      while (j < tokens.size() && tokens[j].pos == Pos::Proper &&
             !tokens[j].entity)
        ++j;
      Token merged = tokens[i];
      for (size_t k = i + 1; k < j; ++k) {
        merged.surface += '-' + tokens[k].surface;
        merged.lemma += ' ' + tokens[k].lemma;
      }
      out.push_back(std::move(merged));
      i = j;
    } else {
      out.push_back(tokens[i]);
      ++i;
    }
  }
  tokens = std::move(out);
}

static bool participial(const Token& t) {
  return (t.pos == Pos::VerbPast || t.pos == Pos::VerbPastPart) &&
         t.has_pos(Pos::VerbPastPart);
}

// "a film directed by X" -> "a film that is directed by X";
// "X directed films"    -> "films that are directed by X".
static void rewrite_participles(std::vector<Token>& tokens, const Lexicon& lx) {
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (!participial(tokens[i])) continue;
    if (i > 0 && tokens[i - 1].lemma == "be") {
      tokens[i].pos = Pos::VerbPastPart;  // already a passive relative clause
      continue;
    }
    if (i > 0 && tokens[i - 1].is_noun()) {
      bool plural = tokens[i - 1].pos == Pos::NounPl;
      tokens[i].pos = Pos::VerbPastPart;
      Token that = function_word("that", lx);
      Token be = function_word(plural ? "are" : "is", lx);
      tokens.insert(tokens.begin() + i, {that, be});
      i += 2;
      continue;
    }
    if (i > 0 && tokens[i - 1].pos == Pos::Proper && i + 1 < tokens.size() &&
        tokens[i + 1].is_noun()) {
      Token prop = tokens[i - 1];
      Token part = tokens[i];
      Token noun = tokens[i + 1];
      part.pos = Pos::VerbPastPart;
      bool plural = noun.pos == Pos::NounPl;
      std::vector<Token> repl = {noun,
                                 function_word("that", lx),
                                 function_word(plural ? "are" : "is", lx),
                                 part,
                                 function_word("by", lx),
                                 prop};
      tokens.erase(tokens.begin() + (i - 1), tokens.begin() + (i + 2));
      tokens.insert(tokens.begin() + (i - 1), repl.begin(), repl.end());
      i = i - 1 + repl.size() - 1;
      continue;
    }
  }
}

// Every remaining past-tense verb becomes present tense, agreeing in number
// with the nearest preceding subject head (wh-words count as singular).
static void normalize_tense(std::vector<Token>& tokens, const Lexicon& lx) {
  for (size_t i = 0; i < tokens.size(); ++i) {
    Token& t = tokens[i];
    if (t.pos != Pos::VerbPast) continue;
    bool plural = false;
    for (size_t j = i; j-- > 0;) {
      const Token& s = tokens[j];
      if (s.pos == Pos::NounPl) {
        plural = true;
        break;
      }
      if (s.pos == Pos::NounSg || s.pos == Pos::Proper || s.pos == Pos::Wh)
        break;
    }
    if (t.lemma == "be") {
      t.surface = plural ? "are" : "is";
      t.pos = Pos::VerbPres;
      continue;
    }
    std::string present = lx.present_of(t.surface, t.lemma);
    t.surface = plural ? present : Lexicon::third_singular(present);
    if (t.lemma.empty()) t.lemma = present;
    t.pos = Pos::VerbPres;
  }
}

// Singular countable nouns with no determiner get a/an; bare plurals get
// "some". Wh-determiners ("which films") block insertion.
static void insert_articles(std::vector<Token>& tokens, const Lexicon& lx) {
  for (size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (!t.is_noun()) continue;
    if (i > 0 && (tokens[i - 1].pos == Pos::Det || tokens[i - 1].pos == Pos::Wh))
      continue;
    std::string article;
    if (t.pos == Pos::NounPl) {
      article = "some";
    } else if (lx.countable(t.lemma)) {
      char c = static_cast<char>(std::tolower(static_cast<unsigned char>(t.surface[0])));
      article = (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') ? "an" : "a";
    } else {
      continue;
    }
    tokens.insert(tokens.begin() + i, function_word(article, lx));
    ++i;
  }
}

std::vector<Token> normalize(std::vector<Token> tokens, const Lexicon& lx,
                             const AdhocRules& adhoc) {
  tokens = adhoc.apply(std::move(tokens), lx);
  merge_proper_runs(tokens);
  rewrite_participles(tokens, lx);
  normalize_tense(tokens, lx);
  insert_articles(tokens, lx);
  return tokens;
}

std::string render_tokens(const std::vector<Token>& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i].surface;
  }
  return out;
}

}  // namespace kalmqa
