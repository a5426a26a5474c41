#include "kalmqa/lexicon.hpp"

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

static std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

static Pos pos_from_name(const std::string& name, const std::string& where) {
  static const std::unordered_map<std::string, Pos> table = {
      {"noun-sg", Pos::NounSg},     {"noun-pl", Pos::NounPl},
      {"proper", Pos::Proper},      {"verb-pres", Pos::VerbPres},
      {"verb-past", Pos::VerbPast}, {"verb-pastpart", Pos::VerbPastPart},
      {"det", Pos::Det},            {"prep", Pos::Prep},
      {"wh", Pos::Wh},              {"rel", Pos::Rel},
      {"punct", Pos::Punct},        {"other", Pos::Other},
  };
  auto it = table.find(name);
  if (it == table.end())
    fail(ErrorKind::Load, "unknown part-of-speech tag '" + name + "' in " + where);
  return it->second;
}

Lexicon Lexicon::from_text(const std::string& lexicon_text,
                           const std::string& irregulars_text) {
  Lexicon lx;
  int lineno = 0;
  for (const std::string& raw : split(lexicon_text, '\n')) {
    ++lineno;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() < 3)
      fail(ErrorKind::Load, "lexicon line " + std::to_string(lineno) +
                                ": expected surface<TAB>lemma<TAB>pos");
    Entry e;
    e.lemma = cols[1];
    for (const std::string& p : split(cols[2], ','))
      e.pos.push_back(pos_from_name(p, "lexicon line " + std::to_string(lineno)));
    if (cols.size() > 3 && cols[3] == "mass") lx.mass_.insert(e.lemma);
    lx.entries_[cols[0]] = std::move(e);
  }
  lineno = 0;
  for (const std::string& raw : split(irregulars_text, '\n')) {
    ++lineno;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() != 2)
      fail(ErrorKind::Load, "irregular-verb line " + std::to_string(lineno) +
                                ": expected past<TAB>present");
    if (!lx.entries_.count(cols[1]))
      fail(ErrorKind::Load, "irregular-verb line " + std::to_string(lineno) +
                                ": present form '" + cols[1] +
                                "' missing from lexicon");
    lx.irregular_[cols[0]] = cols[1];
  }
  return lx;
}

Lexicon Lexicon::load(const std::string& lexicon_path,
                      const std::string& irregulars_path) {
  return from_text(read_file(lexicon_path), read_file(irregulars_path));
}

const Lexicon::Entry* Lexicon::find(const std::string& surface) const {
  auto it = entries_.find(surface);
  if (it != entries_.end()) return &it->second;
  if (!surface.empty() && std::isupper(static_cast<unsigned char>(surface[0]))) {
    std::string lower = surface;
    lower[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(lower[0])));
    it = entries_.find(lower);
    if (it != entries_.end()) return &it->second;
  }
  return nullptr;
}

std::string Lexicon::present_of(const std::string& surface,
                                const std::string& lemma) const {
  auto it = irregular_.find(surface);
  if (it != irregular_.end()) return it->second;
  if (!lemma.empty()) return lemma;
  // -ed stripping fallback for out-of-lexicon regular verbs.
  std::string s = surface;
  if (s.size() > 3 && s.compare(s.size() - 3, 3, "ied") == 0)
    return s.substr(0, s.size() - 3) + "y";
  if (s.size() > 2 && s.compare(s.size() - 2, 2, "ed") == 0) {
    s.resize(s.size() - 2);
    if (s.size() > 2 && s[s.size() - 1] == s[s.size() - 2]) s.pop_back();
    return s;
  }
  return s;
}

std::string Lexicon::third_singular(const std::string& lemma) {
  if (lemma == "be") return "is";
  if (lemma == "have") return "has";
  auto ends_with = [&](const char* suf) {
    std::string_view s(suf);
    return lemma.size() >= s.size() &&
           lemma.compare(lemma.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with("s") || ends_with("x") || ends_with("z") || ends_with("ch") ||
      ends_with("sh") || ends_with("o"))
    return lemma + "es";
  if (lemma.size() > 1 && lemma.back() == 'y') {
    char before = lemma[lemma.size() - 2];
    if (before != 'a' && before != 'e' && before != 'i' && before != 'o' &&
        before != 'u')
      return lemma.substr(0, lemma.size() - 1) + "ies";
  }
  return lemma + "s";
}

}  // namespace kalmqa
