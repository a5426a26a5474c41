#pragma once

#include <string>
#include <vector>

namespace kalmqa {

enum class Pos {
  NounSg,
  NounPl,
  Proper,
  VerbPres,
  VerbPast,
  VerbPastPart,
  Det,
  Prep,
  Wh,
  Rel,
  Punct,
  Other,
};

const char* pos_name(Pos p);

struct Token {
  std::string surface;     // word as it appears in the normalized sentence
  std::string lemma;       // dictionary form; for entities the original span text
  Pos pos = Pos::Other;
  bool entity = false;     // came from a [...] span
  std::vector<Pos> all_pos;  // every reading the lexicon lists for the surface

  bool has_pos(Pos p) const {
    for (Pos q : all_pos)
      if (q == p) return true;
    return pos == p;
  }
  bool is_noun() const { return pos == Pos::NounSg || pos == Pos::NounPl; }
  bool is_verb() const {
    return pos == Pos::VerbPres || pos == Pos::VerbPast || pos == Pos::VerbPastPart;
  }
};

inline const char* pos_name(Pos p) {
  switch (p) {
    case Pos::NounSg: return "noun-sg";
    case Pos::NounPl: return "noun-pl";
    case Pos::Proper: return "proper";
    case Pos::VerbPres: return "verb-pres";
    case Pos::VerbPast: return "verb-past";
    case Pos::VerbPastPart: return "verb-pastpart";
    case Pos::Det: return "det";
    case Pos::Prep: return "prep";
    case Pos::Wh: return "wh";
    case Pos::Rel: return "rel";
    case Pos::Punct: return "punct";
    case Pos::Other: return "other";
  }
  return "other";
}

}  // namespace kalmqa
