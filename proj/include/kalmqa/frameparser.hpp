#pragma once

#include <string>
#include <vector>

#include "kalmqa/drs.hpp"
#include "kalmqa/frames.hpp"
#include "kalmqa/learner.hpp"

namespace kalmqa {

struct ParseFiller {
  std::string role;
  int word = 0;  // filler word index
  std::string pattern;

  auto operator<=>(const ParseFiller&) const = default;
};

// One frame-relation instance extracted from a sentence.
struct CandidateParse {
  std::string frame;
  int lu_index = 0;
  std::vector<ParseFiller> fillers;

  auto operator<=>(const CandidateParse&) const = default;
  const ParseFiller* find_role(const std::string& role) const;
};

struct LexicalUnit {
  std::string lexeme;
  char pos = 'v';
  int word = 0;
};

// All Predicate lexemes (pos v) and Object lexemes (pos n) with word indices,
// in term order.
std::vector<LexicalUnit> candidate_lexical_units(const Drs& drs);

// Applies every store lvp with matching (lexeme, pos) to each candidate
// lexical unit. An lvp yields one parse iff all its patterns extract a filler
// and every constant filler passes the role's type constraints; failures are
// dropped. Role names are alias-canonicalized. Output is deduplicated and
// canonically sorted.
std::vector<CandidateParse> parse_sentence(const Drs& drs, const LvpStore& store,
                                           const FrameStore& frames);

// Class-membership disambiguation: true iff every filler satisfies its
// role's type constraints and semantic class (wh fillers always compatible;
// constants unseen in the fact base pass and simply fail at evaluation).
bool disambiguate(const CandidateParse& parse, const Drs& drs,
                  const EntityRegistry& registry, const ClassSystem& classes,
                  const FrameStore& frames);

std::string render_parse(const CandidateParse& parse);

}  // namespace kalmqa
