#pragma once

#include <string>
#include <vector>

#include "kalmqa/token.hpp"

namespace kalmqa {

enum class TermKind { Object, Predicate, ModifierPp, Relation, Query };

// One stylized first-order term. Argument layout mirrors the textual
// notation, so grammatical-pattern navigation can address arguments by
// position:
//   object(ref,lexeme,countable,na,eq,1)   vars at {1}
//   predicate(ref,lexeme,subject[,object]) vars at {1,3[,4]}
//   modifier_pp(pred,lexeme,dependent)     vars at {1,3}
//   relation(left,lexeme,right)            vars at {1,3}
//   query(ref,wh-word)                     vars at {1}
struct DrsTerm {
  TermKind kind = TermKind::Object;
  int ref = -1;          // argument 1
  std::string lexeme;    // argument 2
  int arg3 = -1;         // subject / dependent / right
  int arg4 = -1;         // predicate object; -1 when intransitive
  int sentence = 1;
  int word = 0;          // 1-based token index the term refers to

  // (argument position, variable id) pairs, in position order.
  std::vector<std::pair<int, int>> var_args() const;
  int var_at(int position) const;  // -1 when absent
};

struct Drs {
  std::vector<DrsTerm> terms;  // objects first by word index, then the rest
  std::vector<Token> tokens;
  int var_count = 0;

  int find_term(int word, TermKind kind) const;          // index or -1
  int lexical_unit_term(int word) const;                  // Object or Predicate
  const DrsTerm* object_with_ref(int ref) const;
};

// Parses one normalized sentence (or an if/and/then rule sentence) into a
// DRS. Grammar: [wh | wh noun | NP] VERB [NP] PP*, copula clauses
// ("X is a N of Y"), passive clauses, of-genitives, relative clauses
// introduced by that/who, and definite-NP anaphora. Out-of-grammar input
// raises unparseable-sentence naming the offending token.
Drs parse_cnl(const std::vector<Token>& tokens);

// The textual notation, one term per line, variables lettered in order of
// first appearance.
std::string render_drs(const Drs& drs);

// True iff some single term mentions the same variable twice.
bool has_repeated_variables(const Drs& drs);

}  // namespace kalmqa
