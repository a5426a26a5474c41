#pragma once

#include <string>
#include <vector>

#include "kalmqa/drs.hpp"
#include "kalmqa/frameparser.hpp"
#include "kalmqa/frames.hpp"

namespace kalmqa {

struct LogicTerm {
  enum class Kind { Var, Const };

  Kind kind = Kind::Var;
  std::string text;  // variable name or constant value

  static LogicTerm var(std::string name) { return {Kind::Var, std::move(name)}; }
  static LogicTerm constant(std::string value) { return {Kind::Const, std::move(value)}; }
  bool is_var() const { return kind == Kind::Var; }

  auto operator<=>(const LogicTerm&) const = default;
};

struct Binding {
  std::string role;
  LogicTerm term;

  auto operator<=>(const Binding&) const = default;
};

struct QueryAtom {
  std::string relation;  // movie, coop, distinct, ...
  std::vector<Binding> bindings;  // frame-definition role order

  bool is_distinct() const { return relation == "distinct"; }
  const LogicTerm* role_term(const std::string& role) const;

  auto operator<=>(const QueryAtom&) const = default;
};

// Atoms of one group are a disjunction; groups conjoin.
struct AlternativeGroup {
  std::vector<QueryAtom> atoms;
};

struct Ulrq {
  std::vector<AlternativeGroup> groups;
  LogicTerm answer_var;
};

// --- §5 steps -------------------------------------------------------------

// True iff the parses name the same frame and f's (role, word) pairs are a
// subset of g's (g subsumes f).
bool subsumes(const CandidateParse& f, const CandidateParse& g);

// Same lexical unit, one (word, pattern) set contained in the other, and no
// subsumption either way.
bool alternatives(const CandidateParse& f, const CandidateParse& g);

// Maximal cliques of the alternatives relation over subsumption-free input.
// When the cliques do not partition the parses, raises grouping-ambiguity.
std::vector<std::vector<CandidateParse>> maximal_alternative_sets(
    const std::vector<CandidateParse>& parses);

// Full §5 construction: prune by class-membership disambiguation, delete
// subsumed parses, group, apply the phi mapping, and wire variables. Raises
// not-a-question when the DRS has no wh-word and no-interpretation when
// nothing survives pruning.
Ulrq build_ulrq(const std::vector<CandidateParse>& parses, const Drs& drs,
                const FrameStore& frames, const ClassSystem& classes,
                const EntityRegistry& registry);

// Variable wiring rules (a)-(d) over a parse set, one atom per parse in
// order. Shared by query construction and rule definition (head and body
// wired from the same sentence share variables through word indices).
std::vector<QueryAtom> wire_parses(const std::vector<CandidateParse>& parses,
                                   const Drs& drs, const FrameStore& frames);

// --- rendering ------------------------------------------------------------

// Canonical text: atoms sorted structurally (distinct constraints last),
// variables renamed A,B,C,... with the answer variable first, disjunctions
// parenthesized with ';', distinct rendered `X \= Y`. Two queries are
// alpha-equivalent iff their canonical texts are equal.
std::string render_query(const Ulrq& query);

// Canonical text with every constant masked as the placeholder xxxx.
std::string standardize_template(const Ulrq& query);

}  // namespace kalmqa
