#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kalmqa/frames.hpp"
#include "kalmqa/learner.hpp"
#include "kalmqa/lexicon.hpp"
#include "kalmqa/paraphrase.hpp"
#include "kalmqa/ulrq.hpp"

namespace kalmqa {

// Triple store over pipe-delimited MetaQA lines. Film identity is the chunk
// Id: a new Id is allocated whenever a line's film name differs from the
// previous line's, so namesake titles in separate chunks stay distinct.
class FactBase {
 public:
  struct Film {
    std::string name;
    std::map<std::string, std::vector<std::string>> attrs;
  };

  static FactBase ingest(std::string_view text);
  static FactBase ingest_file(const std::string& path);

  int film_count() const { return static_cast<int>(films_.size()); }
  size_t fact_count() const { return facts_; }
  const Film& film(int id) const { return films_[static_cast<size_t>(id)]; }
  const std::vector<int>* by_name(const std::string& name) const;
  const std::vector<int>* by_attr(const std::string& attr, const std::string& value) const;
  const EntityRegistry& registry() const { return registry_; }

  // Audit probe views: film identity collapsed to titles; person-role facts
  // shared across Actor/Director/Writer.
  FactBase title_merged() const;
  FactBase roles_collapsed() const;

 private:
  std::vector<Film> films_;
  std::map<std::string, std::vector<int>> by_name_;
  std::map<std::pair<std::string, std::string>, std::vector<int>> by_attr_;
  EntityRegistry registry_;
  size_t facts_ = 0;

  void reindex();
};

// Non-recursive derived-relation rule: head over a derived relation, body of
// movie/distinct atoms (distinct last).
struct Rule {
  QueryAtom head;
  std::vector<QueryAtom> body;
};

// Renders head :- body in the query notation (for tests and diagnostics).
std::string render_rule(const Rule& rule);

// Parses an "If <clauses> then <clause>" CNL sentence through the full
// pipeline into a Rule. Violations raise rule-definition errors.
Rule define_rule_from_cnl(const std::string& sentence, const Lexicon& lexicon,
                          const AdhocRules& adhoc, const LvpStore& store,
                          const FrameStore& frames, const ClassSystem& classes,
                          const EntityRegistry& registry);

// One rule sentence per non-blank, non-# line.
std::vector<Rule> load_rules_file(const std::string& path, const Lexicon& lexicon,
                                  const AdhocRules& adhoc, const LvpStore& store,
                                  const FrameStore& frames, const ClassSystem& classes,
                                  const EntityRegistry& registry);

// Nested-loop join with set semantics: a substitution must satisfy one atom
// of every group; movie atoms match all bound roles of a single film Id;
// distinct is term inequality; derived relations unfold through rule bodies.
std::set<std::string> evaluate(const Ulrq& query, const FactBase& kb,
                               const std::vector<Rule>& rules);

}  // namespace kalmqa
