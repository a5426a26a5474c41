#include "kalmqa/engine.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "kalmqa/error.hpp"
#include "kalmqa/frameparser.hpp"

namespace kalmqa {

namespace {

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  return std::string(s.substr(a, b - a));
}

struct RelationInfo {
  const char* relation;
  const char* attribute;
  const char* klass;
};

const RelationInfo kRelations[] = {
    {"directed_by", "Director", "person"},
    {"starred_actors", "Actor", "person"},
    {"written_by", "Writer", "person"},
    {"release_year", "Release Year", "year"},
    {"has_genre", "Genre", "genre"},
    {"in_language", "Language", "language"},
    {"has_imdb_rating", "Rating", "rating"},
};

const RelationInfo* relation_info(const std::string& relation) {
  for (auto& r : kRelations)
    if (relation == r.relation) return &r;
  return nullptr;
}

std::string lowercase(std::string s) {
  for (char& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}

}  // namespace

void FactBase::reindex() {
  by_name_.clear();
  by_attr_.clear();
  registry_ = EntityRegistry();
  facts_ = 0;
  for (int id = 0; id < film_count(); ++id) {
    const Film& f = films_[static_cast<size_t>(id)];
    by_name_[f.name].push_back(id);
    registry_.add(f.name, "film-title");
    for (auto& [attr, values] : f.attrs) {
      for (auto& v : values) {
        ++facts_;
        auto& ids = by_attr_[{attr, v}];
        if (ids.empty() || ids.back() != id) ids.push_back(id);
        const RelationInfo* info = nullptr;
        for (auto& r : kRelations)
          if (attr == r.attribute) info = &r;
        registry_.add(v, info ? info->klass : lowercase(attr));
      }
    }
  }
}

FactBase FactBase::ingest(std::string_view text) {
  FactBase kb;
  size_t start = 0;
  int lineno = 0;
  std::string prev_name;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++lineno;
    bool last = end == text.size();
    start = end + 1;
    std::string line = trim(raw);
    if (!line.empty() && line[0] != '#') {
      size_t p1 = line.find('|');
      size_t p2 = p1 == std::string::npos ? std::string::npos : line.find('|', p1 + 1);
      if (p2 == std::string::npos)
        fail(ErrorKind::Ingest,
             "line " + std::to_string(lineno) + ": expected Name|relation|Value");
      std::string name = trim(line.substr(0, p1));
      std::string relation = trim(line.substr(p1 + 1, p2 - p1 - 1));
      std::string rest = line.substr(p2 + 1);
      if (name.empty() || relation.empty())
        fail(ErrorKind::Ingest,
             "line " + std::to_string(lineno) + ": empty film name or relation");
      // Multi-valued lines keep MetaQA's pipe-joined value lists.
      std::vector<std::string> values;
      size_t vstart = 0;
      while (vstart <= rest.size()) {
        size_t vend = rest.find('|', vstart);
        if (vend == std::string::npos) vend = rest.size();
        std::string value = trim(rest.substr(vstart, vend - vstart));
        if (value.empty())
          fail(ErrorKind::Ingest, "line " + std::to_string(lineno) + ": empty value");
        values.push_back(std::move(value));
        if (vend == rest.size()) break;
        vstart = vend + 1;
      }
      const RelationInfo* info = relation_info(relation);
      std::string attr = info ? info->attribute : relation;
      if (kb.films_.empty() || name != prev_name) {
        kb.films_.push_back({name, {}});
        prev_name = name;
      }
      auto& stored = kb.films_.back().attrs[attr];
      stored.insert(stored.end(), values.begin(), values.end());
    }
    if (last) break;
  }
  kb.reindex();
  return kb;
}

FactBase FactBase::ingest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Load, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return ingest(os.str());
}

const std::vector<int>* FactBase::by_name(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : &it->second;
}

const std::vector<int>* FactBase::by_attr(const std::string& attr,
                                          const std::string& value) const {
  auto it = by_attr_.find({attr, value});
  return it == by_attr_.end() ? nullptr : &it->second;
}

FactBase FactBase::title_merged() const {
  FactBase out;
  std::map<std::string, size_t> merged;  // title -> index in out.films_
  for (auto& f : films_) {
    auto [it, added] = merged.try_emplace(f.name, out.films_.size());
    if (added) out.films_.push_back({f.name, {}});
    Film& target = out.films_[it->second];
    for (auto& [attr, values] : f.attrs) {
      auto& stored = target.attrs[attr];
      for (auto& v : values)
        if (std::find(stored.begin(), stored.end(), v) == stored.end())
          stored.push_back(v);
    }
  }
  out.reindex();
  return out;
}

FactBase FactBase::roles_collapsed() const {
  static const char* kPersonRoles[] = {"Actor", "Director", "Writer"};
  FactBase out;
  out.films_ = films_;
  for (auto& f : out.films_) {
    std::vector<std::string> people;
    for (const char* role : kPersonRoles) {
      auto it = f.attrs.find(role);
      if (it == f.attrs.end()) continue;
      for (auto& v : it->second)
        if (std::find(people.begin(), people.end(), v) == people.end())
          people.push_back(v);
    }
    if (people.empty()) continue;
    for (const char* role : kPersonRoles) f.attrs[role] = people;
  }
  out.reindex();
  return out;
}

std::string render_rule(const Rule& rule) {
  // Reuses the canonical query renderer with the head's variables first.
  std::ostringstream os;
  auto term_text = [](const LogicTerm& t) {
    return t.is_var() ? t.text : "'" + t.text + "'";
  };
  auto atom_text = [&](const QueryAtom& a) {
    if (a.is_distinct()) {
      std::string out = term_text(a.bindings[0].term);
      for (size_t i = 1; i < a.bindings.size(); ++i)
        out += " \\= " + term_text(a.bindings[i].term);
      return out;
    }
    std::string out = a.relation + "(";
    for (size_t i = 0; i < a.bindings.size(); ++i) {
      if (i) out += ",";
      out += "'" + a.bindings[i].role + "'=" + term_text(a.bindings[i].term);
    }
    return out + ")";
  };
  os << atom_text(rule.head) << ":-";
  for (size_t i = 0; i < rule.body.size(); ++i) {
    if (i) os << ",";
    os << atom_text(rule.body[i]);
  }
  os << ".";
  return os.str();
}

Rule define_rule_from_cnl(const std::string& sentence, const Lexicon& lexicon,
                          const AdhocRules& adhoc, const LvpStore& store,
                          const FrameStore& frames, const ClassSystem& classes,
                          const EntityRegistry& registry) {
  std::vector<Token> tokens;
  try {
    tokens = normalize(tokenize(sentence, lexicon), lexicon, adhoc);
  } catch (const Error& e) {
    fail(ErrorKind::RuleDefinition, std::string("rule sentence: ") + e.what());
  }
  int then_word = -1;
  bool has_if = false;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].pos == Pos::Other && tokens[i].lemma == "then")
      then_word = static_cast<int>(i) + 1;
    if (i == 0 && tokens[i].pos == Pos::Other && tokens[i].lemma == "if") has_if = true;
  }
  if (!has_if || then_word < 0)
    fail(ErrorKind::RuleDefinition, "rule sentence must have the form 'If ... then ...'");

  Drs drs;
  std::vector<CandidateParse> parses;
  try {
    drs = parse_cnl(tokens);
    parses = parse_sentence(drs, store, frames);
  } catch (const Error& e) {
    fail(ErrorKind::RuleDefinition, std::string("rule sentence: ") + e.what());
  }

  std::vector<CandidateParse> antecedent, consequent;
  for (auto& p : parses) {
    if (!disambiguate(p, drs, registry, classes, frames)) continue;
    (p.lu_index < then_word ? antecedent : consequent).push_back(p);
  }
  auto drop_subsumed = [](std::vector<CandidateParse>& ps) {
    std::vector<CandidateParse> kept;
    for (auto& f : ps) {
      bool strictly = false;
      for (auto& g : ps)
        if (subsumes(f, g) && !subsumes(g, f)) strictly = true;
      if (!strictly) kept.push_back(f);
    }
    ps = std::move(kept);
  };
  drop_subsumed(antecedent);
  drop_subsumed(consequent);
  if (antecedent.empty())
    fail(ErrorKind::RuleDefinition, "rule antecedent yields no atoms");
  if (consequent.size() != 1)
    fail(ErrorKind::RuleDefinition,
         "rule consequent must yield exactly one relation, got " +
             std::to_string(consequent.size()));

  std::vector<CandidateParse> all = antecedent;
  all.push_back(consequent[0]);
  std::vector<QueryAtom> atoms = wire_parses(all, drs, frames);
  Rule rule;
  rule.head = atoms.back();
  atoms.pop_back();
  std::stable_partition(atoms.begin(), atoms.end(),
                        [](const QueryAtom& a) { return !a.is_distinct(); });
  rule.body = std::move(atoms);

  // Range restriction: every head variable occurs in the body.
  for (auto& hb : rule.head.bindings) {
    if (!hb.term.is_var()) continue;
    bool found = false;
    for (auto& a : rule.body)
      for (auto& b : a.bindings)
        if (b.term == hb.term) found = true;
    if (!found)
      fail(ErrorKind::RuleDefinition,
           "head variable for role " + hb.role + " is not bound by the rule body");
  }
  if (rule.head.is_distinct() || rule.head.relation == "movie")
    fail(ErrorKind::RuleDefinition, "rule head must be a derived relation");
  return rule;
}

std::vector<Rule> load_rules_file(const std::string& path, const Lexicon& lexicon,
                                  const AdhocRules& adhoc, const LvpStore& store,
                                  const FrameStore& frames, const ClassSystem& classes,
                                  const EntityRegistry& registry) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Load, "cannot open " + path);
  std::vector<Rule> rules;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    rules.push_back(define_rule_from_cnl(text, lexicon, adhoc, store, frames,
                                         classes, registry));
  }
  return rules;
}

namespace {

class Evaluator {
 public:
  Evaluator(const FactBase& kb, const std::vector<Rule>& rules)
      : kb_(kb), rules_(rules) {}

  std::set<std::string> run(const Ulrq& query) {
    answer_ = query.answer_var.text;
    // Distinct-only groups go last so their terms are ground when checked.
    std::vector<const AlternativeGroup*> groups;
    for (auto& g : query.groups)
      if (!(g.atoms.size() == 1 && g.atoms[0].is_distinct())) groups.push_back(&g);
    for (auto& g : query.groups)
      if (g.atoms.size() == 1 && g.atoms[0].is_distinct()) groups.push_back(&g);
    solve_groups(groups, 0);
    return std::move(answers_);
  }

 private:
  const FactBase& kb_;
  const std::vector<Rule>& rules_;
  std::map<std::string, std::string> bind_;
  std::set<std::string> answers_;
  std::string answer_;
  int fresh_ = 0;

  bool ground(const LogicTerm& t, std::string& out) const {
    if (!t.is_var()) {
      out = t.text;
      return true;
    }
    auto it = bind_.find(t.text);
    if (it == bind_.end()) return false;
    out = it->second;
    return true;
  }

  // Binds or checks; returns false on mismatch. Records new bindings in trail.
  bool unify(const LogicTerm& t, const std::string& value,
             std::vector<std::string>& trail) {
    if (!t.is_var()) return t.text == value;
    auto it = bind_.find(t.text);
    if (it != bind_.end()) return it->second == value;
    bind_.emplace(t.text, value);
    trail.push_back(t.text);
    return true;
  }

  void undo(const std::vector<std::string>& trail) {
    for (auto& name : trail) bind_.erase(name);
  }

  void solve_groups(const std::vector<const AlternativeGroup*>& groups, size_t g) {
    if (g == groups.size()) {
      auto it = bind_.find(answer_);
      if (it != bind_.end()) answers_.insert(it->second);
      return;
    }
    for (auto& atom : groups[g]->atoms)
      solve_atom(atom, [&] { solve_groups(groups, g + 1); });
  }

  void solve_atoms(const std::vector<QueryAtom>& atoms, size_t i,
                   const std::function<void()>& next) {
    if (i == atoms.size()) {
      next();
      return;
    }
    solve_atom(atoms[i], [&] { solve_atoms(atoms, i + 1, next); });
  }

  void solve_atom(const QueryAtom& atom, const std::function<void()>& next) {
    if (atom.relation == "movie") {
      solve_movie(atom, next);
    } else if (atom.is_distinct()) {
      std::string a, b;
      if (atom.bindings.size() == 2 && ground(atom.bindings[0].term, a) &&
          ground(atom.bindings[1].term, b) && a != b)
        next();
    } else {
      solve_derived(atom, next);
    }
  }

  void solve_movie(const QueryAtom& atom, const std::function<void()>& next) {
    std::vector<int> candidates = movie_candidates(atom);
    for (int id : candidates) {
      const FactBase::Film& film = kb_.film(id);
      std::vector<std::string> trail;
      bool ok = true;
      for (size_t i = 0; i < atom.bindings.size() && ok; ++i) {
        const Binding& b = atom.bindings[i];
        std::string value;
        if (b.role == "FilmNm") {
          ok = unify(b.term, film.name, trail);
        } else if (b.role == "Id") {
          ok = unify(b.term, std::to_string(id), trail);
        } else if (ground(b.term, value)) {
          auto it = film.attrs.find(b.role);
          ok = it != film.attrs.end() &&
               std::find(it->second.begin(), it->second.end(), value) !=
                   it->second.end();
        }
      }
      if (ok) branch_open_roles(atom, film, 0, next);
      undo(trail);
    }
  }

  // Enumerates values for unbound non-key roles of one film.
  void branch_open_roles(const QueryAtom& atom, const FactBase::Film& film,
                         size_t i, const std::function<void()>& next) {
    if (i == atom.bindings.size()) {
      next();
      return;
    }
    const Binding& b = atom.bindings[i];
    std::string value;
    if (b.role == "FilmNm" || b.role == "Id" || ground(b.term, value)) {
      // Bound roles were already checked (or bound by an earlier branch level
      // of this same atom; re-check membership for those).
      if (b.role != "FilmNm" && b.role != "Id" && ground(b.term, value)) {
        auto it = film.attrs.find(b.role);
        if (it == film.attrs.end() ||
            std::find(it->second.begin(), it->second.end(), value) == it->second.end())
          return;
      }
      branch_open_roles(atom, film, i + 1, next);
      return;
    }
    auto it = film.attrs.find(b.role);
    if (it == film.attrs.end()) return;
    for (auto& v : it->second) {
      std::vector<std::string> local;
      if (unify(b.term, v, local)) branch_open_roles(atom, film, i + 1, next);
      undo(local);
    }
  }

  std::vector<int> movie_candidates(const QueryAtom& atom) {
    std::string value;
    for (auto& b : atom.bindings) {
      if (b.role == "FilmNm" && ground(b.term, value)) {
        const std::vector<int>* ids = kb_.by_name(value);
        return ids ? *ids : std::vector<int>{};
      }
    }
    for (auto& b : atom.bindings) {
      if (b.role == "Id" && ground(b.term, value)) {
        int id = -1;
        try {
          id = std::stoi(value);
        } catch (const std::exception&) {
          return {};
        }
        if (id < 0 || id >= kb_.film_count()) return {};
        return {id};
      }
    }
    for (auto& b : atom.bindings) {
      if (b.role == "FilmNm" || b.role == "Id") continue;
      if (ground(b.term, value)) {
        const std::vector<int>* ids = kb_.by_attr(b.role, value);
        return ids ? *ids : std::vector<int>{};
      }
    }
    std::vector<int> all(static_cast<size_t>(kb_.film_count()));
    for (int i = 0; i < kb_.film_count(); ++i) all[static_cast<size_t>(i)] = i;
    return all;
  }

  void solve_derived(const QueryAtom& atom, const std::function<void()>& next) {
    std::set<std::string> roles;
    for (auto& b : atom.bindings) roles.insert(b.role);
    bool known = false;
    for (auto& rule : rules_) {
      if (rule.head.relation != atom.relation) continue;
      known = true;
      std::set<std::string> head_roles;
      for (auto& b : rule.head.bindings) head_roles.insert(b.role);
      if (head_roles != roles) continue;

      // Rename rule variables: head variables map to the atom's terms,
      // body-only variables become fresh.
      std::map<std::string, LogicTerm> rename;
      bool ok = true;
      for (auto& hb : rule.head.bindings) {
        const LogicTerm* at = atom.role_term(hb.role);
        if (!hb.term.is_var()) {
          std::string v;
          ok = ok && at && !at->is_var() && at->text == hb.term.text;
          continue;
        }
        auto [it, added] = rename.try_emplace(hb.term.text, *at);
        if (!added && !(it->second == *at)) ok = false;
      }
      if (!ok) continue;
      int depth = fresh_++;
      auto instantiate = [&](const LogicTerm& t) -> LogicTerm {
        if (!t.is_var()) return t;
        auto it = rename.find(t.text);
        if (it != rename.end()) return it->second;
        auto [fresh_it, _] = rename.emplace(
            t.text, LogicTerm::var("r" + std::to_string(depth) + "_" + t.text));
        return fresh_it->second;
      };
      std::vector<QueryAtom> body;
      for (auto& a : rule.body) {
        QueryAtom inst;
        inst.relation = a.relation;
        for (auto& b : a.bindings) inst.bindings.push_back({b.role, instantiate(b.term)});
        body.push_back(std::move(inst));
      }
      solve_atoms(body, 0, next);
    }
    if (!known && atom.relation != "coop")
      fail(ErrorKind::Evaluation, "unknown relation '" + atom.relation + "'");
  }
};

}  // namespace

std::set<std::string> evaluate(const Ulrq& query, const FactBase& kb,
                               const std::vector<Rule>& rules) {
  return Evaluator(kb, rules).run(query);
}

}  // namespace kalmqa
