#include "kalmqa/ulrq.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "kalmqa/error.hpp"
#include "kalmqa/prolog_term.hpp"

namespace kalmqa {

const LogicTerm* QueryAtom::role_term(const std::string& role) const {
  for (auto& b : bindings)
    if (b.role == role) return &b.term;
  return nullptr;
}

namespace {

std::set<std::pair<std::string, int>> role_words(const CandidateParse& p) {
  std::set<std::pair<std::string, int>> out;
  for (auto& f : p.fillers) out.insert({f.role, f.word});
  return out;
}

std::set<std::pair<int, std::string>> word_patterns(const CandidateParse& p) {
  std::set<std::pair<int, std::string>> out;
  for (auto& f : p.fillers) out.insert({f.word, f.pattern});
  return out;
}

template <typename T>
bool subset(const std::set<T>& small, const std::set<T>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

bool subsumes(const CandidateParse& f, const CandidateParse& g) {
  return f.frame == g.frame && subset(role_words(f), role_words(g));
}

bool alternatives(const CandidateParse& f, const CandidateParse& g) {
  if (f.lu_index != g.lu_index) return false;
  auto wf = word_patterns(f);
  auto wg = word_patterns(g);
  if (!subset(wf, wg) && !subset(wg, wf)) return false;
  return !subsumes(f, g) && !subsumes(g, f);
}

namespace {

void bron_kerbosch(std::vector<int> r, std::vector<int> p, std::vector<int> x,
                   const std::vector<std::vector<bool>>& adj,
                   std::vector<std::vector<int>>& cliques) {
  if (p.empty() && x.empty()) {
    cliques.push_back(std::move(r));
    return;
  }
  std::vector<int> p_copy = p;
  for (int v : p_copy) {
    std::vector<int> r2 = r;
    r2.push_back(v);
    std::vector<int> p2, x2;
    for (int u : p)
      if (adj[v][u]) p2.push_back(u);
    for (int u : x)
      if (adj[v][u]) x2.push_back(u);
    bron_kerbosch(std::move(r2), std::move(p2), std::move(x2), adj, cliques);
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

}  // namespace

std::vector<std::vector<CandidateParse>> maximal_alternative_sets(
    const std::vector<CandidateParse>& parses) {
  int n = static_cast<int>(parses.size());
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      adj[i][j] = adj[j][i] = alternatives(parses[i], parses[j]);
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::vector<std::vector<int>> cliques;
  bron_kerbosch({}, all, {}, adj, cliques);

  std::vector<int> membership(n, 0);
  for (auto& clique : cliques)
    for (int v : clique) ++membership[v];
  for (int v = 0; v < n; ++v)
    if (membership[v] != 1) {
      std::string msg = "alternative sets overlap on:";
      for (auto& c : cliques)
        if (std::find(c.begin(), c.end(), v) != c.end())
          for (int u : c) msg += " " + render_parse(parses[u]);
      fail(ErrorKind::GroupingAmbiguity, msg);
    }

  // Deterministic group order: by smallest member index.
  std::sort(cliques.begin(), cliques.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return *std::min_element(a.begin(), a.end()) <
                     *std::min_element(b.begin(), b.end());
            });
  std::vector<std::vector<CandidateParse>> out;
  for (auto& clique : cliques) {
    std::vector<CandidateParse> group;
    std::sort(clique.begin(), clique.end());
    for (int v : clique) group.push_back(parses[v]);
    out.push_back(std::move(group));
  }
  return out;
}

namespace {

std::string lowercase(std::string s) {
  for (char& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}

LogicTerm term_for_word(const Drs& drs, int word) {
  const Token& tok = drs.tokens[word - 1];
  if (tok.pos == Pos::Proper) return LogicTerm::constant(tok.lemma);
  return LogicTerm::var("w" + std::to_string(word));
}

std::set<int> film_name_words(const std::vector<CandidateParse>& parses) {
  std::set<int> words;
  for (auto& p : parses)
    if (p.frame == "Movie")
      if (const ParseFiller* f = p.find_role("FilmNm")) words.insert(f->word);
  return words;
}

QueryAtom wire_parse(const CandidateParse& parse, const Drs& drs,
                     const FrameStore& frames, const std::set<int>& film_words) {
  QueryAtom atom;
  atom.relation = lowercase(parse.frame);
  const FrameDef& frame = frames.require(parse.frame);
  int film_word = -1;
  if (parse.frame == "Movie") {
    const ParseFiller* f = parse.find_role("FilmNm");
    if (!f)
      fail(ErrorKind::NoInterpretation,
           "movie relation extracted without a film name: " + render_parse(parse));
    film_word = f->word;
  }
  for (auto& role : frame.roles) {
    if (parse.frame == "Movie" && role.name == "Id") {
      atom.bindings.push_back({"Id", LogicTerm::var("id" + std::to_string(film_word))});
      continue;
    }
    const ParseFiller* f = parse.find_role(role.name);
    if (!f) continue;
    if (parse.frame == "Distinct" && film_words.count(f->word)) {
      atom.bindings.push_back(
          {role.name, LogicTerm::var("id" + std::to_string(f->word))});
      continue;
    }
    atom.bindings.push_back({role.name, term_for_word(drs, f->word)});
  }
  return atom;
}

bool atom_mentions(const QueryAtom& atom, const LogicTerm& term) {
  for (auto& b : atom.bindings)
    if (b.term == term) return true;
  return false;
}

}  // namespace

std::vector<QueryAtom> wire_parses(const std::vector<CandidateParse>& parses,
                                   const Drs& drs, const FrameStore& frames) {
  std::set<int> film_words = film_name_words(parses);
  std::vector<QueryAtom> out;
  for (auto& p : parses) out.push_back(wire_parse(p, drs, frames, film_words));
  return out;
}

Ulrq build_ulrq(const std::vector<CandidateParse>& parses, const Drs& drs,
                const FrameStore& frames, const ClassSystem& classes,
                const EntityRegistry& registry) {
  int query_term = -1;
  for (size_t i = 0; i < drs.terms.size(); ++i)
    if (drs.terms[i].kind == TermKind::Query) query_term = static_cast<int>(i);
  if (query_term < 0)
    fail(ErrorKind::NotAQuestion, "sentence has no wh-word");

  // Step 1: prune by role-filler disambiguation.
  std::vector<CandidateParse> kept;
  for (auto& p : parses)
    if (disambiguate(p, drs, registry, classes, frames)) kept.push_back(p);
  if (kept.empty())
    fail(ErrorKind::NoInterpretation, "no candidate parse survives disambiguation");

  // Step 2: delete subsumed parses.
  std::vector<CandidateParse> maximal;
  for (auto& f : kept) {
    bool strictly_subsumed = false;
    for (auto& g : kept)
      if (subsumes(f, g) && !subsumes(g, f)) strictly_subsumed = true;
    if (!strictly_subsumed) maximal.push_back(f);
  }

  // Step 3: group and map through phi.
  auto groups = maximal_alternative_sets(maximal);
  std::set<int> film_words = film_name_words(maximal);
  Ulrq out;
  for (auto& group : groups) {
    AlternativeGroup g;
    for (auto& parse : group)
      g.atoms.push_back(wire_parse(parse, drs, frames, film_words));
    out.groups.push_back(std::move(g));
  }

  // Wiring rule (e): the answer variable is the wh-word's term.
  int wh_ref = drs.terms[query_term].ref;
  const DrsTerm* wh_obj = drs.object_with_ref(wh_ref);
  if (!wh_obj) fail(ErrorKind::NotAQuestion, "wh-word has no discourse referent");
  LogicTerm answer = term_for_word(drs, wh_obj->word);
  auto occurs = [&](const LogicTerm& t) {
    for (auto& g : out.groups)
      for (auto& a : g.atoms)
        if (atom_mentions(a, t)) return true;
    return false;
  };
  if (!occurs(answer)) {
    // Copula question: "what are the films that ..." — the wh-word stands
    // for the copula's predicate nominal.
    bool found = false;
    for (auto& t : drs.terms) {
      if (t.kind == TermKind::Predicate && t.lexeme == "be" && t.arg3 == wh_ref &&
          t.arg4 >= 0) {
        if (const DrsTerm* obj = drs.object_with_ref(t.arg4)) {
          LogicTerm candidate = term_for_word(drs, obj->word);
          if (occurs(candidate)) {
            answer = candidate;
            found = true;
            break;
          }
        }
      }
    }
    if (!found)
      fail(ErrorKind::NoInterpretation,
           "the wh-word is not linked to any extracted relation");
  }
  if (!answer.is_var())
    fail(ErrorKind::NoInterpretation, "answer position is a constant");
  out.answer_var = answer;

  // Disjunctions must agree on the answer variable.
  for (auto& g : out.groups) {
    if (g.atoms.size() < 2) continue;
    for (auto& a : g.atoms)
      if (!atom_mentions(a, out.answer_var))
        fail(ErrorKind::GroupingAmbiguity,
             "alternative group does not share the answer variable");
  }
  return out;
}

namespace {

// Variable-name-independent structural key for canonical atom ordering.
std::string atom_key(const QueryAtom& atom) {
  std::ostringstream os;
  os << (atom.is_distinct() ? "1" : "0") << "|" << atom.relation;
  for (auto& b : atom.bindings) {
    os << "|" << b.role << "=";
    if (b.term.is_var())
      os << "?";
    else
      os << "c:" << b.term.text;
  }
  return os.str();
}

std::string render_const(const std::string& value) {
  bool digits = !value.empty();
  for (char c : value)
    if (c < '0' || c > '9') digits = false;
  if (digits) return value;
  return write_pterm(PTerm::atom(value));
}

std::string render_canonical(const Ulrq& query, bool mask_constants) {
  // Order atoms within groups, then groups, by structural key.
  std::vector<std::vector<QueryAtom>> groups;
  for (auto& g : query.groups) groups.push_back(g.atoms);
  for (auto& g : groups)
    std::stable_sort(g.begin(), g.end(), [](const QueryAtom& a, const QueryAtom& b) {
      return atom_key(a) < atom_key(b);
    });
  std::stable_sort(groups.begin(), groups.end(),
                   [](const std::vector<QueryAtom>& a, const std::vector<QueryAtom>& b) {
                     return atom_key(a.front()) < atom_key(b.front());
                   });

  std::map<std::string, std::string> names;
  names.emplace(query.answer_var.text, "A");
  int next = 1;
  auto var_name = [&](const std::string& internal) -> std::string {
    auto it = names.find(internal);
    if (it != names.end()) return it->second;
    std::string name = next < 26 ? std::string(1, static_cast<char>('A' + next))
                                 : "V" + std::to_string(next - 25);
    ++next;
    names.emplace(internal, name);
    return name;
  };

  auto term_text = [&](const LogicTerm& t) -> std::string {
    if (t.is_var()) return var_name(t.text);
    return mask_constants ? "xxxx" : render_const(t.text);
  };
  auto atom_text = [&](const QueryAtom& a) -> std::string {
    if (a.is_distinct()) {
      std::vector<std::string> items;
      for (auto& b : a.bindings) items.push_back(term_text(b.term));
      std::string out = items.empty() ? "" : items[0];
      for (size_t i = 1; i < items.size(); ++i) out += " \\= " + items[i];
      return out;
    }
    std::string out = a.relation + "(";
    for (size_t i = 0; i < a.bindings.size(); ++i) {
      if (i) out += ",";
      out += write_pterm(PTerm::atom(a.bindings[i].role)) + "=" +
             term_text(a.bindings[i].term);
    }
    return out + ")";
  };

  std::ostringstream os;
  os << "q(A):-";
  bool first = true;
  for (auto& g : groups) {
    if (!first) os << ",";
    first = false;
    if (g.size() == 1) {
      os << atom_text(g[0]);
    } else {
      os << "(";
      for (size_t i = 0; i < g.size(); ++i) {
        if (i) os << ";";
        os << atom_text(g[i]);
      }
      os << ")";
    }
  }
  os << ".";
  return os.str();
}

}  // namespace

std::string render_query(const Ulrq& query) { return render_canonical(query, false); }

std::string standardize_template(const Ulrq& query) {
  return render_canonical(query, true);
}

}  // namespace kalmqa
