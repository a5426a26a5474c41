#include "kalmqa/learner.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "kalmqa/error.hpp"
#include "kalmqa/paraphrase.hpp"
#include "kalmqa/prolog_term.hpp"

namespace kalmqa {

const std::vector<UtilityStep>& utility_catalog() {
  static const std::vector<UtilityStep> catalog = {
      {"verb->subject", TermKind::Predicate, 3, TermKind::Object, 1},
      {"verb->object", TermKind::Predicate, 4, TermKind::Object, 1},
      {"verb->pp", TermKind::Predicate, 1, TermKind::ModifierPp, 1},
      {"pp->dep", TermKind::ModifierPp, 3, TermKind::Object, 1},
      {"object->verb", TermKind::Object, 1, TermKind::Predicate, 4},
      {"lobject->rel", TermKind::Object, 1, TermKind::Relation, 1},
      {"rel->robject", TermKind::Relation, 3, TermKind::Object, 1},
  };
  return catalog;
}

const UtilityStep* find_step(std::string_view name) {
  for (auto& s : utility_catalog())
    if (s.name == name) return &s;
  return nullptr;
}

namespace {

const char* kind_name(TermKind k) {
  switch (k) {
    case TermKind::Object: return "object";
    case TermKind::Predicate: return "predicate";
    case TermKind::ModifierPp: return "modifier_pp";
    case TermKind::Relation: return "relation";
    case TermKind::Query: return "query";
  }
  return "?";
}

std::string term_line(const Drs& drs, size_t index) {
  std::string all = render_drs(drs);
  std::istringstream in(all);
  std::string line;
  for (size_t i = 0; i <= index && std::getline(in, line); ++i) {
  }
  return line;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Load, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

DrsGraph embed(const Drs& drs) {
  for (size_t i = 0; i < drs.terms.size(); ++i) {
    auto vars = drs.terms[i].var_args();
    for (size_t a = 0; a < vars.size(); ++a)
      for (size_t b = a + 1; b < vars.size(); ++b)
        if (vars[a].second == vars[b].second)
          fail(ErrorKind::TrainingRestriction,
               "repeated variable in term " + term_line(drs, i));
  }
  DrsGraph g;
  g.drs = &drs;
  g.adj.resize(drs.terms.size());
  for (size_t i = 0; i < drs.terms.size(); ++i) {
    for (size_t j = i + 1; j < drs.terms.size(); ++j) {
      int shared = -1;
      int count = 0;
      for (auto& [pi, vi] : drs.terms[i].var_args())
        for (auto& [pj, vj] : drs.terms[j].var_args())
          if (vi == vj) {
            shared = vi;
            ++count;
          }
      if (count != 1) continue;
      int pos_i = -1, pos_j = -1;
      for (auto& [p, v] : drs.terms[i].var_args())
        if (v == shared) pos_i = p;
      for (auto& [p, v] : drs.terms[j].var_args())
        if (v == shared) pos_j = p;
      g.adj[i].push_back({static_cast<int>(j), pos_i});
      g.adj[j].push_back({static_cast<int>(i), pos_j});
    }
  }
  for (auto& edges : g.adj)
    std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
      if (a.label != b.label) return a.label < b.label;
      return a.to < b.to;
    });
  return g;
}

std::vector<PathEdge> shortest_path(const DrsGraph& graph, int from, int to) {
  int n = static_cast<int>(graph.adj.size());
  if (from < 0 || from >= n || to < 0 || to >= n)
    fail(ErrorKind::UnreachableFiller, "path endpoint outside graph");
  if (from == to) return {};
  // Distance to target; edges are symmetric as a relation.
  std::vector<int> dist(n, -1);
  std::deque<int> queue{to};
  dist[to] = 0;
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (auto& e : graph.adj[cur])
      if (dist[e.to] < 0) {
        dist[e.to] = dist[cur] + 1;
        queue.push_back(e.to);
      }
  }
  if (dist[from] < 0)
    fail(ErrorKind::UnreachableFiller,
         "no path between terms " + std::to_string(from + 1) + " and " +
             std::to_string(to + 1));
  std::vector<PathEdge> path;
  int cur = from;
  int remaining = dist[from];
  while (cur != to) {
    const GraphEdge* best = nullptr;
    for (auto& e : graph.adj[cur]) {  // adjacency pre-sorted by (label, to)
      if (dist[e.to] == remaining - 1) {
        best = &e;
        break;
      }
    }
    path.push_back({cur, best->to, best->label});
    cur = best->to;
    --remaining;
  }
  return path;
}

std::string path_to_pattern(const std::vector<PathEdge>& path, const DrsGraph& graph) {
  const Drs& drs = *graph.drs;
  std::string out;
  for (auto& edge : path) {
    const DrsTerm& src = drs.terms[edge.from];
    const DrsTerm& dst = drs.terms[edge.to];
    int var = src.var_at(edge.label);
    int dst_pos = -1;
    for (auto& [p, v] : dst.var_args())
      if (v == var) dst_pos = p;
    const UtilityStep* step = nullptr;
    for (auto& s : utility_catalog())
      if (s.src == src.kind && s.src_pos == edge.label && s.dst == dst.kind &&
          s.dst_pos == dst_pos)
        step = &s;
    if (!step)
      fail(ErrorKind::UnsupportedConstruction,
           std::string("no utility step for ") + kind_name(src.kind) + "/" +
               std::to_string(edge.label) + " -> " + kind_name(dst.kind) + "/" +
               std::to_string(dst_pos));
    if (!out.empty()) out += ",";
    out += step->name;
  }
  return out;
}

std::vector<const UtilityStep*> pattern_steps(const std::string& pattern) {
  std::vector<const UtilityStep*> steps;
  size_t start = 0;
  while (start <= pattern.size()) {
    size_t comma = pattern.find(',', start);
    if (comma == std::string::npos) comma = pattern.size();
    std::string name = pattern.substr(start, comma - start);
    const UtilityStep* step = find_step(name);
    if (!step) fail(ErrorKind::Config, "unknown utility step '" + name + "'");
    steps.push_back(step);
    if (comma == pattern.size()) break;
    start = comma + 1;
  }
  return steps;
}

int apply_pattern(const std::string& pattern, const Drs& drs, int lu_term) {
  int cur = lu_term;
  for (const UtilityStep* step : pattern_steps(pattern)) {
    if (cur < 0 || cur >= static_cast<int>(drs.terms.size())) return -1;
    const DrsTerm& src = drs.terms[cur];
    if (src.kind != step->src) return -1;
    int var = src.var_at(step->src_pos);
    if (var < 0) return -1;
    int next = -1;
    for (size_t i = 0; i < drs.terms.size() && next < 0; ++i) {
      if (static_cast<int>(i) == cur) continue;
      if (drs.terms[i].kind == step->dst && drs.terms[i].var_at(step->dst_pos) == var)
        next = static_cast<int>(i);
    }
    if (next < 0) return -1;
    cur = next;
  }
  return cur;
}

std::string render_lvp(const Lvp& lvp) {
  std::vector<PTerm> patterns;
  for (auto& p : lvp.patterns)
    patterns.push_back(PTerm::compound(
        "pattern",
        {PTerm::atom(p.role), PTerm::atom(p.pattern), PTerm::atom("required")}));
  PTerm term = PTerm::compound(
      "lvp", {PTerm::atom(lvp.lexeme), PTerm::atom(std::string(1, lvp.pos)),
              PTerm::atom(lvp.frame), PTerm::list(std::move(patterns))});
  return write_pterm(term);
}

bool same_lvp(const Lvp& a, const Lvp& b) {
  if (a.lexeme != b.lexeme || a.pos != b.pos || a.frame != b.frame) return false;
  auto sorted = [](const Lvp& l) {
    std::vector<LvpPattern> ps = l.patterns;
    std::sort(ps.begin(), ps.end(), [](const LvpPattern& x, const LvpPattern& y) {
      if (x.role != y.role) return x.role < y.role;
      return x.pattern < y.pattern;
    });
    return ps;
  };
  return sorted(a) == sorted(b);
}

LvpStore LvpStore::load_file(const std::string& path) {
  return parse(read_file(path));
}

LvpStore LvpStore::parse(std::string_view text) {
  LvpStore store;
  PTermReader reader(text);
  while (auto clause = reader.next_clause()) {
    if (!clause->is_functor("lvp", 4))
      fail(ErrorKind::Load, "expected lvp/4 clause in lvp store");
    Lvp lvp;
    const PTerm& lex = clause->args[0];
    if (lex.kind != PTerm::Kind::Atom) fail(ErrorKind::Load, "lvp lexeme must be atom");
    lvp.lexeme = lex.text;
    if (clause->args[1].kind != PTerm::Kind::Atom || clause->args[1].text.size() != 1 ||
        (clause->args[1].text != "v" && clause->args[1].text != "n"))
      fail(ErrorKind::Load, "lvp pos must be v or n");
    lvp.pos = clause->args[1].text[0];
    if (clause->args[2].kind != PTerm::Kind::Atom) fail(ErrorKind::Load, "lvp frame must be atom");
    lvp.frame = clause->args[2].text;
    if (clause->args[3].kind != PTerm::Kind::List || clause->args[3].args.empty())
      fail(ErrorKind::Load, "lvp patterns must be a non-empty list");
    for (auto& p : clause->args[3].args) {
      if (!p.is_functor("pattern", 3) || p.args[0].kind != PTerm::Kind::Atom ||
          p.args[1].kind != PTerm::Kind::Atom)
        fail(ErrorKind::Load, "expected pattern(Role,Pat,required)");
      pattern_steps(p.args[1].text);  // validates step names
      lvp.patterns.push_back({p.args[0].text, p.args[1].text});
    }
    store.add(std::move(lvp));
  }
  return store;
}

bool LvpStore::add(Lvp lvp) {
  for (auto& existing : lvps_)
    if (same_lvp(existing, lvp)) return false;
  lvps_.push_back(std::move(lvp));
  return true;
}

std::vector<const Lvp*> LvpStore::for_unit(const std::string& lexeme, char pos) const {
  std::vector<const Lvp*> out;
  for (auto& lvp : lvps_)
    if (lvp.lexeme == lexeme && lvp.pos == pos) out.push_back(&lvp);
  return out;
}

std::string LvpStore::serialize() const {
  std::string out;
  for (auto& lvp : lvps_) {
    out += render_lvp(lvp);
    out += ".\n";
  }
  return out;
}

void LvpStore::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Load, "cannot write " + path);
  out << serialize();
}

std::vector<Annotation> load_annotations_file(const std::string& path) {
  return parse_annotations(read_file(path));
}

std::vector<Annotation> parse_annotations(std::string_view text) {
  std::vector<Annotation> out;
  PTermReader reader(text);
  while (auto clause = reader.next_clause()) {
    if (!clause->is_functor("annotation", 4))
      fail(ErrorKind::Load, "expected annotation/4 clause");
    Annotation ann;
    if (clause->args[0].kind != PTerm::Kind::Atom ||
        clause->args[1].kind != PTerm::Kind::Atom ||
        clause->args[2].kind != PTerm::Kind::Int ||
        clause->args[3].kind != PTerm::Kind::List)
      fail(ErrorKind::Load, "malformed annotation clause");
    ann.sentence = clause->args[0].text;
    ann.frame = clause->args[1].text;
    ann.lu_index = static_cast<int>(clause->args[2].num);
    for (auto& f : clause->args[3].args) {
      if (f.kind != PTerm::Kind::List || f.args.size() != 2 ||
          f.args[0].kind != PTerm::Kind::Atom || f.args[1].kind != PTerm::Kind::Int)
        fail(ErrorKind::Load, "malformed role filler in annotation");
      ann.fillers.push_back({f.args[0].text, static_cast<int>(f.args[1].num)});
    }
    if (ann.fillers.empty())
      fail(ErrorKind::Load, "annotation without role fillers");
    out.push_back(std::move(ann));
  }
  return out;
}

Lvp learn_lvp(const Annotation& ann, const Lexicon& lexicon, const FrameStore& frames) {
  const FrameDef& frame = frames.require(ann.frame);
  std::vector<Token> tokens = tokenize(ann.sentence, lexicon);
  int len = static_cast<int>(tokens.size());
  auto check_index = [&](int idx) {
    if (idx < 1 || idx > len)
      fail(ErrorKind::Load, "annotation index " + std::to_string(idx) +
                                " outside sentence of " + std::to_string(len) + " words");
  };
  check_index(ann.lu_index);
  for (auto& [role, idx] : ann.fillers) {
    check_index(idx);
    if (!frame.find_role(frames.canonical_role(ann.frame, role)))
      fail(ErrorKind::Load, "annotation role '" + role + "' not in frame " + ann.frame);
  }

  Drs drs = parse_cnl(tokens);
  DrsGraph graph = embed(drs);
  int lu = drs.lexical_unit_term(ann.lu_index);
  if (lu < 0)
    fail(ErrorKind::UnreachableFiller,
         "no lexical-unit term at index " + std::to_string(ann.lu_index));

  Lvp lvp;
  lvp.lexeme = drs.terms[lu].lexeme;
  lvp.pos = drs.terms[lu].kind == TermKind::Predicate ? 'v' : 'n';
  lvp.frame = ann.frame;
  for (auto& [role, idx] : ann.fillers) {
    int filler = drs.find_term(idx, TermKind::Object);
    if (filler < 0)
      fail(ErrorKind::UnreachableFiller,
           "no object term at filler index " + std::to_string(idx));
    auto path = shortest_path(graph, lu, filler);
    if (path.empty())
      fail(ErrorKind::UnsupportedConstruction,
           "lexical unit and filler coincide at index " + std::to_string(idx));
    lvp.patterns.push_back({role, path_to_pattern(path, graph)});
  }
  return lvp;
}

}  // namespace kalmqa
