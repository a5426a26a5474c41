#include "kalmqa/drs.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "kalmqa/error.hpp"
#include "kalmqa/prolog_term.hpp"

namespace kalmqa {

std::vector<std::pair<int, int>> DrsTerm::var_args() const {
  std::vector<std::pair<int, int>> out;
  switch (kind) {
    case TermKind::Object:
    case TermKind::Query:
      out.push_back({1, ref});
      break;
    case TermKind::Predicate:
      out.push_back({1, ref});
      out.push_back({3, arg3});
      if (arg4 >= 0) out.push_back({4, arg4});
      break;
    case TermKind::ModifierPp:
    case TermKind::Relation:
      out.push_back({1, ref});
      out.push_back({3, arg3});
      break;
  }
  return out;
}

int DrsTerm::var_at(int position) const {
  for (auto& [pos, var] : var_args())
    if (pos == position) return var;
  return -1;
}

int Drs::find_term(int word, TermKind kind) const {
  for (size_t i = 0; i < terms.size(); ++i)
    if (terms[i].word == word && terms[i].kind == kind) return static_cast<int>(i);
  return -1;
}

int Drs::lexical_unit_term(int word) const {
  int t = find_term(word, TermKind::Predicate);
  if (t < 0) t = find_term(word, TermKind::Object);
  return t;
}

const DrsTerm* Drs::object_with_ref(int ref) const {
  for (auto& t : terms)
    if (t.kind == TermKind::Object && t.ref == ref) return &t;
  return nullptr;
}

namespace {

class CnlParser {
 public:
  explicit CnlParser(const std::vector<Token>& toks) : toks_(toks) {}

  Drs run() {
    if (at_marker("if")) ++i_;
    clause();
    while (!done()) {
      if (at_marker("and") || at_marker("then")) {
        ++i_;
        clause();
      } else {
        bail("expected end of sentence");
      }
    }
    Drs drs;
    drs.tokens = toks_;
    drs.var_count = vars_;
    drs.terms = std::move(terms_);
    std::stable_sort(drs.terms.begin(), drs.terms.end(),
                     [](const DrsTerm& a, const DrsTerm& b) {
                       int ka = a.kind == TermKind::Object ? 0 : 1;
                       int kb = b.kind == TermKind::Object ? 0 : 1;
                       if (ka != kb) return ka < kb;
                       return a.word < b.word;
                     });
    return drs;
  }

 private:
  const std::vector<Token>& toks_;
  size_t i_ = 0;
  std::vector<DrsTerm> terms_;
  int vars_ = 0;
  std::map<std::string, int> noun_ref_;
  std::map<std::string, int> proper_ref_;

  bool done() const { return i_ >= toks_.size(); }
  const Token& cur() const { return toks_[i_]; }
  int word() const { return static_cast<int>(i_) + 1; }
  int new_var() { return vars_++; }

  [[noreturn]] void bail(const std::string& what) const {
    std::ostringstream os;
    os << what;
    if (!done())
      os << " at word " << word() << " ('" << cur().surface << "')";
    fail(ErrorKind::UnparseableSentence, os.str());
  }

  bool at_marker(const char* lemma) const {
    return !done() && cur().pos == Pos::Other && cur().lemma == lemma;
  }
  bool at_clause_end() const {
    return done() || at_marker("and") || at_marker("then");
  }
  bool at_be() const {
    return !done() && cur().pos == Pos::VerbPres && cur().lemma == "be";
  }
  bool at_prep(const char* lemma = nullptr) const {
    return !done() && cur().has_pos(Pos::Prep) && (!lemma || cur().lemma == lemma);
  }
  bool starts_np() const {
    if (done()) return false;
    return cur().has_pos(Pos::Det) || cur().pos == Pos::Proper || cur().is_noun();
  }

  void emit_object(int ref, std::string lexeme, int at) {
    DrsTerm t;
    t.kind = TermKind::Object;
    t.ref = ref;
    t.lexeme = std::move(lexeme);
    t.word = at;
    terms_.push_back(t);
  }

  int emit_predicate(std::string lexeme, int subj, int obj, int at) {
    DrsTerm t;
    t.kind = TermKind::Predicate;
    t.ref = new_var();
    t.lexeme = std::move(lexeme);
    t.arg3 = subj;
    t.arg4 = obj;
    t.word = at;
    terms_.push_back(t);
    return t.ref;
  }

  void emit_modifier(int pred_var, std::string prep, int dep, int at) {
    DrsTerm t;
    t.kind = TermKind::ModifierPp;
    t.ref = pred_var;
    t.lexeme = std::move(prep);
    t.arg3 = dep;
    t.word = at;
    terms_.push_back(t);
  }

  void emit_relation(int left, std::string relator, int right, int at) {
    DrsTerm t;
    t.kind = TermKind::Relation;
    t.ref = left;
    t.lexeme = std::move(relator);
    t.arg3 = right;
    t.word = at;
    terms_.push_back(t);
  }

  void emit_query(int ref, std::string wh, int at) {
    DrsTerm t;
    t.kind = TermKind::Query;
    t.ref = ref;
    t.lexeme = std::move(wh);
    t.word = at;
    terms_.push_back(t);
  }

  void clause() {
    int subj = subject();
    verb_phrase(subj);
    if (!at_clause_end()) bail("unexpected token after clause");
  }

  // Returns the discourse referent of the subject.
  int subject() {
    if (done()) bail("empty clause");
    if (cur().has_pos(Pos::Wh)) {
      std::string wh = cur().lemma;
      int wh_word = word();
      ++i_;
      if (!done() && cur().is_noun()) {
        // wh-determiner: the noun carries the object term.
        int ref = new_var();
        emit_object(ref, cur().lemma, word());
        emit_query(ref, wh, wh_word);
        noun_ref_[cur().lemma] = ref;
        ++i_;
        return ref;
      }
      int ref = new_var();
      emit_object(ref, wh, wh_word);
      emit_query(ref, wh, wh_word);
      return ref;
    }
    return noun_phrase().ref;
  }

  void verb_phrase(int subj) {
    if (done()) bail("missing verb");
    if (at_be()) {
      int be_word = word();
      ++i_;
      if (!done() && cur().pos == Pos::VerbPastPart) {
        passive(subj);
        return;
      }
      if (!starts_np()) bail("expected noun phrase after copula");
      NpResult np = noun_phrase();
      emit_predicate("be", subj, np.ref, be_word);
      return;
    }
    if (cur().pos == Pos::VerbPres) {
      std::string verb = cur().lemma;
      int verb_word = word();
      ++i_;
      int obj = -1;
      if (starts_np()) obj = noun_phrase().ref;
      int pred = emit_predicate(verb, subj, obj, verb_word);
      pp_list(pred);
      return;
    }
    bail("expected verb");
  }

  // "... is VERBed by NP [PP]*", with `i_` on the participle.
  void passive(int patient) {
    std::string verb = cur().lemma;
    int part_word = word();
    ++i_;
    if (!at_prep("by")) bail("expected 'by' after passive participle");
    ++i_;
    if (!starts_np()) bail("expected noun phrase after 'by'");
    NpResult agent = noun_phrase();
    int pred = emit_predicate(verb, agent.ref, patient, part_word);
    pp_list(pred);
  }

  void pp_list(int pred_var) {
    while (at_prep()) {
      std::string prep = cur().lemma;
      int prep_word = word();
      ++i_;
      if (!starts_np()) bail("expected noun phrase after preposition");
      NpResult dep = noun_phrase();
      emit_modifier(pred_var, prep, dep.ref, prep_word);
    }
  }

  struct NpResult {
    int ref;
    int word;
  };

  NpResult noun_phrase() {
    bool definite = false;
    if (!done() && cur().has_pos(Pos::Det)) {
      definite = cur().lemma == "the";
      ++i_;
    }
    if (done()) bail("missing noun");
    int head_word = word();
    int ref = -1;
    if (cur().pos == Pos::Proper) {
      const std::string& name = cur().lemma;
      auto it = proper_ref_.find(name);
      if (it != proper_ref_.end()) {
        ref = it->second;
      } else {
        ref = new_var();
        emit_object(ref, name, head_word);
        proper_ref_[name] = ref;
      }
      ++i_;
    } else if (cur().is_noun()) {
      const std::string& lemma = cur().lemma;
      auto it = noun_ref_.find(lemma);
      if (definite && it != noun_ref_.end()) {
        ref = it->second;
        const DrsTerm* antecedent = nullptr;
        for (auto& t : terms_)
          if (t.kind == TermKind::Object && t.ref == ref) antecedent = &t;
        head_word = antecedent ? antecedent->word : head_word;
      } else {
        ref = new_var();
        emit_object(ref, lemma, head_word);
        noun_ref_[lemma] = ref;
      }
      ++i_;
    } else {
      bail("expected noun or name");
    }
    if (at_prep("of")) {
      int of_word = word();
      ++i_;
      if (!starts_np()) bail("expected noun phrase after 'of'");
      NpResult inner = noun_phrase();
      emit_relation(ref, "of", inner.ref, of_word);
    }
    if (!done() && cur().has_pos(Pos::Rel)) {
      ++i_;
      relative_clause(ref);
    }
    return {ref, head_word};
  }

  void relative_clause(int head) {
    if (done()) bail("empty relative clause");
    if (at_be()) {
      int be_word = word();
      ++i_;
      if (!done() && cur().pos == Pos::VerbPastPart) {
        passive(head);
        return;
      }
      if (!starts_np()) bail("expected noun phrase after copula");
      NpResult np = noun_phrase();
      emit_predicate("be", head, np.ref, be_word);
      return;
    }
    if (!done() && cur().pos == Pos::VerbPres) {
      std::string verb = cur().lemma;
      int verb_word = word();
      ++i_;
      int obj = -1;
      if (starts_np()) obj = noun_phrase().ref;
      int pred = emit_predicate(verb, head, obj, verb_word);
      pp_list(pred);
      return;
    }
    bail("expected verb in relative clause");
  }
};

std::string var_letter(int index) {
  if (index < 26) return std::string(1, static_cast<char>('A' + index));
  return "V" + std::to_string(index - 25);
}

std::string atom_text(const std::string& s) { return write_pterm(PTerm::atom(s)); }

}  // namespace

Drs parse_cnl(const std::vector<Token>& tokens) {
  for (auto& t : tokens)
    if (t.pos == Pos::Punct)
      fail(ErrorKind::UnparseableSentence, "stray punctuation '" + t.surface + "'");
  return CnlParser(tokens).run();
}

std::string render_drs(const Drs& drs) {
  std::map<int, std::string> names;
  auto name = [&](int var) -> std::string {
    auto it = names.find(var);
    if (it != names.end()) return it->second;
    std::string n = var_letter(static_cast<int>(names.size()));
    names.emplace(var, n);
    return n;
  };
  std::ostringstream os;
  bool first = true;
  for (auto& t : drs.terms) {
    if (!first) os << "\n";
    first = false;
    switch (t.kind) {
      case TermKind::Object:
        os << "object(" << name(t.ref) << "," << atom_text(t.lexeme)
           << ",countable,na,eq,1)";
        break;
      case TermKind::Predicate:
        os << "predicate(" << name(t.ref) << "," << atom_text(t.lexeme) << ","
           << name(t.arg3);
        if (t.arg4 >= 0) os << "," << name(t.arg4);
        os << ")";
        break;
      case TermKind::ModifierPp:
        os << "modifier_pp(" << name(t.ref) << "," << atom_text(t.lexeme) << ","
           << name(t.arg3) << ")";
        break;
      case TermKind::Relation:
        os << "relation(" << name(t.ref) << "," << atom_text(t.lexeme) << ","
           << name(t.arg3) << ")";
        break;
      case TermKind::Query:
        os << "query(" << name(t.ref) << "," << atom_text(t.lexeme) << ")";
        break;
    }
    os << "-" << t.sentence << "/" << t.word;
  }
  return os.str();
}

bool has_repeated_variables(const Drs& drs) {
  for (auto& t : drs.terms) {
    auto vars = t.var_args();
    for (size_t a = 0; a < vars.size(); ++a)
      for (size_t b = a + 1; b < vars.size(); ++b)
        if (vars[a].second == vars[b].second) return true;
  }
  return false;
}

}  // namespace kalmqa
