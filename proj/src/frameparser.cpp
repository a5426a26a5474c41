#include "kalmqa/frameparser.hpp"

#include <algorithm>
#include <sstream>

#include "kalmqa/error.hpp"
#include "kalmqa/prolog_term.hpp"

namespace kalmqa {

const ParseFiller* CandidateParse::find_role(const std::string& role) const {
  for (auto& f : fillers)
    if (f.role == role) return &f;
  return nullptr;
}

std::vector<LexicalUnit> candidate_lexical_units(const Drs& drs) {
  std::vector<LexicalUnit> out;
  for (auto& t : drs.terms) {
    if (t.kind == TermKind::Object)
      out.push_back({t.lexeme, 'n', t.word});
    else if (t.kind == TermKind::Predicate)
      out.push_back({t.lexeme, 'v', t.word});
  }
  return out;
}

namespace {

const Token* token_at(const Drs& drs, int word) {
  if (word < 1 || word > static_cast<int>(drs.tokens.size())) return nullptr;
  return &drs.tokens[word - 1];
}

bool constant_filler(const Token& t) { return t.pos == Pos::Proper; }

// Constant fillers must satisfy the role's declared type constraints;
// variable fillers (common nouns, wh-words) are typed by class instead.
bool constraints_hold(const CandidateParse& parse, const Drs& drs,
                      const FrameStore& frames) {
  const FrameDef* frame = frames.find(parse.frame);
  if (!frame) return false;
  for (auto& filler : parse.fillers) {
    const RoleDef* role = frame->find_role(filler.role);
    if (!role) return false;
    const Token* tok = token_at(drs, filler.word);
    if (!tok || !constant_filler(*tok)) continue;
    for (auto& constraint : role->constraints)
      if (!check_constraint(constraint, tok->lemma)) return false;
  }
  return true;
}

}  // namespace

std::vector<CandidateParse> parse_sentence(const Drs& drs, const LvpStore& store,
                                           const FrameStore& frames) {
  std::vector<CandidateParse> out;
  for (auto& unit : candidate_lexical_units(drs)) {
    int lu_term = drs.lexical_unit_term(unit.word);
    if (lu_term < 0) continue;
    for (const Lvp* lvp : store.for_unit(unit.lexeme, unit.pos)) {
      CandidateParse parse;
      parse.frame = lvp->frame;
      parse.lu_index = unit.word;
      bool ok = true;
      for (auto& p : lvp->patterns) {
        int reached = apply_pattern(p.pattern, drs, lu_term);
        if (reached < 0 || drs.terms[reached].kind != TermKind::Object) {
          ok = false;
          break;
        }
        parse.fillers.push_back({frames.canonical_role(lvp->frame, p.role),
                                 drs.terms[reached].word, p.pattern});
      }
      if (!ok || parse.fillers.empty()) continue;
      if (!constraints_hold(parse, drs, frames)) continue;
      std::sort(parse.fillers.begin(), parse.fillers.end());
      out.push_back(std::move(parse));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool disambiguate(const CandidateParse& parse, const Drs& drs,
                  const EntityRegistry& registry, const ClassSystem& classes,
                  const FrameStore& frames) {
  if (!constraints_hold(parse, drs, frames)) return false;
  for (auto& filler : parse.fillers) {
    const Token* tok = token_at(drs, filler.word);
    if (!tok) return false;
    if (tok->has_pos(Pos::Wh)) continue;
    std::string required = classes.role_class(parse.frame, filler.role);
    if (required == "any") continue;
    if (constant_filler(*tok)) {
      const std::set<std::string>* known = registry.classes(tok->lemma);
      if (!known) continue;  // unknown entity: defer to evaluation
      if (!classes.proper_compatible(*known, required)) return false;
    } else {
      if (!classes.noun_compatible(classes.noun_class(tok->lemma), required))
        return false;
    }
  }
  return true;
}

std::string render_parse(const CandidateParse& parse) {
  std::ostringstream os;
  os << parse.frame << "@" << parse.lu_index << "[";
  for (size_t i = 0; i < parse.fillers.size(); ++i) {
    if (i) os << ",";
    os << parse.fillers[i].role << "@" << parse.fillers[i].word << ":"
       << write_pterm(PTerm::atom(parse.fillers[i].pattern));
  }
  os << "]";
  return os.str();
}

}  // namespace kalmqa
