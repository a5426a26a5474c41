#include "kalmqa/pipeline.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "kalmqa/error.hpp"

namespace kalmqa {
namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return c >= '0' && c <= '9'; });
}

int role_index(const FrameDef& frame, const std::string& role) {
  for (size_t i = 0; i < frame.roles.size(); ++i)
    if (frame.roles[i].name == role) return static_cast<int>(i);
  return static_cast<int>(frame.roles.size());
}

// Rebuilds the atom's bindings in frame-definition role order.
void sort_bindings(QueryAtom& atom, const FrameDef& frame) {
  std::stable_sort(atom.bindings.begin(), atom.bindings.end(),
                   [&](const Binding& a, const Binding& b) {
                     return role_index(frame, a.role) < role_index(frame, b.role);
                   });
}

}  // namespace

std::string PipelineConfig::data_dir() {
#ifdef KALMQA_DATA_DIR
  return KALMQA_DATA_DIR;
#else
  return "data";
#endif
}

PipelineConfig PipelineConfig::defaults() {
  std::string d = data_dir();
  PipelineConfig cfg;
  cfg.lexicon = d + "/lexicon.tsv";
  cfg.irregulars = d + "/irregulars.tsv";
  cfg.adhoc = d + "/adhoc_rules.tsv";
  cfg.frames = d + "/frames.fp";
  cfg.roleclass = d + "/roleclass.map";
  cfg.class_tree = d + "/class_tree.tsv";
  cfg.noun_classes = d + "/noun_classes.tsv";
  cfg.annotations = d + "/annotations.pl";
  cfg.rules = d + "/rules.cnl";
  return cfg;
}

LvpStore learn_store(const std::vector<Annotation>& annotations,
                     const Lexicon& lexicon, const FrameStore& frames) {
  LvpStore store;
  for (const Annotation& ann : annotations) store.add(learn_lvp(ann, lexicon, frames));
  return store;
}

Pipeline Pipeline::load(const PipelineConfig& cfg) {
  Pipeline p;
  p.lexicon_ = Lexicon::load(cfg.lexicon, cfg.irregulars);
  p.adhoc_ = cfg.adhoc.empty() ? AdhocRules::none() : AdhocRules::load(cfg.adhoc);
  p.frames_ = FrameStore::load_file(cfg.frames);
  p.classes_ = ClassSystem::load_files(cfg.roleclass, cfg.class_tree, cfg.noun_classes);
  p.classes_.validate_total(p.frames_);
  if (!cfg.lvps.empty())
    p.lvps_ = LvpStore::load_file(cfg.lvps);
  else
    p.lvps_ = learn_store(load_annotations_file(cfg.annotations), p.lexicon_, p.frames_);
  if (!cfg.kb.empty()) p.kb_ = FactBase::ingest_file(cfg.kb);
  if (!cfg.rules.empty())
    p.rules_ = load_rules_file(cfg.rules, p.lexicon_, p.adhoc_, p.lvps_, p.frames_,
                               p.classes_, p.kb_.registry());
  return p;
}

Drs Pipeline::parse_question(const std::string& question) const {
  std::vector<Token> tokens = normalize(tokenize(question, lexicon_), lexicon_, adhoc_);
  return parse_cnl(tokens);
}

Ulrq Pipeline::translate(const std::string& question) const {
  Drs drs = parse_question(question);
  std::vector<CandidateParse> parses = parse_sentence(drs, lvps_, frames_);
  return build_ulrq(parses, drs, frames_, classes_, kb_.registry());
}

std::set<std::string> Pipeline::ask(const std::string& question) const {
  return evaluate(translate(question), kb_, rules_);
}

std::string Pipeline::template_of(const std::string& question) const {
  return standardize_template(translate(question));
}

AuditViews Pipeline::make_audit_views() const {
  return AuditViews{kb_.title_merged(), kb_.roles_collapsed()};
}

bool Pipeline::year_title_swap(Ulrq& query) const {
  const FrameDef* movie = frames_.find("Movie");
  if (!movie) return false;
  bool changed = false;
  int fresh = 0;
  for (AlternativeGroup& group : query.groups) {
    for (QueryAtom& atom : group.atoms) {
      if (atom.relation != "movie") continue;
      for (Binding& b : atom.bindings) {
        if (b.term.is_var() || !all_digits(b.term.text)) continue;
        std::string other;
        if (b.role == "FilmNm")
          other = "Release Year";
        else if (b.role == "Release Year")
          other = "FilmNm";
        else
          continue;
        LogicTerm value = b.term;
        b.term = LogicTerm::var("swap" + std::to_string(fresh++));
        bool merged = false;
        for (Binding& o : atom.bindings) {
          if (o.role == other) {
            o.term = value;
            merged = true;
            break;
          }
        }
        if (!merged) atom.bindings.push_back({other, value});
        changed = true;
        break;  // one swap per atom
      }
      sort_bindings(atom, *movie);
    }
  }
  return changed;
}

AuditRecord Pipeline::audit_line(const std::string& question,
                                 const std::set<std::string>& expected,
                                 const AuditViews& views) const {
  AuditRecord rec;
  rec.question = question;
  rec.expected = expected;
  Ulrq query = translate(question);
  rec.computed = evaluate(query, kb_, rules_);
  if (rec.computed == expected) return rec;
  rec.mislabeled = true;
  if (evaluate(query, views.merged, rules_) == expected) {
    rec.cause = "namesake-title";
    return rec;
  }
  Ulrq swapped = query;
  if (year_title_swap(swapped) && evaluate(swapped, kb_, rules_) == expected) {
    rec.cause = "title-vs-year";
    return rec;
  }
  if (evaluate(query, views.collapsed, rules_) == expected) {
    rec.cause = "dual-role";
    return rec;
  }
  rec.cause = "other";
  return rec;
}

LvpStats lvp_stats(const LvpStore& store) {
  std::map<std::tuple<std::string, std::string, std::string>, int> counts;
  int pair_occurrences = 0;
  for (const Lvp& lvp : store.all()) {
    std::vector<std::string> roles;
    for (const LvpPattern& p : lvp.patterns) roles.push_back(p.role);
    std::sort(roles.begin(), roles.end());
    for (size_t i = 0; i < roles.size(); ++i) {
      for (size_t j = i + 1; j < roles.size(); ++j) {
        ++counts[{lvp.frame, roles[i], roles[j]}];
        ++pair_occurrences;
      }
    }
  }
  LvpStats stats;
  for (auto& [key, count] : counts)
    stats.rows.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), count});
  // each unordered role pair extracted by an lvp induces one bridge rule per direction
  stats.bridge_rules = 2 * pair_occurrences;
  return stats;
}

std::string render_stats(const LvpStats& stats) {
  std::ostringstream out;
  for (const RolePairRow& row : stats.rows)
    out << row.frame << '\t' << row.role1 << '\t' << row.role2 << '\t' << row.count << '\n';
  out << "bridge-rules\t" << stats.bridge_rules << '\n';
  return out.str();
}

}  // namespace kalmqa
