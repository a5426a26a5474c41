#pragma once

#include <set>
#include <string>
#include <vector>

#include "kalmqa/drs.hpp"
#include "kalmqa/engine.hpp"
#include "kalmqa/frameparser.hpp"
#include "kalmqa/frames.hpp"
#include "kalmqa/learner.hpp"
#include "kalmqa/lexicon.hpp"
#include "kalmqa/paraphrase.hpp"
#include "kalmqa/ulrq.hpp"

namespace kalmqa {

// File locations for one pipeline instance. Empty lvps means "learn from the
// annotations file"; empty kb/rules load nothing (parsing-only use).
struct PipelineConfig {
  std::string lexicon;
  std::string irregulars;
  std::string adhoc;
  std::string frames;
  std::string roleclass;
  std::string class_tree;
  std::string noun_classes;
  std::string annotations;
  std::string lvps;
  std::string rules;
  std::string kb;

  // Bundled data directory (compile-time KALMQA_DATA_DIR).
  static std::string data_dir();
  // All paths pointing at the bundled data; kb left empty.
  static PipelineConfig defaults();
};

struct AuditRecord {
  std::string question;
  std::set<std::string> expected;
  std::set<std::string> computed;
  bool mislabeled = false;
  std::string cause;  // namesake-title | dual-role | title-vs-year | other; empty on match
};

// Prebuilt relaxed-identity fact bases used by the audit cause probes.
struct AuditViews {
  FactBase merged;     // film identity by title
  FactBase collapsed;  // person roles shared across Actor/Director/Writer
};

class Pipeline {
 public:
  static Pipeline load(const PipelineConfig& cfg);

  const Lexicon& lexicon() const { return lexicon_; }
  const AdhocRules& adhoc() const { return adhoc_; }
  const FrameStore& frames() const { return frames_; }
  const ClassSystem& classes() const { return classes_; }
  const LvpStore& lvps() const { return lvps_; }
  const FactBase& kb() const { return kb_; }
  const std::vector<Rule>& rules() const { return rules_; }

  // normalize -> parse_cnl over one question.
  Drs parse_question(const std::string& question) const;
  // Full translation: question text -> Ulrq. Throws on any pipeline error.
  Ulrq translate(const std::string& question) const;
  // translate + evaluate; answers sorted lexicographically by std::set.
  std::set<std::string> ask(const std::string& question) const;
  // Canonical masked template of the question's query.
  std::string template_of(const std::string& question) const;

  AuditViews make_audit_views() const;
  AuditRecord audit_line(const std::string& question,
                         const std::set<std::string>& expected,
                         const AuditViews& views) const;

 private:
  Lexicon lexicon_;
  AdhocRules adhoc_;
  FrameStore frames_;
  ClassSystem classes_;
  LvpStore lvps_;
  FactBase kb_;
  std::vector<Rule> rules_;

  // title-vs-year probe: numeric FilmNm constants reread as Release Year and
  // vice versa. False when the query has no such constant.
  bool year_title_swap(Ulrq& query) const;
};

// Learns one lvp per annotation, deduplicating structurally equal results.
LvpStore learn_store(const std::vector<Annotation>& annotations,
                     const Lexicon& lexicon, const FrameStore& frames);

struct RolePairRow {
  std::string frame;
  std::string role1;  // pair sorted lexicographically
  std::string role2;
  int count = 0;
};

struct LvpStats {
  std::vector<RolePairRow> rows;  // sorted by (frame, role1, role2)
  int bridge_rules = 0;           // two per role-pair lvp triple
};

LvpStats lvp_stats(const LvpStore& store);
std::string render_stats(const LvpStats& stats);

}  // namespace kalmqa
