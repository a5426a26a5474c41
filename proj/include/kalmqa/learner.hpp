#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kalmqa/drs.hpp"
#include "kalmqa/frames.hpp"
#include "kalmqa/lexicon.hpp"

namespace kalmqa {

// One navigation step of a grammatical pattern: from a term of kind `src`
// whose argument at `src_pos` is variable V, to the term of kind `dst`
// holding V at `dst_pos`.
struct UtilityStep {
  std::string name;
  TermKind src;
  int src_pos;
  TermKind dst;
  int dst_pos;
};

// The closed catalog (verb->subject, verb->object, verb->pp, pp->dep,
// object->verb, lobject->rel, rel->robject).
const std::vector<UtilityStep>& utility_catalog();
const UtilityStep* find_step(std::string_view name);

struct GraphEdge {
  int to;
  int label;  // argument position of the shared variable in the source term
};

struct DrsGraph {
  const Drs* drs = nullptr;
  std::vector<std::vector<GraphEdge>> adj;  // node order = term order
};

// Embeds a DRS as a labeled graph: one node per term, a bidirectional edge
// pair between any two terms sharing exactly one variable. Training
// restriction: repeated-variable terms are rejected.
DrsGraph embed(const Drs& drs);

struct PathEdge {
  int from;
  int to;
  int label;
};

// Minimum-length path, ties broken stepwise by smallest (label, target node)
// pair. No path raises unreachable-filler.
std::vector<PathEdge> shortest_path(const DrsGraph& graph, int from, int to);

// Maps each hop to its unique catalog step and joins the names with commas.
// A hop outside the catalog raises unsupported-construction.
std::string path_to_pattern(const std::vector<PathEdge>& path, const DrsGraph& graph);

// Splits a rendered pattern into catalog steps (configuration error on an
// unknown step name).
std::vector<const UtilityStep*> pattern_steps(const std::string& pattern);

// Navigates `pattern` from the term at index `lu_term`; returns the reached
// term index, or -1 when some step finds no matching term (the lvp does not
// apply).
int apply_pattern(const std::string& pattern, const Drs& drs, int lu_term);

struct LvpPattern {
  std::string role;
  std::string pattern;

  bool operator==(const LvpPattern&) const = default;
};

struct Lvp {
  std::string lexeme;
  char pos = 'v';  // v or n
  std::string frame;
  std::vector<LvpPattern> patterns;
};

std::string render_lvp(const Lvp& lvp);  // paper notation, no trailing '.'

// Structural equality modulo pattern order.
bool same_lvp(const Lvp& a, const Lvp& b);

class LvpStore {
 public:
  static LvpStore load_file(const std::string& path);
  static LvpStore parse(std::string_view text);

  bool add(Lvp lvp);  // false when an equal lvp is already stored
  const std::vector<Lvp>& all() const { return lvps_; }
  size_t size() const { return lvps_.size(); }
  std::vector<const Lvp*> for_unit(const std::string& lexeme, char pos) const;

  std::string serialize() const;  // one `lvp(...).` per line
  void save_file(const std::string& path) const;

 private:
  std::vector<Lvp> lvps_;
};

struct Annotation {
  std::string sentence;
  std::string frame;
  int lu_index = 0;
  std::vector<std::pair<std::string, int>> fillers;  // (role, word index)
};

std::vector<Annotation> load_annotations_file(const std::string& path);
std::vector<Annotation> parse_annotations(std::string_view text);

// Parses the training sentence (no paraphrase normalization: indices are
// literal), embeds it, and derives one pattern per annotated role.
Lvp learn_lvp(const Annotation& ann, const Lexicon& lexicon, const FrameStore& frames);

}  // namespace kalmqa
