#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kalmqa/token.hpp"

namespace kalmqa {

// Word list backing the paraphraser: surface -> (lemma, pos readings), an
// irregular past -> present table, and noun countability.
class Lexicon {
 public:
  struct Entry {
    std::string lemma;
    std::vector<Pos> pos;
  };

  // lexicon file: surface<TAB>lemma<TAB>pos[,pos...][<TAB>mass]
  // irregulars file: past_form<TAB>present_form
  static Lexicon load(const std::string& lexicon_path,
                      const std::string& irregulars_path);
  static Lexicon from_text(const std::string& lexicon_text,
                           const std::string& irregulars_text);

  // Lookup is case-insensitive on the first letter (sentence-initial caps).
  const Entry* find(const std::string& surface) const;

  // Present-tense base form for a past form: irregular table first, then the
  // form's own lexicon lemma, then -ed stripping.
  std::string present_of(const std::string& surface, const std::string& lemma) const;

  bool countable(const std::string& lemma) const { return !mass_.count(lemma); }

  // direct->directs, watch->watches, play->plays, be->is.
  static std::string third_singular(const std::string& lemma);

 private:
  std::unordered_map<std::string, Entry> entries_;
  std::unordered_map<std::string, std::string> irregular_;
  std::unordered_set<std::string> mass_;
};

}  // namespace kalmqa
