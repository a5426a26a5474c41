#pragma once

#include <string>
#include <vector>

#include "kalmqa/lexicon.hpp"
#include "kalmqa/token.hpp"

namespace kalmqa {

// Ordered surface-sequence rewrites for dataset-specific phrasings
// ("has the same actor of" -> "shares an actor with"). Patterns never match
// across entity tokens.
class AdhocRules {
 public:
  static AdhocRules load(const std::string& path);
  static AdhocRules from_text(const std::string& text);
  static AdhocRules none() { return AdhocRules(); }

  std::vector<Token> apply(std::vector<Token> tokens, const Lexicon& lx) const;

  struct Rule {
    std::vector<std::string> match;        // lowercased surfaces
    std::vector<std::string> replacement;  // surfaces, retagged via the lexicon
  };
  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::vector<Rule> rules_;
};

// Splits a raw question into tokens. [...] spans become single proper tokens
// (surface hyphen-joined, lemma keeps the original spacing); other words are
// tagged via the lexicon; unknown capitalized or all-digit words become
// proper; remaining unknowns become other. Trailing sentence punctuation is
// dropped. Overlapping or unclosed brackets raise malformed-question.
std::vector<Token> tokenize(const std::string& text, const Lexicon& lx);

// Appendix-A-style normalization, applied in order: ad-hoc rewrites, compound
// proper merging, participial-clause -> relative-clause rewriting, tense
// normalization, article insertion. Idempotent.
std::vector<Token> normalize(std::vector<Token> tokens, const Lexicon& lx,
                             const AdhocRules& adhoc);

std::string render_tokens(const std::vector<Token>& tokens);

}  // namespace kalmqa
