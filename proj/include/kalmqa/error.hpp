#pragma once

#include <stdexcept>
#include <string>

namespace kalmqa {

// One error type for the whole pipeline; the kind keeps per-question batch
// reporting (ERROR:<kind>) and exit-code mapping simple.
enum class ErrorKind {
  Usage,
  Load,
  Config,
  MalformedQuestion,
  UnparseableSentence,
  TrainingRestriction,
  UnreachableFiller,
  UnsupportedConstruction,
  NotAQuestion,
  NoInterpretation,
  GroupingAmbiguity,
  RuleDefinition,
  Ingest,
  Evaluation,
};

inline const char* error_slug(ErrorKind k) {
  switch (k) {
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Load: return "load";
    case ErrorKind::Config: return "config";
    case ErrorKind::MalformedQuestion: return "malformed-question";
    case ErrorKind::UnparseableSentence: return "unparseable-sentence";
    case ErrorKind::TrainingRestriction: return "training-restriction";
    case ErrorKind::UnreachableFiller: return "unreachable-filler";
    case ErrorKind::UnsupportedConstruction: return "unsupported-construction";
    case ErrorKind::NotAQuestion: return "not-a-question";
    case ErrorKind::NoInterpretation: return "no-interpretation";
    case ErrorKind::GroupingAmbiguity: return "grouping-ambiguity";
    case ErrorKind::RuleDefinition: return "rule-definition";
    case ErrorKind::Ingest: return "ingest";
    case ErrorKind::Evaluation: return "evaluation";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) {
  throw Error(k, msg);
}

}  // namespace kalmqa
