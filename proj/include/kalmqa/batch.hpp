#pragma once

#include <string>
#include <vector>

#include "kalmqa/pipeline.hpp"

namespace kalmqa {

// One line of a question file: `question<TAB>ans1|ans2|...`. The label column
// is optional for answer/template batches and required for audits.
struct QuestionLine {
  std::string question;
  bool has_label = false;
  std::vector<std::string> labels;
};

std::vector<QuestionLine> parse_question_lines(std::string_view text);
std::vector<QuestionLine> load_question_file(const std::string& path);

// Each runner processes questions in parallel over read-only pipeline state
// and emits results serialized in input order. Per-question failures become
// ERROR:<kind> entries; they never abort the batch.

// `question<TAB>ans1|ans2|...` per line, answers sorted.
std::string run_answer_batch(const Pipeline& pipeline,
                             const std::vector<QuestionLine>& lines);

// `question<TAB>verdict<TAB>cause<TAB>computed` per line plus a summary
// footer; lines without a label column are reported as malformed and skipped.
struct AuditSummary {
  std::string report;
  int mislabeled = 0;
  int total = 0;
};
AuditSummary run_audit(const Pipeline& pipeline, const std::vector<QuestionLine>& lines);

// Template groups sorted lexicographically, members in input order, followed
// by the distinct-template count.
std::string run_templates(const Pipeline& pipeline, const std::vector<QuestionLine>& lines);

}  // namespace kalmqa
