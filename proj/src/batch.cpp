#include "kalmqa/batch.hpp"

#include <atomic>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "kalmqa/error.hpp"

namespace kalmqa {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

std::string join(const std::set<std::string>& values, char sep) {
  std::string out;
  for (const std::string& v : values) {
    if (!out.empty()) out += sep;
    out += v;
  }
  return out;
}

// Runs fn(i) for every index on a small worker pool; exceptions are the
// callee's responsibility.
void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(), 8);
  if (workers < 2 || n < 2) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> cursor{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = cursor.fetch_add(1); i < n; i = cursor.fetch_add(1)) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

std::string error_entry(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e))
    return "ERROR:" + std::string(error_slug(err->kind()));
  return "ERROR:evaluation";
}

}  // namespace

std::vector<QuestionLine> parse_question_lines(std::string_view text) {
  std::vector<QuestionLine> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty() || raw[0] == '#') continue;
    QuestionLine line;
    size_t tab = raw.find('\t');
    if (tab == std::string::npos) {
      line.question = raw;
    } else {
      line.question = raw.substr(0, tab);
      line.has_label = true;
      std::string label = raw.substr(tab + 1);
      if (!label.empty()) line.labels = split(label, '|');
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<QuestionLine> load_question_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Load, "cannot open question file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_question_lines(buf.str());
}

std::string run_answer_batch(const Pipeline& pipeline,
                             const std::vector<QuestionLine>& lines) {
  std::vector<std::string> results(lines.size());
  parallel_for(lines.size(), [&](size_t i) {
    try {
      results[i] = join(pipeline.ask(lines[i].question), '|');
    } catch (const std::exception& e) {
      results[i] = error_entry(e);
    }
  });
  std::string out;
  for (size_t i = 0; i < lines.size(); ++i)
    out += lines[i].question + "\t" + results[i] + "\n";
  return out;
}

AuditSummary run_audit(const Pipeline& pipeline, const std::vector<QuestionLine>& lines) {
  AuditViews views = pipeline.make_audit_views();
  std::vector<std::string> results(lines.size());
  std::atomic<int> mislabeled{0};
  parallel_for(lines.size(), [&](size_t i) {
    const QuestionLine& line = lines[i];
    if (!line.has_label) {
      results[i] = line.question + "\tERROR:malformed-question\t-\t";
      return;
    }
    try {
      std::set<std::string> expected(line.labels.begin(), line.labels.end());
      AuditRecord rec = pipeline.audit_line(line.question, expected, views);
      std::string verdict = rec.mislabeled ? "mislabeled" : "match";
      std::string cause = rec.mislabeled ? rec.cause : "-";
      results[i] = line.question + "\t" + verdict + "\t" + cause + "\t" +
                   join(rec.computed, '|');
      if (rec.mislabeled) mislabeled.fetch_add(1);
    } catch (const std::exception& e) {
      results[i] = line.question + "\t" + error_entry(e) + "\t-\t";
    }
  });
  AuditSummary summary;
  for (const std::string& r : results) summary.report += r + "\n";
  summary.mislabeled = mislabeled.load();
  summary.total = static_cast<int>(lines.size());
  summary.report += "# mislabeled " + std::to_string(summary.mislabeled) + "/" +
                    std::to_string(summary.total) + "\n";
  return summary;
}

std::string run_templates(const Pipeline& pipeline, const std::vector<QuestionLine>& lines) {
  std::vector<std::string> keys(lines.size());
  parallel_for(lines.size(), [&](size_t i) {
    try {
      keys[i] = pipeline.template_of(lines[i].question);
    } catch (const std::exception& e) {
      keys[i] = error_entry(e);
    }
  });
  std::map<std::string, std::vector<size_t>> groups;
  for (size_t i = 0; i < lines.size(); ++i) groups[keys[i]].push_back(i);
  std::string out;
  for (auto& [key, members] : groups) {
    out += "template\t" + key + "\n";
    out += "count\t" + std::to_string(members.size()) + "\n";
    for (size_t i : members) out += "member\t" + lines[i].question + "\n";
    out += "\n";
  }
  out += "distinct-templates\t" + std::to_string(groups.size()) + "\n";
  return out;
}

}  // namespace kalmqa
