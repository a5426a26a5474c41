#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "kalmqa/batch.hpp"
#include "kalmqa/error.hpp"
#include "kalmqa/pipeline.hpp"

namespace {

using namespace kalmqa;

void write_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Load, "cannot write file: " + path);
  out << text;
}

struct CommonOpts {
  std::string kb;
  std::string lvps;
  std::string frames;
  std::string rules;

  void attach(CLI::App& cmd, bool kb_required) {
    PipelineConfig d = PipelineConfig::defaults();
    CLI::Option* kb_opt = cmd.add_option("--kb", kb, "MetaQA triple file");
    if (kb_required) kb_opt->required();
    cmd.add_option("--lvps", lvps, "lvp store file (default: learn from bundled annotations)");
    frames = d.frames;
    cmd.add_option("--frames", frames, "frame ontology file");
    rules = d.rules;
    cmd.add_option("--rules", rules, "derived-relation rule sentences");
  }

  Pipeline load() const {
    PipelineConfig cfg = PipelineConfig::defaults();
    cfg.kb = kb;
    cfg.lvps = lvps;
    cfg.frames = frames;
    cfg.rules = rules;
    return Pipeline::load(cfg);
  }
};

int cmd_ingest(const std::string& kb_path) {
  FactBase kb = FactBase::ingest_file(kb_path);
  std::cout << "films\t" << kb.film_count() << "\n";
  std::cout << "facts\t" << kb.fact_count() << "\n";
  return 0;
}

int cmd_learn(const std::string& annotations_path, const std::string& out_path) {
  PipelineConfig cfg = PipelineConfig::defaults();
  Lexicon lexicon = Lexicon::load(cfg.lexicon, cfg.irregulars);
  FrameStore frames = FrameStore::load_file(cfg.frames);
  LvpStore store = learn_store(load_annotations_file(annotations_path), lexicon, frames);
  store.save_file(out_path);
  std::cout << "lvps\t" << store.size() << "\n";
  return 0;
}

int cmd_parse(const CommonOpts& opts, const std::string& sentence) {
  Pipeline p = opts.load();
  Drs drs = p.parse_question(sentence);
  std::cout << render_drs(drs) << "\n";
  for (const CandidateParse& parse : parse_sentence(drs, p.lvps(), p.frames()))
    std::cout << render_parse(parse) << "\n";
  return 0;
}

int cmd_answer(const CommonOpts& opts, const std::string& questions, const std::string& out) {
  Pipeline p = opts.load();
  write_file(out, run_answer_batch(p, load_question_file(questions)));
  return 0;
}

int cmd_audit(const CommonOpts& opts, const std::string& questions, const std::string& report) {
  Pipeline p = opts.load();
  AuditSummary summary = run_audit(p, load_question_file(questions));
  write_file(report, summary.report);
  std::cout << "mislabeled\t" << summary.mislabeled << "/" << summary.total << "\n";
  return 0;
}

int cmd_templates(const CommonOpts& opts, const std::string& questions, const std::string& out) {
  Pipeline p = opts.load();
  write_file(out, run_templates(p, load_question_file(questions)));
  return 0;
}

int cmd_stats(const std::string& lvps_path) {
  LvpStore store;
  if (lvps_path.empty()) {
    PipelineConfig cfg = PipelineConfig::defaults();
    Lexicon lexicon = Lexicon::load(cfg.lexicon, cfg.irregulars);
    FrameStore frames = FrameStore::load_file(cfg.frames);
    store = learn_store(load_annotations_file(cfg.annotations), lexicon, frames);
  } else {
    store = LvpStore::load_file(lvps_path);
  }
  std::cout << render_stats(lvp_stats(store));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlled-English question answering over MetaQA movie facts"};
  app.require_subcommand(1);

  std::string kb_path;
  CLI::App* ingest = app.add_subcommand("ingest", "Load a triple file and report its size");
  ingest->add_option("--kb", kb_path, "MetaQA triple file")->required();

  std::string annotations_path, lvps_out;
  CLI::App* learn = app.add_subcommand("learn", "Learn lvps from annotated sentences");
  {
    PipelineConfig d = PipelineConfig::defaults();
    annotations_path = d.annotations;
  }
  learn->add_option("--annotations", annotations_path, "annotation facts");
  learn->add_option("--out", lvps_out, "output lvp store")->required();

  CommonOpts parse_opts;
  std::string sentence;
  CLI::App* parse = app.add_subcommand("parse", "Print the DRS and candidate parses");
  parse_opts.attach(*parse, false);
  parse->add_option("sentence", sentence, "sentence text")->required();

  CommonOpts answer_opts;
  std::string answer_questions, answer_out;
  CLI::App* answer = app.add_subcommand("answer", "Answer a question batch");
  answer_opts.attach(*answer, true);
  answer->add_option("--questions", answer_questions, "question file")->required();
  answer->add_option("--out", answer_out, "results file (default stdout)");

  CommonOpts audit_opts;
  std::string audit_questions, audit_report;
  CLI::App* audit = app.add_subcommand("audit", "Audit labeled questions for mislabels");
  audit_opts.attach(*audit, true);
  audit->add_option("--questions", audit_questions, "labeled question file")->required();
  audit->add_option("--report", audit_report, "report file (default stdout)");

  CommonOpts tmpl_opts;
  std::string tmpl_questions, tmpl_out;
  CLI::App* templates = app.add_subcommand("templates", "Group questions by query template");
  tmpl_opts.attach(*templates, false);
  templates->add_option("--questions", tmpl_questions, "question file")->required();
  templates->add_option("--out", tmpl_out, "groups file (default stdout)");

  std::string stats_lvps;
  CLI::App* stats = app.add_subcommand("stats", "Report lvp role-pair counts");
  stats->add_option("--lvps", stats_lvps, "lvp store file (default: bundled annotations)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*ingest) return cmd_ingest(kb_path);
    if (*learn) return cmd_learn(annotations_path, lvps_out);
    if (*parse) return cmd_parse(parse_opts, sentence);
    if (*answer) return cmd_answer(answer_opts, answer_questions, answer_out);
    if (*audit) return cmd_audit(audit_opts, audit_questions, audit_report);
    if (*templates) return cmd_templates(tmpl_opts, tmpl_questions, tmpl_out);
    if (*stats) return cmd_stats(stats_lvps);
  } catch (const kalmqa::Error& e) {
    std::cerr << "error: " << error_slug(e.kind()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
