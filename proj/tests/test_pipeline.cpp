#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "kalmqa/batch.hpp"
#include "kalmqa/error.hpp"
#include "kalmqa/pipeline.hpp"

using namespace kalmqa;

namespace {

Pipeline fixture_pipeline() {
    auto cfg = PipelineConfig::defaults();
    cfg.kb = cfg.data_dir() + "/fixtures/kb.txt";
    return Pipeline::load(cfg);
}

}  // namespace

TEST_CASE("defaults point at the bundled data") {
    auto cfg = PipelineConfig::defaults();
    CHECK(cfg.lexicon == PipelineConfig::data_dir() + "/lexicon.tsv");
    CHECK(cfg.frames == PipelineConfig::data_dir() + "/frames.fp");
    CHECK(cfg.kb.empty());
    CHECK(cfg.lvps.empty());  // learned from annotations on load
}

TEST_CASE("load learns lvps when no lvp file is given") {
    Pipeline p = fixture_pipeline();
    CHECK(p.lvps().size() == 22);
    CHECK(p.rules().size() == 5);
    CHECK(p.kb().film_count() == 30);
}

TEST_CASE("load accepts a saved lvp file too") {
    auto cfg = PipelineConfig::defaults();
    Pipeline learned = Pipeline::load(cfg);
    std::string path = "/tmp/kalmqa_test_saved.lvps";
    learned.lvps().save_file(path);
    cfg.lvps = path;
    Pipeline loaded = Pipeline::load(cfg);
    CHECK(loaded.lvps().size() == learned.lvps().size());
}

TEST_CASE("ask answers through the whole pipeline") {
    Pipeline p = fixture_pipeline();
    CHECK(p.ask("Who appears in [Greta Olin] directed films?") ==
          std::set<std::string>{"Ingrid Dahl", "Jonas Keller", "Nils Hagen", "Petra Kovac"});
    CHECK(p.ask("Who wrote a film that shares a director with [Still Waters]?") ==
          std::set<std::string>{"Mira Sandoval", "Yuki Tanabe"});
}

TEST_CASE("asking without a fact base answers empty") {
    Pipeline p = Pipeline::load(PipelineConfig::defaults());
    CHECK(p.ask("Who directs [Titanic]?").empty());
}

TEST_CASE("template_of reproduces the reference template") {
    Pipeline p = fixture_pipeline();
    CHECK(p.template_of("Which films share the same actor of [Bright Star]?") ==
          "q(A):-movie('FilmNm'=A,'Id'=B,'Actor'=C),movie('FilmNm'=xxxx,'Id'=D,'Actor'=C),B \\= D.");
    CHECK(p.template_of("What are the films that have the same actor of [Friday the 13th]?") ==
          p.template_of("Which films share the same actor of [Bright Star]?"));
}

TEST_CASE("audit_line flags relaxed-identity causes") {
    Pipeline p = fixture_pipeline();
    AuditViews views = p.make_audit_views();

    AuditRecord ok = p.audit_line("Who directs [Titanic]?", {"James Cameron"}, views);
    CHECK_FALSE(ok.mislabeled);
    CHECK(ok.cause.empty());
    CHECK(ok.computed == std::set<std::string>{"James Cameron"});

    AuditRecord namesake = p.audit_line(
        "Who is a co-actor of [Sophie Marchand]?",
        {"Alma Reyes", "Clara Voss", "Daniel Okafor", "Victor Lund"}, views);
    CHECK(namesake.mislabeled);
    CHECK(namesake.cause == "namesake-title");

    AuditRecord dual = p.audit_line(
        "What is a release year of a film that is directed by [Thomas Mann]?", {"1971"}, views);
    CHECK(dual.mislabeled);
    CHECK(dual.cause == "dual-role");

    AuditRecord swap = p.audit_line("Who directs [1941]?", {"Edmund Goulding", "Orson Welles"},
                                    views);
    CHECK(swap.mislabeled);
    CHECK(swap.cause == "title-vs-year");

    AuditRecord other = p.audit_line("Who directs [Titanic]?", {"Nobody At All"}, views);
    CHECK(other.mislabeled);
    CHECK(other.cause == "other");
}

TEST_CASE("lvp statistics") {
    Pipeline p = fixture_pipeline();
    LvpStats stats = lvp_stats(p.lvps());
    // every bundled lvp has exactly two roles, so pair occurrences = lvp count
    CHECK(stats.bridge_rules == 2 * 22);
    int total = 0;
    bool found = false;
    for (const RolePairRow& row : stats.rows) {
        total += row.count;
        CHECK(row.role1 < row.role2);
        if (row.frame == "Movie" && row.role1 == "Director" && row.role2 == "FilmNm") {
            CHECK(row.count == 4);  // direct, director-of, and two share variants
            found = true;
        }
    }
    CHECK(found);
    CHECK(total == 22);

    std::string rendered = render_stats(stats);
    CHECK(rendered.find("Movie\tDirector\tFilmNm\t4\n") != std::string::npos);
    CHECK(rendered.find("bridge-rules\t44\n") != std::string::npos);
}

TEST_CASE("question lines parse labels after the first tab") {
    auto lines = parse_question_lines(
        "Who directs [Titanic]?\tJames Cameron\n"
        "Who is nobody?\tA|B\n"
        "# comment\n"
        "\n"
        "Unlabeled question?\n"
        "Empty label?\t\n");
    REQUIRE(lines.size() == 4);
    CHECK(lines[0].question == "Who directs [Titanic]?");
    REQUIRE(lines[0].has_label);
    CHECK(lines[0].labels == std::vector<std::string>{"James Cameron"});
    CHECK(lines[1].labels == std::vector<std::string>{"A", "B"});
    CHECK_FALSE(lines[2].has_label);
    CHECK(lines[3].has_label);
    CHECK(lines[3].labels.empty());
    CHECK_THROWS_AS(load_question_file("/nonexistent.tsv"), Error);
}

TEST_CASE("answer batches preserve order and carry per-question errors") {
    Pipeline p = fixture_pipeline();
    auto lines = parse_question_lines(
        "Who directs [Titanic]?\n"
        "Who directs a blargh?\n"
        "Who is a co-writer of [Harriet Calloway]?\n");
    std::string out = run_answer_batch(p, lines);
    CHECK(out ==
          "Who directs [Titanic]?\tJames Cameron\n"
          "Who directs a blargh?\tERROR:unparseable-sentence\n"
          "Who is a co-writer of [Harriet Calloway]?\t\n");
    // a second run is byte-identical (parallel workers, deterministic order)
    CHECK(run_answer_batch(p, lines) == out);
}

TEST_CASE("audit batches report verdict, cause, and a summary") {
    Pipeline p = fixture_pipeline();
    auto lines = parse_question_lines(
        "Who directs [Titanic]?\tJames Cameron\n"
        "Who directs [2010]?\tChristopher Nolan\n"
        "No label here\n");
    AuditSummary s = run_audit(p, lines);
    CHECK(s.total == 3);
    CHECK(s.mislabeled == 1);
    std::istringstream in(s.report);
    std::string l1, l2, l3, footer;
    std::getline(in, l1);
    std::getline(in, l2);
    std::getline(in, l3);
    std::getline(in, footer);
    CHECK(l1 == "Who directs [Titanic]?\tmatch\t-\tJames Cameron");
    CHECK(l2 == "Who directs [2010]?\tmislabeled\ttitle-vs-year\tPeter Hyams");
    CHECK(l3 == "No label here\tERROR:malformed-question\t-\t");
    CHECK(footer == "# mislabeled 1/3");
}

TEST_CASE("template batches group by canonical template") {
    Pipeline p = fixture_pipeline();
    auto lines = parse_question_lines(
        "Who directs [Titanic]?\n"
        "Who directs [Still Waters]?\n"
        "Who is a co-actor of [Clara Voss]?\n");
    std::string out = run_templates(p, lines);
    CHECK(out.find("template\tq(A):-coop('Actor'=A,'Actor2'=xxxx).\n") != std::string::npos);
    CHECK(out.find("template\tq(A):-movie('FilmNm'=xxxx,'Id'=B,'Director'=A).\n") !=
          std::string::npos);
    CHECK(out.find("count\t2\n") != std::string::npos);
    CHECK(out.find("member\tWho directs [Titanic]?\n") != std::string::npos);
    CHECK(out.find("distinct-templates\t2\n") != std::string::npos);
}
