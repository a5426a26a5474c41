#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kalmqa/error.hpp"
#include "kalmqa/prolog_term.hpp"

using namespace kalmqa;

static PTerm parse_one(const std::string& text) {
    PTermReader reader(text);
    auto t = reader.next_clause();
    REQUIRE(t.has_value());
    return *t;
}

TEST_CASE("plain atoms need no quotes") {
    CHECK(plain_atom("direct"));
    CHECK(plain_atom("verb_subject"));
    CHECK(plain_atom("lvp2"));
    CHECK_FALSE(plain_atom("Movie"));
    CHECK_FALSE(plain_atom("Release Year"));
    CHECK_FALSE(plain_atom("co-actor"));
    CHECK_FALSE(plain_atom("verb->subject"));
    CHECK_FALSE(plain_atom(""));
    CHECK_FALSE(plain_atom("1941"));
}

TEST_CASE("atoms, integers, variables, lists, compounds") {
    PTerm t = parse_one("fp('Movie',[role('FilmNm',['bn:00034471n'],[]),role('Id',[],['Integer'])]).");
    REQUIRE(t.is_functor("fp", 2));
    CHECK(t.args[0].kind == PTerm::Kind::Atom);
    CHECK(t.args[0].text == "Movie");
    REQUIRE(t.args[1].kind == PTerm::Kind::List);
    REQUIRE(t.args[1].args.size() == 2);
    const PTerm& role0 = t.args[1].args[0];
    REQUIRE(role0.is_functor("role", 3));
    CHECK(role0.args[1].args.at(0).text == "bn:00034471n");

    PTerm n = parse_one("f(42,-7,X).");
    CHECK(n.args[0].kind == PTerm::Kind::Int);
    CHECK(n.args[0].num == 42);
    CHECK(n.args[1].num == -7);
    CHECK(n.args[2].kind == PTerm::Kind::Var);
    CHECK(n.args[2].text == "X");
}

TEST_CASE("quoted atoms double their quotes") {
    PTerm t = parse_one("alias('it''s','A B','C').");
    CHECK(t.args[0].text == "it's");
    CHECK(write_pterm(t) == "alias('it''s','A B','C')");
}

TEST_CASE("write_pterm is canonical and round-trips") {
    const char* src = "lvp(direct,v,'Movie',[pattern('Director','verb->subject',required)]).";
    PTerm t = parse_one(src);
    std::string text = write_pterm(t);
    CHECK(text == "lvp(direct,v,'Movie',[pattern('Director','verb->subject',required)])");
    PTerm again = parse_one(text + ".");
    CHECK(t == again);
}

TEST_CASE("whitespace and % comments are skipped between clauses") {
    PTermReader reader("% header\n a(1). % trailing\n\n b( 2 , x ).\n% tail\n");
    auto a = reader.next_clause();
    auto b = reader.next_clause();
    auto end = reader.next_clause();
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK_FALSE(end.has_value());
    CHECK(a->is_functor("a", 1));
    CHECK(b->is_functor("b", 2));
    CHECK(b->args[1].text == "x");
}

TEST_CASE("trailing-space atoms survive round-trip") {
    // the frame file carries one synset with a trailing space; it must not be eaten
    PTerm t = parse_one("role('Director',['bn:00027368n '],[]).");
    CHECK(t.args[1].args.at(0).text == "bn:00027368n ");
    CHECK(write_pterm(t) == "role('Director',['bn:00027368n '],[])");
}

TEST_CASE("malformed clauses raise load errors naming the line") {
    auto kind_of = [](const std::string& text) {
        PTermReader reader(text);
        try {
            while (reader.next_clause()) {
            }
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Usage;  // sentinel: no error raised
    };
    CHECK(kind_of("a(1)") == ErrorKind::Load);          // missing dot
    CHECK(kind_of("a('open.") == ErrorKind::Load);      // unterminated quote
    CHECK(kind_of("a(1,).") == ErrorKind::Load);        // empty argument
    CHECK(kind_of("a(1)).") == ErrorKind::Load);        // stray paren
    CHECK(kind_of("a(1).\nb(.") == ErrorKind::Load);    // second clause bad

    PTermReader reader("ok(1).\nbad(");
    reader.next_clause();
    try {
        reader.next_clause();
        FAIL("expected a load error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
}

TEST_CASE("equality is structural") {
    PTerm a = parse_one("f(a,[1,2],'X Y').");
    PTerm b = parse_one("f( a , [ 1 , 2 ] , 'X Y' ).");
    PTerm c = parse_one("f(a,[1,3],'X Y').");
    CHECK(a == b);
    CHECK_FALSE(a == c);
}
