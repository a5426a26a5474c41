#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kalmqa {

// Minimal Prolog-style term, enough for the fact syntax used by the frame,
// annotation and lvp files: atoms, integers, variables, lists and compounds.
struct PTerm {
  enum class Kind { Atom, Int, Var, Compound, List };

  Kind kind = Kind::Atom;
  std::string text;         // atom name, variable name, or compound functor
  long long num = 0;        // Int payload
  std::vector<PTerm> args;  // compound arguments or list items

  static PTerm atom(std::string s);
  static PTerm integer(long long v);
  static PTerm compound(std::string functor, std::vector<PTerm> args);
  static PTerm list(std::vector<PTerm> items);

  bool is_functor(std::string_view functor, size_t arity) const {
    return kind == Kind::Compound && text == functor && args.size() == arity;
  }
  bool operator==(const PTerm& o) const;
};

// Reads `term.`-terminated clauses from a buffer; '%' starts a line comment.
class PTermReader {
 public:
  explicit PTermReader(std::string_view input) : in_(input) {}

  // Next clause, or nullopt at end of input. Malformed input throws
  // Error(Load) naming the line.
  std::optional<PTerm> next_clause();

 private:
  std::string_view in_;
  size_t pos_ = 0;
  int line_ = 1;

  void skip_ws();
  char peek() const { return pos_ < in_.size() ? in_[pos_] : '\0'; }
  char take();
  PTerm read_term();
  std::string read_quoted();
  [[noreturn]] void syntax_error(const std::string& what);
};

// Canonical one-line rendering: no spaces, atoms quoted only when needed.
std::string write_pterm(const PTerm& t);

// True if `s` needs no quotes as a Prolog atom ([a-z][a-zA-Z0-9_]*).
bool plain_atom(std::string_view s);

}  // namespace kalmqa
