#include "kalmqa/prolog_term.hpp"

#include <cctype>

#include "kalmqa/error.hpp"

namespace kalmqa {

PTerm PTerm::atom(std::string s) {
  PTerm t;
  t.kind = Kind::Atom;
  t.text = std::move(s);
  return t;
}

PTerm PTerm::integer(long long v) {
  PTerm t;
  t.kind = Kind::Int;
  t.num = v;
  return t;
}

PTerm PTerm::compound(std::string functor, std::vector<PTerm> args) {
  PTerm t;
  t.kind = Kind::Compound;
  t.text = std::move(functor);
  t.args = std::move(args);
  return t;
}

PTerm PTerm::list(std::vector<PTerm> items) {
  PTerm t;
  t.kind = Kind::List;
  t.args = std::move(items);
  return t;
}

bool PTerm::operator==(const PTerm& o) const {
  return kind == o.kind && text == o.text && num == o.num && args == o.args;
}

void PTermReader::skip_ws() {
  while (pos_ < in_.size()) {
    char c = in_[pos_];
    if (c == '\n') {
      ++line_;
      ++pos_;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos_;
    } else if (c == '%') {
      while (pos_ < in_.size() && in_[pos_] != '\n') ++pos_;
    } else {
      break;
    }
  }
}

char PTermReader::take() {
  if (pos_ >= in_.size()) syntax_error("unexpected end of input");
  char c = in_[pos_++];
  if (c == '\n') ++line_;
  return c;
}

void PTermReader::syntax_error(const std::string& what) {
  fail(ErrorKind::Load, "term syntax error at line " + std::to_string(line_) +
                            ": " + what);
}

std::string PTermReader::read_quoted() {
  std::string out;
  take();  // opening quote
  while (true) {
    if (pos_ >= in_.size()) syntax_error("unterminated quoted atom");
    char c = take();
    if (c == '\'') {
      if (peek() == '\'') {  // doubled quote escapes a quote
        out.push_back(take());
        continue;
      }
      return out;
    }
    if (c == '\\' && pos_ < in_.size()) {
      char e = take();
      switch (e) {
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        default: out.push_back(e); break;
      }
      continue;
    }
    out.push_back(c);
  }
}

PTerm PTermReader::read_term() {
  skip_ws();
  char c = peek();
  if (c == '\0') syntax_error("unexpected end of input");

  if (c == '[') {
    take();
    std::vector<PTerm> items;
    skip_ws();
    if (peek() == ']') {
      take();
      return PTerm::list(std::move(items));
    }
    while (true) {
      items.push_back(read_term());
      skip_ws();
      char d = take();
      if (d == ']') break;
      if (d != ',') syntax_error("expected ',' or ']' in list");
    }
    return PTerm::list(std::move(items));
  }

  if (c == '\'') {
    std::string name = read_quoted();
    if (peek() == '(') {
      take();
      std::vector<PTerm> args;
      while (true) {
        args.push_back(read_term());
        skip_ws();
        char d = take();
        if (d == ')') break;
        if (d != ',') syntax_error("expected ',' or ')' in arguments");
      }
      return PTerm::compound(std::move(name), std::move(args));
    }
    return PTerm::atom(std::move(name));
  }

  if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
    std::string digits;
    if (c == '-') digits.push_back(take());
    while (std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(take());
    if (digits.empty() || digits == "-") syntax_error("bad number");
    return PTerm::integer(std::stoll(digits));
  }

  if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
    std::string name;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
      name.push_back(take());
    bool variable = std::isupper(static_cast<unsigned char>(name[0])) || name[0] == '_';
    if (peek() == '(') {
      take();
      std::vector<PTerm> args;
      while (true) {
        args.push_back(read_term());
        skip_ws();
        char d = take();
        if (d == ')') break;
        if (d != ',') syntax_error("expected ',' or ')' in arguments");
      }
      return PTerm::compound(std::move(name), std::move(args));
    }
    if (variable) {
      PTerm t;
      t.kind = PTerm::Kind::Var;
      t.text = std::move(name);
      return t;
    }
    return PTerm::atom(std::move(name));
  }

  syntax_error(std::string("unexpected character '") + c + "'");
}

std::optional<PTerm> PTermReader::next_clause() {
  skip_ws();
  if (pos_ >= in_.size()) return std::nullopt;
  PTerm t = read_term();
  skip_ws();
  if (peek() != '.') syntax_error("expected '.' after clause");
  take();
  return t;
}

bool plain_atom(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

static void quote_atom_into(std::string& out, const std::string& s) {
  out.push_back('\'');
  for (char c : s) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  out.push_back('\'');
}

static void write_into(std::string& out, const PTerm& t) {
  switch (t.kind) {
    case PTerm::Kind::Atom:
      if (plain_atom(t.text))
        out += t.text;
      else
        quote_atom_into(out, t.text);
      break;
    case PTerm::Kind::Int:
      out += std::to_string(t.num);
      break;
    case PTerm::Kind::Var:
      out += t.text;
      break;
    case PTerm::Kind::List:
      out.push_back('[');
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (i) out.push_back(',');
        write_into(out, t.args[i]);
      }
      out.push_back(']');
      break;
    case PTerm::Kind::Compound:
      if (plain_atom(t.text))
        out += t.text;
      else
        quote_atom_into(out, t.text);
      out.push_back('(');
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (i) out.push_back(',');
        write_into(out, t.args[i]);
      }
      out.push_back(')');
      break;
  }
}

std::string write_pterm(const PTerm& t) {
  std::string out;
  write_into(out, t);
  return out;
}

}  // namespace kalmqa
