#include "kalmqa/frames.hpp"

#include <fstream>
#include <sstream>

#include "kalmqa/error.hpp"
#include "kalmqa/prolog_term.hpp"

namespace kalmqa {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Load, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string atom_of(const PTerm& t, const char* where) {
  if (t.kind != PTerm::Kind::Atom)
    fail(ErrorKind::Load, std::string("expected atom in ") + where);
  return t.text;
}

RoleDef role_from_term(const PTerm& t) {
  if (!t.is_functor("role", 3))
    fail(ErrorKind::Load, "expected role/3 in frame definition");
  RoleDef role;
  role.name = atom_of(t.args[0], "role name");
  if (t.args[1].kind != PTerm::Kind::List || t.args[2].kind != PTerm::Kind::List)
    fail(ErrorKind::Load, "role synsets and constraints must be lists");
  for (auto& s : t.args[1].args) role.synsets.push_back(atom_of(s, "synset"));
  for (auto& c : t.args[2].args) {
    std::string name = atom_of(c, "constraint");
    if (name != "Integer" && name != "Year")
      fail(ErrorKind::Load, "unknown constraint '" + name + "' in role " + role.name);
    role.constraints.push_back(name);
  }
  return role;
}

}  // namespace

const RoleDef* FrameDef::find_role(std::string_view role) const {
  for (auto& r : roles)
    if (r.name == role) return &r;
  return nullptr;
}

FrameStore FrameStore::load_file(const std::string& path) {
  return from_text(read_file(path));
}

FrameStore FrameStore::from_text(std::string_view text) {
  FrameStore store;
  PTermReader reader(text);
  while (auto clause = reader.next_clause()) {
    if (clause->is_functor("fp", 2)) {
      FrameDef frame;
      frame.name = atom_of(clause->args[0], "frame name");
      if (store.find(frame.name))
        fail(ErrorKind::Load, "duplicate frame '" + frame.name + "'");
      if (clause->args[1].kind != PTerm::Kind::List)
        fail(ErrorKind::Load, "frame roles must be a list");
      for (auto& r : clause->args[1].args) {
        RoleDef role = role_from_term(r);
        if (frame.find_role(role.name))
          fail(ErrorKind::Load,
               "duplicate role '" + role.name + "' in frame " + frame.name);
        frame.roles.push_back(std::move(role));
      }
      if (frame.roles.empty())
        fail(ErrorKind::Load, "frame '" + frame.name + "' has no roles");
      store.frames_.push_back(std::move(frame));
    } else if (clause->is_functor("alias", 3)) {
      std::string frame = atom_of(clause->args[0], "alias frame");
      std::string alias = atom_of(clause->args[1], "alias name");
      std::string canonical = atom_of(clause->args[2], "alias target");
      store.aliases_[{frame, alias}] = canonical;
    } else {
      fail(ErrorKind::Load, "unexpected clause in frame file");
    }
  }
  return store;
}

const FrameDef* FrameStore::find(std::string_view name) const {
  for (auto& f : frames_)
    if (f.name == name) return &f;
  return nullptr;
}

const FrameDef& FrameStore::require(std::string_view name) const {
  const FrameDef* f = find(name);
  if (!f) fail(ErrorKind::Config, "unknown frame '" + std::string(name) + "'");
  return *f;
}

std::string FrameStore::canonical_role(const std::string& frame,
                                       const std::string& role) const {
  auto it = aliases_.find({frame, role});
  return it == aliases_.end() ? role : it->second;
}

std::string render_frame(const FrameDef& frame) {
  std::vector<PTerm> roles;
  for (auto& r : frame.roles) {
    std::vector<PTerm> synsets, constraints;
    for (auto& s : r.synsets) synsets.push_back(PTerm::atom(s));
    for (auto& c : r.constraints) constraints.push_back(PTerm::atom(c));
    roles.push_back(PTerm::compound(
        "role", {PTerm::atom(r.name), PTerm::list(std::move(synsets)),
                 PTerm::list(std::move(constraints))}));
  }
  PTerm fact = PTerm::compound("fp", {PTerm::atom(frame.name), PTerm::list(std::move(roles))});
  return write_pterm(fact) + ".";
}

bool check_constraint(const std::string& constraint, const std::string& value) {
  auto as_integer = [](const std::string& s, long long& out) {
    if (s.empty()) return false;
    size_t i = s[0] == '-' ? 1 : 0;
    if (i >= s.size()) return false;
    for (size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') return false;
    try {
      out = std::stoll(s);
    } catch (const std::exception&) {
      return false;
    }
    return true;
  };
  long long v = 0;
  if (constraint == "Integer") return as_integer(value, v);
  if (constraint == "Year") return as_integer(value, v) && v >= 1800 && v <= 2100;
  fail(ErrorKind::Config, "unknown constraint '" + constraint + "'");
}

void EntityRegistry::add(const std::string& value, const std::string& klass) {
  auto& set = classes_[value];
  set.insert(klass);
  long long v = 0;
  bool numeric = !value.empty();
  for (char c : value)
    if (c < '0' || c > '9') numeric = false;
  if (numeric) {
    try {
      v = std::stoll(value);
    } catch (const std::exception&) {
      numeric = false;
    }
    if (numeric && v >= 1800 && v <= 2100) set.insert("year");
  }
}

const std::set<std::string>* EntityRegistry::classes(const std::string& value) const {
  auto it = classes_.find(value);
  return it == classes_.end() ? nullptr : &it->second;
}

ClassSystem ClassSystem::load_files(const std::string& roleclass_path,
                                    const std::string& class_tree_path,
                                    const std::string& noun_class_path) {
  return from_text(read_file(roleclass_path), read_file(class_tree_path),
                   read_file(noun_class_path));
}

namespace {

// Calls fn(line) for each non-blank, non-comment line.
template <typename Fn>
void for_lines(std::string_view text, Fn fn) {
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line[0] != '#') fn(line);
    if (end == text.size()) break;
    start = end + 1;
  }
}

std::pair<std::string, std::string> split_tab(std::string_view line, const char* what) {
  size_t tab = line.find('\t');
  if (tab == std::string_view::npos)
    fail(ErrorKind::Load, std::string("expected TAB-separated ") + what + " line");
  return {std::string(line.substr(0, tab)), std::string(line.substr(tab + 1))};
}

}  // namespace

ClassSystem ClassSystem::from_text(std::string_view roleclass, std::string_view class_tree,
                                   std::string_view noun_classes) {
  ClassSystem cs;
  for_lines(roleclass, [&](std::string_view line) {
    size_t dot = line.find('.');
    size_t eq = line.rfind('=');
    if (dot == std::string_view::npos || eq == std::string_view::npos || eq < dot)
      fail(ErrorKind::Load, "expected Frame.Role=class line");
    std::string frame(line.substr(0, dot));
    std::string role(line.substr(dot + 1, eq - dot - 1));
    std::string klass(line.substr(eq + 1));
    cs.role_class_[{frame, role}] = klass;
  });
  for_lines(class_tree, [&](std::string_view line) {
    auto [child, parent] = split_tab(line, "class-tree");
    cs.parent_[child] = parent;
  });
  for_lines(noun_classes, [&](std::string_view line) {
    auto [lemma, klass] = split_tab(line, "noun-class");
    cs.noun_class_[lemma] = klass;
  });
  return cs;
}

void ClassSystem::validate_total(const FrameStore& frames) const {
  for (auto& frame : frames.frames())
    for (auto& role : frame.roles)
      if (!role_class_.count({frame.name, role.name}))
        fail(ErrorKind::Config,
             "no role class for " + frame.name + "." + role.name);
}

std::string ClassSystem::role_class(const std::string& frame,
                                    const std::string& role) const {
  auto it = role_class_.find({frame, role});
  if (it == role_class_.end())
    fail(ErrorKind::Config, "no role class for " + frame + "." + role);
  return it->second;
}

std::string ClassSystem::noun_class(const std::string& lemma) const {
  auto it = noun_class_.find(lemma);
  return it == noun_class_.end() ? std::string() : it->second;
}

bool ClassSystem::on_ancestor_line(const std::string& a, const std::string& b) const {
  // True when a is an ancestor of b.
  std::string cur = b;
  for (int depth = 0; depth < 16; ++depth) {
    auto it = parent_.find(cur);
    if (it == parent_.end()) return false;
    if (it->second == a) return true;
    cur = it->second;
  }
  return false;
}

bool ClassSystem::proper_compatible(const std::set<std::string>& classes,
                                    const std::string& required) const {
  if (required == "any") return true;
  for (auto& c : classes)
    if (c == required || on_ancestor_line(c, required) || on_ancestor_line(required, c))
      return true;
  return false;
}

bool ClassSystem::noun_compatible(const std::string& noun_class,
                                  const std::string& required) const {
  return required == "any" || noun_class == required;
}

}  // namespace kalmqa
