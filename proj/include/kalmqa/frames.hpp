#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kalmqa {

struct RoleDef {
  std::string name;
  std::vector<std::string> synsets;
  std::vector<std::string> constraints;  // Integer, Year
};

struct FrameDef {
  std::string name;
  std::vector<RoleDef> roles;

  const RoleDef* find_role(std::string_view role) const;
};

// Frame ontology: `fp(Name,[role(RName,[synset,...],[constraint,...]),...]).`
// facts plus optional `alias(Frame,Alias,Canonical).` facts mapping alternate
// role spellings used by annotations onto canonical role names.
class FrameStore {
 public:
  static FrameStore load_file(const std::string& path);
  static FrameStore from_text(std::string_view text);

  const FrameDef* find(std::string_view name) const;
  const FrameDef& require(std::string_view name) const;
  const std::vector<FrameDef>& frames() const { return frames_; }

  // Alias-resolved role name; returns `role` unchanged when no alias applies.
  std::string canonical_role(const std::string& frame, const std::string& role) const;

 private:
  std::vector<FrameDef> frames_;
  std::map<std::pair<std::string, std::string>, std::string> aliases_;
};

// One frame back in file syntax (with trailing '.').
std::string render_frame(const FrameDef& frame);

// Year -> integer in [1800, 2100]; Integer -> decimal integer.
// Unknown constraint names raise a configuration error.
bool check_constraint(const std::string& constraint, const std::string& value);

// Constants seen in the fact base, each with its set of semantic classes
// (film-title, person, genre, language, year). Numeric constants in
// [1800, 2100] additionally carry the year class.
class EntityRegistry {
 public:
  void add(const std::string& value, const std::string& klass);
  const std::set<std::string>* classes(const std::string& value) const;

 private:
  std::map<std::string, std::set<std::string>> classes_;
};

// Role-class requirements, common-noun classes, and the class tree used by
// role-filler disambiguation. Proper-noun fillers match when a registered
// class equals the required class or sits on its ancestor line (persons are
// registered coarsely while person roles are fine-grained); common-noun
// fillers must match exactly. The class `any` accepts everything.
class ClassSystem {
 public:
  static ClassSystem load_files(const std::string& roleclass_path,
                                const std::string& class_tree_path,
                                const std::string& noun_class_path);
  static ClassSystem from_text(std::string_view roleclass, std::string_view class_tree,
                               std::string_view noun_classes);

  // Raises a configuration error when a loaded frame role has no entry.
  void validate_total(const FrameStore& frames) const;

  std::string role_class(const std::string& frame, const std::string& role) const;
  std::string noun_class(const std::string& lemma) const;  // "" when unknown

  bool proper_compatible(const std::set<std::string>& classes,
                         const std::string& required) const;
  bool noun_compatible(const std::string& noun_class, const std::string& required) const;

 private:
  std::map<std::pair<std::string, std::string>, std::string> role_class_;
  std::map<std::string, std::string> parent_;
  std::map<std::string, std::string> noun_class_;

  bool on_ancestor_line(const std::string& a, const std::string& b) const;
};

}  // namespace kalmqa
