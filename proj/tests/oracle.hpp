#pragma once

// Reference answers for the fixture question corpus, computed by brute force
// over the raw fact file.  Deliberately independent of the library: no shared
// parsing, no shared evaluation code, just regexes and nested loops.

#include <cstddef>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

struct Film {
    std::string name;
    std::map<std::string, std::set<std::string>> attrs;
};

inline std::vector<std::string> split_pipes(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, '|')) out.push_back(field);
    return out;
}

inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("oracle: cannot open " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        out.push_back(line);
    }
    return out;
}

// Rows are name|relation|value[|value...]; a run of rows with the same name
// is one film, and the name starting a new run starts a new film.
inline std::vector<Film> load_kb(const std::string& path) {
    std::vector<Film> films;
    for (const auto& line : read_lines(path)) {
        auto fields = split_pipes(line);
        if (fields.size() < 3) throw std::runtime_error("oracle: bad row: " + line);
        if (films.empty() || films.back().name != fields[0])
            films.push_back(Film{fields[0], {}});
        for (std::size_t i = 2; i < fields.size(); ++i)
            films.back().attrs[fields[1]].insert(fields[i]);
    }
    return films;
}

inline const std::set<std::string>& vals(const Film& f, const std::string& rel) {
    static const std::set<std::string> none;
    auto it = f.attrs.find(rel);
    return it == f.attrs.end() ? none : it->second;
}

inline bool has(const Film& f, const std::string& rel, const std::string& v) {
    return vals(f, rel).count(v) != 0;
}

inline bool share_values(const Film& a, const Film& b, const std::string& rel) {
    for (const auto& v : vals(a, rel))
        if (has(b, rel, v)) return true;
    return false;
}

// One film per title, attribute values unioned across namesakes.
inline std::vector<Film> merge_titles(const std::vector<Film>& films) {
    std::vector<Film> out;
    std::map<std::string, std::size_t> slot;
    for (const auto& f : films) {
        auto it = slot.find(f.name);
        if (it == slot.end()) {
            slot.emplace(f.name, out.size());
            out.push_back(f);
            continue;
        }
        for (const auto& [rel, vs] : f.attrs)
            out[it->second].attrs[rel].insert(vs.begin(), vs.end());
    }
    return out;
}

// Actor, director and writer credits pooled per film and assigned to all three.
inline std::vector<Film> collapse_roles(const std::vector<Film>& films) {
    static const char* roles[] = {"starred_actors", "directed_by", "written_by"};
    std::vector<Film> out = films;
    for (auto& f : out) {
        std::set<std::string> pool;
        for (const char* r : roles) {
            const auto& vs = vals(f, r);
            pool.insert(vs.begin(), vs.end());
        }
        if (pool.empty()) continue;
        for (const char* r : roles) f.attrs[r] = pool;
    }
    return out;
}

inline std::set<std::string> directors_of_year(const std::vector<Film>& films,
                                               const std::string& year) {
    std::set<std::string> out;
    for (const auto& f : films)
        if (has(f, "release_year", year))
            for (const auto& d : vals(f, "directed_by")) out.insert(d);
    return out;
}

inline std::set<std::string> answer(const std::string& q, const std::vector<Film>& films) {
    static const std::regex a1(R"(Who directs a film that stars \[(.+)\]\?)");
    static const std::regex a2(R"(Who appears in \[(.+)\] directed films\?)");
    static const std::regex a2b(R"(Who appears in films that are directed by \[(.+)\]\?)");
    static const std::regex a3(R"(Who writes a film that is directed by \[(.+)\]\?)");
    static const std::regex a4(R"(What is a release year of a film that is directed by \[(.+)\]\?)");
    static const std::regex a5(R"(What is a genre of a film that is directed by \[(.+)\]\?)");
    static const std::regex a6(R"(What is a language of a film that stars \[(.+)\]\?)");
    static const std::regex b1(R"(Who wrote a film that shares a director with \[(.+)\]\?)");
    static const std::regex b2(R"(Who directs a film that shares an actor with \[(.+)\]\?)");
    static const std::regex b3(R"(Who writes a film that shares a writer with \[(.+)\]\?)");
    static const std::regex c1(R"(Who is an actor of \[(.+)\]\?)");
    static const std::regex c2(R"(Who is a co-actor of \[(.+)\]\?)");
    static const std::regex c3(R"(Who is a co-writer of \[(.+)\]\?)");
    static const std::regex c4(R"(Which films share the same actor of \[(.+)\]\?)");
    static const std::regex d1(R"(Who directs \[(.+)\]\?)");

    std::set<std::string> out;

    // answers = pick_rel values of every film whose test_rel contains v
    auto collect = [&](const char* pick_rel, const char* test_rel, const std::string& v) {
        for (const auto& f : films)
            if (has(f, test_rel, v))
                for (const auto& x : vals(f, pick_rel)) out.insert(x);
    };
    // answers drawn from films that share a share_rel value with a distinct
    // film titled `title`; pick_rel nullptr means answer with the film name
    auto share = [&](const char* pick_rel, const char* share_rel, const std::string& title) {
        for (std::size_t i = 0; i < films.size(); ++i) {
            if (films[i].name != title) continue;
            for (std::size_t j = 0; j < films.size(); ++j) {
                if (j == i || !share_values(films[j], films[i], share_rel)) continue;
                if (pick_rel == nullptr) {
                    out.insert(films[j].name);
                } else {
                    for (const auto& x : vals(films[j], pick_rel)) out.insert(x);
                }
            }
        }
    };
    // other people credited under pick_rel on a film crediting `person` under via_rel
    auto credited = [&](const char* pick_rel, const char* via_rel, const std::string& person) {
        for (const auto& f : films)
            if (has(f, via_rel, person))
                for (const auto& x : vals(f, pick_rel))
                    if (x != person) out.insert(x);
    };

    std::smatch m;
    if (std::regex_match(q, m, a1)) {
        collect("directed_by", "starred_actors", m[1]);
    } else if (std::regex_match(q, m, a2) || std::regex_match(q, m, a2b)) {
        collect("starred_actors", "directed_by", m[1]);
    } else if (std::regex_match(q, m, a3)) {
        collect("written_by", "directed_by", m[1]);
    } else if (std::regex_match(q, m, a4)) {
        collect("release_year", "directed_by", m[1]);
    } else if (std::regex_match(q, m, a5)) {
        collect("has_genre", "directed_by", m[1]);
    } else if (std::regex_match(q, m, a6)) {
        collect("in_language", "starred_actors", m[1]);
    } else if (std::regex_match(q, m, b1)) {
        share("written_by", "directed_by", m[1]);
    } else if (std::regex_match(q, m, b2)) {
        share("directed_by", "starred_actors", m[1]);
    } else if (std::regex_match(q, m, b3)) {
        share("written_by", "written_by", m[1]);
    } else if (std::regex_match(q, m, c1)) {
        credited("starred_actors", "directed_by", m[1]);
        credited("starred_actors", "written_by", m[1]);
    } else if (std::regex_match(q, m, c2)) {
        credited("starred_actors", "starred_actors", m[1]);
    } else if (std::regex_match(q, m, c3)) {
        credited("written_by", "written_by", m[1]);
    } else if (std::regex_match(q, m, c4)) {
        share(nullptr, "starred_actors", m[1]);
    } else if (std::regex_match(q, m, d1)) {
        for (const auto& f : films)
            if (f.name == m[1])
                for (const auto& d : vals(f, "directed_by")) out.insert(d);
    } else {
        throw std::runtime_error("oracle: unrecognized question: " + q);
    }
    return out;
}

}  // namespace oracle
