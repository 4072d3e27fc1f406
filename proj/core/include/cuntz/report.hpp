#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace cuntz {

// One checked identity. A failing clause always carries a witness: a
// cylinder word, matrix entry or atom.
struct Clause {
  std::string name;
  bool pass = true;
  std::string witness;
  std::string detail;
};

struct Report {
  std::vector<Clause> clauses;
  // Informational findings that do not affect pass().
  std::vector<std::string> notes;

  void add(std::string name, bool pass, std::string witness = {}, std::string detail = {}) {
    clauses.push_back({std::move(name), pass, std::move(witness), std::move(detail)});
  }
  bool pass() const {
    return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.pass; });
  }
  const Clause* find(const std::string& name) const {
    for (const Clause& c : clauses) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

}  // namespace cuntz
