#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace intrew {

struct Check {
  std::string name;
  bool passed = false;
  std::string witness;  // first violating element, empty on success
  std::string detail;
};

struct Report {
  std::vector<Check> checks;

  void add(std::string name, bool passed, std::string witness = {}, std::string detail = {}) {
    checks.push_back({std::move(name), passed, std::move(witness), std::move(detail)});
  }

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }

  void append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
};

}  // namespace intrew
