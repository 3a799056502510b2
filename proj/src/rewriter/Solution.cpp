#include "hub/rewriter/Solution.h"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "hub/rdf/Lexical.h"

namespace hub::rewriter {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<rdf::Term>& key) const noexcept {
    std::size_t h = 0;
    for (const auto& t : key) h = h * 31 + std::hash<rdf::Term>{}(t);
    return h;
  }
};

Solution merge(const Solution& a, const Solution& b) {
  Solution out = a;
  out.insert(b.begin(), b.end());
  return out;
}

}  // namespace

SolutionTable SolutionTable::unit() { return SolutionTable{{}, {Solution{}}}; }

bool compatible(const Solution& a, const Solution& b) {
  const Solution& small = a.size() <= b.size() ? a : b;
  const Solution& large = a.size() <= b.size() ? b : a;
  for (const auto& [name, term] : small) {
    auto it = large.find(name);
    if (it != large.end() && it->second != term) return false;
  }
  return true;
}

SolutionTable join(const SolutionTable& left, const SolutionTable& right) {
  SolutionTable out;
  out.variables = left.variables;
  for (const auto& v : right.variables) {
    if (std::find(out.variables.begin(), out.variables.end(), v) == out.variables.end()) {
      out.variables.push_back(v);
    }
  }
  if (left.solutions.empty() || right.solutions.empty()) return out;

  std::vector<std::string> shared;
  for (const auto& v : left.variables) {
    if (std::find(right.variables.begin(), right.variables.end(), v) != right.variables.end()) {
      shared.push_back(v);
    }
  }
  auto boundEverywhere = [&](const SolutionTable& t) {
    return std::all_of(t.solutions.begin(), t.solutions.end(), [&](const Solution& s) {
      return std::all_of(shared.begin(), shared.end(),
                         [&](const std::string& v) { return s.count(v) > 0; });
    });
  };

  if (!shared.empty() && boundEverywhere(left) && boundEverywhere(right)) {
    std::unordered_map<std::vector<rdf::Term>, std::vector<std::size_t>, KeyHash> index;
    for (std::size_t i = 0; i < right.solutions.size(); ++i) {
      std::vector<rdf::Term> key;
      for (const auto& v : shared) key.push_back(right.solutions[i].at(v));
      index[std::move(key)].push_back(i);
    }
    for (const auto& l : left.solutions) {
      std::vector<rdf::Term> key;
      for (const auto& v : shared) key.push_back(l.at(v));
      auto it = index.find(key);
      if (it == index.end()) continue;
      for (std::size_t i : it->second) out.solutions.push_back(merge(l, right.solutions[i]));
    }
    return out;
  }

  for (const auto& l : left.solutions) {
    for (const auto& r : right.solutions) {
      if (compatible(l, r)) out.solutions.push_back(merge(l, r));
    }
  }
  return out;
}

SolutionTable project(const SolutionTable& table, const std::vector<std::string>& variables,
                      bool distinct) {
  SolutionTable out;
  out.variables = variables;
  std::set<Solution> seen;
  for (const auto& s : table.solutions) {
    Solution p;
    Solution canonical;
    for (const auto& v : variables) {
      auto it = s.find(v);
      if (it == s.end()) continue;
      p.emplace(v, it->second);
      if (distinct) canonical.emplace(v, rdf::canonicalize(it->second));
    }
    if (distinct && !seen.insert(std::move(canonical)).second) continue;
    out.solutions.push_back(std::move(p));
  }
  return out;
}

void deduplicate(SolutionTable& table) {
  std::set<Solution> seen;
  std::vector<Solution> kept;
  for (auto& s : table.solutions) {
    if (seen.insert(s).second) kept.push_back(std::move(s));
  }
  table.solutions = std::move(kept);
}

}  // namespace hub::rewriter
