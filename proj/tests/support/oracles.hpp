#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cstnu/label.hpp"
#include "cstnu/stn.hpp"

namespace cstnu::testing {

// Truth-table semantics: a label denotes the set of scenarios satisfying it.
inline std::vector<bool> models(const Label& l, const LetterSet& letters) {
  std::vector<bool> out;
  for (const Scenario& s : enumerate_scenarios(letters)) out.push_back(evaluate(l, s));
  return out;
}

inline bool oracle_con(const Label& a, const Label& b, const LetterSet& letters) {
  auto ma = models(a, letters), mb = models(b, letters);
  for (std::size_t i = 0; i < ma.size(); ++i) {
    if (ma[i] && mb[i]) return true;
  }
  return false;
}

inline bool oracle_sub(const Label& a, const Label& b, const LetterSet& letters) {
  auto ma = models(a, letters), mb = models(b, letters);
  for (std::size_t i = 0; i < ma.size(); ++i) {
    if (ma[i] && !mb[i]) return false;
  }
  return true;
}

/// Bellman-Ford from a virtual source; true iff no negative cycle.
inline bool bellman_ford_consistent(const Stn& stn) {
  const std::size_t n = stn.timepoints.size();
  std::vector<Rational> d(n, Rational(0));
  for (std::size_t round = 0; round <= n; ++round) {
    bool changed = false;
    for (const auto& c : stn.constraints) {
      Rational cand = d[c.from] + c.delta;
      if (cand < d[c.to]) {
        d[c.to] = cand;
        changed = true;
      }
    }
    if (!changed) return true;
  }
  return false;
}

/// Shortest simple-path weight from `from` to `to` by exhaustive DFS;
/// nullopt when unreachable. Only meaningful for consistent STNs.
inline std::optional<Rational> brute_shortest(const Stn& stn, std::size_t from, std::size_t to) {
  if (from == to) return Rational(0);
  const std::size_t n = stn.timepoints.size();
  std::optional<Rational> best;
  std::vector<bool> seen(n, false);
  std::function<void(std::size_t, const Rational&)> dfs = [&](std::size_t u, const Rational& w) {
    if (u == to) {
      if (!best || w < *best) best = w;
      return;
    }
    seen[u] = true;
    for (const auto& c : stn.constraints) {
      if (c.from == u && !seen[c.to]) dfs(c.to, w + c.delta);
    }
    seen[u] = false;
  };
  dfs(from, Rational(0));
  return best;
}

}  // namespace cstnu::testing
