#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "cstnu/network.hpp"
#include "cstnu/semantics.hpp"

namespace cstnu {

/// Hash-consed AND-OR graph of grid decision trees. Interning is shared, so
/// two enumerations describe the same strategy set iff their roots coincide.
class StrategyDag {
 public:
  enum class Kind { Fail, Leaf, Or, And };

  struct Node {
    Kind kind = Kind::Fail;
    /// Leaf: group size, scenario indices, then one slot code per time-point
    /// (0 = unassigned, k = grid slot k-1). Or: (subset mask, And id) pairs.
    /// And: child ids.
    std::vector<std::size_t> content;
    mpz_class count;
  };

  StrategyDag();
  std::size_t intern(Kind kind, std::vector<std::size_t> content);
  const Node& node(std::size_t id) const { return nodes_[id]; }
  std::size_t size() const noexcept { return nodes_.size(); }
  static constexpr std::size_t kFail = 0;

 private:
  std::vector<Node> nodes_;
  std::map<std::pair<int, std::vector<std::size_t>>, std::size_t> index_;
};

struct GridSpace {
  std::size_t root = StrategyDag::kFail;
  mpz_class count;
  std::size_t states = 0;
};

/// Every viable decision tree that executes each relevant time-point of a
/// CSTN at some slot of `grid` (ascending absolute times). Decisions at a
/// slot may depend only on observations made at earlier slots, so every
/// member is dynamic by construction.
GridSpace enumerate_grid_strategies(const Network& cstn, const std::vector<Rational>& grid, StrategyDag& dag);

/// Calls `check` on every (scenario, schedule) reachable in some strategy of
/// the space; false as soon as one call returns false.
bool every_leaf(const StrategyDag& dag, std::size_t root, const Network& cstn, const std::vector<Rational>& grid,
                const std::function<bool(const Scenario&, const Schedule&)>& check);

/// A uniformly chosen branch at every Or node, assembled into a strategy.
ExecutionStrategy sample_grid_strategy(const StrategyDag& dag, std::size_t root, const Network& cstn,
                                       const std::vector<Rational>& grid, std::mt19937_64& rng);

}  // namespace cstnu
