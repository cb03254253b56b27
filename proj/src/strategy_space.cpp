#include "cstnu/strategy_space.hpp"

#include <algorithm>
#include <set>

#include "cstnu/error.hpp"

namespace cstnu {

StrategyDag::StrategyDag() { nodes_.push_back({Kind::Fail, {}, 0}); }

std::size_t StrategyDag::intern(Kind kind, std::vector<std::size_t> content) {
  if (kind == Kind::Fail) return kFail;
  auto key = std::make_pair(static_cast<int>(kind), content);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  Node n{kind, std::move(content), 0};
  switch (kind) {
    case Kind::Leaf: n.count = 1; break;
    case Kind::Or:
      for (std::size_t i = 1; i < n.content.size(); i += 2) n.count += nodes_[n.content[i]].count;
      break;
    case Kind::And:
      n.count = 1;
      for (std::size_t c : n.content) n.count *= nodes_[c].count;
      break;
    case Kind::Fail: break;
  }
  nodes_.push_back(std::move(n));
  index_.emplace(std::move(key), nodes_.size() - 1);
  return nodes_.size() - 1;
}

namespace {

class GridEnumerator {
 public:
  GridEnumerator(const Network& net, const std::vector<Rational>& grid, StrategyDag& dag)
      : net_(net), grid_(grid), dag_(dag), scenarios_(enumerate_scenarios(net.letters())) {
    if (!net.links().empty()) throw PreconditionError("grid enumeration covers CSTNs only");
    if (net.size() > 20) throw CapExceeded("grid enumeration is limited to 20 time-points");
    if (!std::is_sorted(grid.begin(), grid.end())) throw PreconditionError("grid must be ascending");
    rel_.assign(scenarios_.size(), std::vector<bool>(net.size()));
    for (std::size_t s = 0; s < scenarios_.size(); ++s) {
      for (std::size_t x = 0; x < net.size(); ++x) rel_[s][x] = evaluate(net.label(x), scenarios_[s]);
    }
  }

  std::size_t run(std::size_t& states) {
    std::vector<std::size_t> all(scenarios_.size());
    for (std::size_t s = 0; s < all.size(); ++s) all[s] = s;
    std::size_t root = visit(0, all, std::vector<std::size_t>(net_.size(), 0));
    states = memo_.size();
    return root;
  }

 private:
  bool consistent(const std::vector<std::size_t>& group, const std::vector<std::size_t>& slots,
                  std::uint64_t fresh) const {
    for (const auto& c : net_.constraints()) {
      if (!slots[c.from] || !slots[c.to]) continue;
      if (!((fresh >> c.from) & 1) && !((fresh >> c.to) & 1)) continue;
      if (grid_[slots[c.to] - 1] - grid_[slots[c.from] - 1] <= c.delta) continue;
      for (std::size_t s : group) {
        if (evaluate(c.label, scenarios_[s])) return false;
      }
    }
    return true;
  }

  std::size_t visit(std::size_t slot, const std::vector<std::size_t>& group, const std::vector<std::size_t>& slots) {
    std::vector<std::size_t> key{slot, group.size()};
    key.insert(key.end(), group.begin(), group.end());
    key.insert(key.end(), slots.begin(), slots.end());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<std::size_t> open;
    for (std::size_t x = 0; x < net_.size(); ++x) {
      if (slots[x]) continue;
      if (std::any_of(group.begin(), group.end(), [&](std::size_t s) { return bool(rel_[s][x]); })) open.push_back(x);
    }

    std::size_t result = StrategyDag::kFail;
    if (open.empty()) {
      std::vector<std::size_t> content{group.size()};
      content.insert(content.end(), group.begin(), group.end());
      content.insert(content.end(), slots.begin(), slots.end());
      result = dag_.intern(StrategyDag::Kind::Leaf, std::move(content));
    } else if (slot < grid_.size()) {
      std::vector<std::size_t> choices;
      for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << open.size()); ++sub) {
        if (sub == 0 && slot + 1 == grid_.size()) continue;
        std::vector<std::size_t> next = slots;
        std::uint64_t fresh = 0;
        for (std::size_t k = 0; k < open.size(); ++k) {
          if ((sub >> k) & 1) {
            next[open[k]] = slot + 1;
            fresh |= std::uint64_t{1} << open[k];
          }
        }
        if (!consistent(group, next, fresh)) continue;
        std::map<std::vector<int>, std::vector<std::size_t>> parts;
        for (std::size_t s : group) {
          std::vector<int> sig;
          for (std::size_t k = 0; k < open.size(); ++k) {
            if (!((sub >> k) & 1)) continue;
            auto p = net_.observed_letter(open[k]);
            if (!p) continue;
            sig.push_back(rel_[s][open[k]] ? static_cast<int>(scenarios_[s].value(*p)) : 2);
          }
          parts[sig].push_back(s);
        }
        std::vector<std::size_t> children;
        bool ok = true;
        for (const auto& [sig, part] : parts) {
          std::size_t child = visit(slot + 1, part, next);
          if (child == StrategyDag::kFail) {
            ok = false;
            break;
          }
          children.push_back(child);
        }
        if (!ok) continue;
        choices.push_back(sub);
        choices.push_back(dag_.intern(StrategyDag::Kind::And, std::move(children)));
      }
      if (!choices.empty()) result = dag_.intern(StrategyDag::Kind::Or, std::move(choices));
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  const Network& net_;
  const std::vector<Rational>& grid_;
  StrategyDag& dag_;
  std::vector<Scenario> scenarios_;
  std::vector<std::vector<bool>> rel_;
  std::map<std::vector<std::size_t>, std::size_t> memo_;
};

Schedule leaf_schedule(const StrategyDag::Node& leaf, const Network& net, const std::vector<Rational>& grid) {
  const std::size_t g = leaf.content[0];
  Schedule out;
  for (std::size_t x = 0; x < net.size(); ++x) {
    const std::size_t code = leaf.content[1 + g + x];
    if (code) out.emplace(net.id(x), grid[code - 1]);
  }
  return out;
}

}  // namespace

GridSpace enumerate_grid_strategies(const Network& cstn, const std::vector<Rational>& grid, StrategyDag& dag) {
  GridSpace space;
  GridEnumerator e(cstn, grid, dag);
  space.root = e.run(space.states);
  space.count = dag.node(space.root).count;
  return space;
}

bool every_leaf(const StrategyDag& dag, std::size_t root, const Network& cstn, const std::vector<Rational>& grid,
                const std::function<bool(const Scenario&, const Schedule&)>& check) {
  const auto scenarios = enumerate_scenarios(cstn.letters());
  std::set<std::size_t> seen;
  std::vector<std::size_t> stack{root};
  while (!stack.empty()) {
    std::size_t id = stack.back();
    stack.pop_back();
    if (id == StrategyDag::kFail || !seen.insert(id).second) continue;
    const auto& n = dag.node(id);
    switch (n.kind) {
      case StrategyDag::Kind::Leaf: {
        const std::size_t g = n.content[0];
        for (std::size_t i = 0; i < g; ++i) {
          const Scenario& s = scenarios[n.content[1 + i]];
          Schedule full = leaf_schedule(n, cstn, grid);
          Schedule relevant;
          for (const auto& [id2, t] : full) {
            if (evaluate(cstn.label(cstn.index_of(id2)), s)) relevant.emplace(id2, t);
          }
          if (!check(s, relevant)) return false;
        }
        break;
      }
      case StrategyDag::Kind::Or:
        for (std::size_t i = 1; i < n.content.size(); i += 2) stack.push_back(n.content[i]);
        break;
      case StrategyDag::Kind::And:
        for (std::size_t c : n.content) stack.push_back(c);
        break;
      case StrategyDag::Kind::Fail: break;
    }
  }
  return true;
}

ExecutionStrategy sample_grid_strategy(const StrategyDag& dag, std::size_t root, const Network& cstn,
                                       const std::vector<Rational>& grid, std::mt19937_64& rng) {
  if (root == StrategyDag::kFail) throw PreconditionError("the strategy space is empty");
  const auto scenarios = enumerate_scenarios(cstn.letters());
  ExecutionStrategy out;
  std::vector<std::size_t> stack{root};
  while (!stack.empty()) {
    std::size_t id = stack.back();
    stack.pop_back();
    const auto& n = dag.node(id);
    if (n.kind == StrategyDag::Kind::Or) {
      std::uniform_int_distribution<std::size_t> pick(0, n.content.size() / 2 - 1);
      stack.push_back(n.content[2 * pick(rng) + 1]);
    } else if (n.kind == StrategyDag::Kind::And) {
      for (std::size_t c : n.content) stack.push_back(c);
    } else if (n.kind == StrategyDag::Kind::Leaf) {
      const std::size_t g = n.content[0];
      for (std::size_t i = 0; i < g; ++i) {
        const Scenario& s = scenarios[n.content[1 + i]];
        Schedule sch;
        for (const auto& [id2, t] : leaf_schedule(n, cstn, grid)) {
          if (evaluate(cstn.label(cstn.index_of(id2)), s)) sch.emplace(id2, t);
        }
        out.entries.push_back({Drama{s, {}}, std::move(sch)});
      }
    }
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const StrategyEntry& a, const StrategyEntry& b) { return a.drama < b.drama; });
  return out;
}

}  // namespace cstnu
