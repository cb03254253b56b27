#include "cstnu/propagation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "cstnu/error.hpp"

namespace cstnu {

std::optional<LabeledConstraint> compose(const LabeledConstraint& c1, const LabeledConstraint& c2) {
  if (c1.to != c2.from) return std::nullopt;
  auto label = conjoin(c1.label, c2.label);
  if (!label) return std::nullopt;
  return LabeledConstraint{c1.from, c2.to, c1.delta + c2.delta, *label};
}

std::optional<Label> repair_wd3(const Network& network, const Label& label) {
  Label current = label;
  while (true) {
    Label next = current;
    for (Letter q : current.letters().to_vector()) {
      auto obs = network.observer(q);
      if (!obs) continue;
      auto joined = conjoin(next, network.label(*obs));
      if (!joined) return std::nullopt;
      next = *joined;
    }
    if (next == current) return current;
    current = next;
  }
}

std::optional<LabeledConstraint> compose(const Network& network, const LabeledConstraint& c1,
                                         const LabeledConstraint& c2) {
  auto c = compose(c1, c2);
  if (!c) return std::nullopt;
  auto label = repair_wd3(network, c->label);
  if (!label) return std::nullopt;
  c->label = *label;
  return c;
}

LabelModification label_modification(const LabeledConstraint& obs_edge, const LabeledConstraint& target, Letter p) {
  std::vector<std::string> problems;
  const Rational w = -obs_edge.delta;
  const Rational& v = target.delta;
  if (obs_edge.to != target.from) problems.push_back("the edge and the target do not share their point X");
  if (w < 0) problems.push_back("w = " + format_rational(w) + " is negative");
  if (v > w) problems.push_back("v = " + format_rational(v) + " exceeds w = " + format_rational(w));
  if (!target.label.mentions(p)) problems.push_back("target label " + target.label.to_string() + " lacks p");
  if (obs_edge.label.mentions(p)) {
    problems.push_back("p occurs in the observation edge label " + obs_edge.label.to_string());
  }
  const Label beta = obs_edge.label.common(target.label);
  const Label alpha = obs_edge.label.minus(beta);
  const Label gamma = target.label.minus(beta).without(p);
  const LetterSet shared = LetterSet::from_mask(alpha.letters().mask() & gamma.letters().mask());
  if (!shared.empty()) {
    problems.push_back("alpha = " + alpha.to_string() + " and gamma = " + gamma.to_string() + " share letters");
  }
  if (!problems.empty()) {
    std::string msg = "label modification does not apply:";
    for (const auto& s : problems) msg += "\n  " + s;
    throw PreconditionError(msg);
  }

  const Label abc = *Label::from_masks(alpha.positive_mask() | beta.positive_mask() | gamma.positive_mask(),
                                       alpha.negative_mask() | beta.negative_mask() | gamma.negative_mask());
  const Label bcp = *conjoin(*conjoin(beta, gamma), Label::literal(p, *target.label.polarity(p)));
  LabelModification out;
  out.derived = {target.from, target.to, v, abc};
  out.replacement.push_back(out.derived);
  for (const Literal& a : alpha.literals()) {
    out.replacement.push_back({target.from, target.to, v, *conjoin(bcp, Label::literal(a.letter, !a.positive))});
  }
  return out;
}

LabelModification label_modification(const Network& network, const LabeledConstraint& obs_edge,
                                     const LabeledConstraint& target) {
  auto p = network.observed_letter(obs_edge.from);
  if (!p) throw PreconditionError(network.id(obs_edge.from) + " is not an observation time-point");
  LabelModification out = label_modification(obs_edge, target, *p);
  for (auto& c : out.replacement) {
    auto label = repair_wd3(network, c.label);
    if (!label) throw PreconditionError("derived label " + c.label.to_string() + " cannot satisfy WD3");
    c.label = *label;
  }
  out.derived = out.replacement.front();
  return out;
}

bool dominates(const LabeledConstraint& c1, const LabeledConstraint& c2) noexcept {
  return c1.from == c2.from && c1.to == c2.to && c1.delta <= c2.delta && sub(c2.label, c1.label);
}

std::vector<LabeledConstraint> PropagationResult::constraints() const {
  std::vector<LabeledConstraint> out;
  for (std::size_t i : active) out.push_back(ledger[i]);
  return out;
}

namespace {

using Key = std::tuple<std::size_t, std::size_t, Rational, std::uint64_t, std::uint64_t>;

Key key_of(const LabeledConstraint& c) {
  return {c.from, c.to, c.delta, c.label.positive_mask(), c.label.negative_mask()};
}

class Closure {
 public:
  Closure(const Network& network, std::size_t budget) : net_(network), budget_(budget) {
    for (const auto& c : network.constraints()) {
      if (c.from == c.to) {
        r_.ledger.push_back(c);
        if (c.delta < 0 && !r_.refuted) {
          r_.refuted = true;
          r_.refutation = r_.ledger.size() - 1;
        }
        continue;
      }
      r_.ledger.push_back(c);
      insert_active(r_.ledger.size() - 1);
    }
    prune();
  }

  PropagationResult run() {
    if (r_.refuted) return finish(false);
    while (true) {
      bool changed = false;
      if (!compose_round(changed)) return finish(false);
      if (r_.refuted) return finish(false);
      if (!modification_round(changed)) return finish(false);
      if (!changed) return finish(true);
    }
  }

 private:
  PropagationResult finish(bool fixpoint) {
    r_.fixpoint = fixpoint && !r_.refuted;
    r_.active.clear();
    for (const auto& [pair, list] : by_pair_) r_.active.insert(r_.active.end(), list.begin(), list.end());
    std::sort(r_.active.begin(), r_.active.end());
    return std::move(r_);
  }

  bool spend() {
    if (r_.applications >= budget_) return false;
    ++r_.applications;
    return true;
  }

  void insert_active(std::size_t idx) { by_pair_[{r_.ledger[idx].from, r_.ledger[idx].to}].push_back(idx); }

  bool dominated(const LabeledConstraint& c) const {
    auto it = by_pair_.find({c.from, c.to});
    if (it == by_pair_.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(),
                       [&](std::size_t i) { return dominates(r_.ledger[i], c); });
  }

  std::size_t record(const LabeledConstraint& c, std::string rule, std::vector<std::size_t> parents) {
    r_.ledger.push_back(c);
    const std::size_t idx = r_.ledger.size() - 1;
    r_.trace.push_back({idx, std::move(rule), std::move(parents)});
    return idx;
  }

  void prune() {
    for (auto& [pair, list] : by_pair_) {
      std::vector<std::size_t> kept;
      for (std::size_t i : list) {
        bool drop = false;
        for (std::size_t j : list) {
          if (i == j || !dominates(r_.ledger[j], r_.ledger[i])) continue;
          if (!dominates(r_.ledger[i], r_.ledger[j]) || j < i) {
            drop = true;
            break;
          }
        }
        if (!drop) kept.push_back(i);
      }
      list = std::move(kept);
    }
  }

  std::vector<std::size_t> snapshot() const {
    std::vector<std::size_t> all;
    for (const auto& [pair, list] : by_pair_) all.insert(all.end(), list.begin(), list.end());
    std::sort(all.begin(), all.end());
    return all;
  }

  bool compose_round(bool& changed) {
    const std::vector<std::size_t> all = snapshot();
    std::map<std::size_t, std::vector<std::size_t>> out_of;
    for (std::size_t i : all) out_of[r_.ledger[i].from].push_back(i);
    std::vector<std::size_t> fresh;
    for (std::size_t i : all) {
      auto it = out_of.find(r_.ledger[i].to);
      if (it == out_of.end()) continue;
      for (std::size_t j : it->second) {
        if (!spend()) return false;
        auto d = compose(net_, r_.ledger[i], r_.ledger[j]);
        if (!d) continue;
        if (d->from == d->to) {
          if (d->delta < 0) {
            r_.refuted = true;
            r_.refutation = record(*d, "compose", {i, j});
            return true;
          }
          continue;
        }
        if (retired_.count(key_of(*d)) || dominated(*d)) continue;
        const std::size_t idx = record(*d, "compose", {i, j});
        insert_active(idx);
        fresh.push_back(idx);
      }
    }
    if (!fresh.empty()) {
      changed = true;
      prune();
    }
    return true;
  }

  bool is_active(std::size_t idx) const {
    auto it = by_pair_.find({r_.ledger[idx].from, r_.ledger[idx].to});
    return it != by_pair_.end() && std::find(it->second.begin(), it->second.end(), idx) != it->second.end();
  }

  void retire(std::size_t idx) {
    auto& list = by_pair_[{r_.ledger[idx].from, r_.ledger[idx].to}];
    list.erase(std::remove(list.begin(), list.end(), idx), list.end());
    retired_.insert(key_of(r_.ledger[idx]));
  }

  bool modification_round(bool& changed) {
    const std::vector<std::size_t> all = snapshot();
    for (std::size_t e : all) {
      const LabeledConstraint edge = r_.ledger[e];
      auto p = net_.observed_letter(edge.from);
      if (!p || edge.delta > 0 || net_.is_contingent(edge.to)) continue;
      for (std::size_t t : all) {
        if (!is_active(e)) break;
        if (!is_active(t)) continue;
        const LabeledConstraint target = r_.ledger[t];
        if (target.from != edge.to || !target.label.mentions(*p) || net_.is_contingent(target.to)) continue;
        if (target.delta > -edge.delta || edge.label.mentions(*p)) continue;
        LabelModification m;
        try {
          m = label_modification(net_, edge, target);
        } catch (const PreconditionError&) {
          continue;
        }
        if (m.derived.label.mentions(*p)) continue;  // WD3 repair reintroduced p
        if (!spend()) return false;
        retire(t);
        changed = true;
        for (const auto& c : m.replacement) {
          if (retired_.count(key_of(c)) || dominated(c)) continue;
          insert_active(record(c, "label-modification", {e, t}));
        }
        prune();
      }
    }
    return true;
  }

  const Network& net_;
  std::size_t budget_;
  PropagationResult r_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_pair_;
  std::set<Key> retired_;
};

}  // namespace

PropagationResult propagate_to_fixpoint(const Network& network, std::size_t budget) {
  return Closure(network, budget).run();
}

}  // namespace cstnu
