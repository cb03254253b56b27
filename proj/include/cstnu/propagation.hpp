#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cstnu/network.hpp"

namespace cstnu {

/// `(X - W <= d1, l1)` then `(Y - X <= d2, l2)` gives `(Y - W <= d1 + d2, l1 l2)`;
/// nothing when the labels clash or the midpoints differ.
std::optional<LabeledConstraint> compose(const LabeledConstraint& c1, const LabeledConstraint& c2);
/// Same, with the derived label extended by L(O(q)) for each letter q it
/// mentions, so the result satisfies WD3.
std::optional<LabeledConstraint> compose(const Network& network, const LabeledConstraint& c1,
                                         const LabeledConstraint& c2);

/// Closes a label under the labels of the observation points of its letters.
std::optional<Label> repair_wd3(const Network& network, const Label& label);

struct LabelModification {
  LabeledConstraint derived;
  /// Replaces the target: the derived constraint first, then one residual
  /// `(Y - X <= v, !a_i beta gamma p)` per literal a_i of alpha.
  std::vector<LabeledConstraint> replacement;
};

/// `obs_edge` is `(X - O(p) <= -w, alpha beta)`, `target` is
/// `(Y - X <= v, beta gamma p)` where p may be either literal. Throws
/// PreconditionError listing every violated precondition.
LabelModification label_modification(const LabeledConstraint& obs_edge, const LabeledConstraint& target, Letter p);
/// Network form: p is the letter observed at the edge's source, and the
/// edge must originate at O(p).
LabelModification label_modification(const Network& network, const LabeledConstraint& obs_edge,
                                     const LabeledConstraint& target);

/// c1 is at least as tight as c2 wherever c2 applies.
bool dominates(const LabeledConstraint& c1, const LabeledConstraint& c2) noexcept;

struct Derivation {
  std::size_t index = 0;
  std::string rule;
  std::vector<std::size_t> parents;
};

struct PropagationResult {
  /// Every constraint ever held: originals first, then derived in order.
  std::vector<LabeledConstraint> ledger;
  /// Indices into the ledger of the surviving (undominated, unreplaced) set.
  std::vector<std::size_t> active;
  std::vector<Derivation> trace;
  bool fixpoint = false;
  bool refuted = false;
  std::optional<std::size_t> refutation;
  std::size_t applications = 0;

  std::vector<LabeledConstraint> constraints() const;
};

/// Alternates composition and label-modification rounds with dominance
/// pruning until nothing changes, a negative self-loop appears, or
/// `budget` rule applications have been spent.
PropagationResult propagate_to_fixpoint(const Network& network, std::size_t budget = 10000);

}  // namespace cstnu
