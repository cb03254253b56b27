#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cstnu/rational.hpp"

namespace cstnu {

/// `to - from <= delta`. `origin` is a diagnostic note (which labeled
/// constraint or link produced it) and is ignored by equality.
struct SimpleConstraint {
  std::size_t from = 0;
  std::size_t to = 0;
  Rational delta;
  std::string origin;

  friend bool operator==(const SimpleConstraint& a, const SimpleConstraint& b) {
    return a.from == b.from && a.to == b.to && a.delta == b.delta;
  }
};

/// A simple temporal network: named time-points and unlabeled constraints.
struct Stn {
  std::vector<std::string> timepoints;
  std::vector<SimpleConstraint> constraints;

  std::size_t add_timepoint(std::string id);
  /// `to - from <= delta`.
  void add_constraint(std::size_t from, std::size_t to, Rational delta, std::string origin = {});
  /// `lower <= to - from <= upper` as two constraints.
  void add_interval(std::size_t from, std::size_t to, const Rational& lower, const Rational& upper,
                    const std::string& origin = {});
  std::optional<std::size_t> find(std::string_view id) const;
  /// Throws PreconditionError for unknown ids.
  std::size_t index_of(std::string_view id) const;

  /// Same time-point names and the same set of constraints, compared by name.
  friend bool operator==(const Stn& a, const Stn& b);
};

/// Execution times keyed by time-point id.
using Schedule = std::map<std::string, Rational, std::less<>>;

/// All-pairs shortest-path closure of an STN's distance graph. Entry (i, j)
/// bounds `T_j - T_i`.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::vector<std::string> ids, std::vector<Distance> cells, bool consistent)
      : ids_(std::move(ids)), cells_(std::move(cells)), consistent_(consistent) {}

  std::size_t size() const noexcept { return ids_.size(); }
  bool consistent() const noexcept { return consistent_; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const Distance& at(std::size_t from, std::size_t to) const { return cells_[from * ids_.size() + to]; }
  const Distance& at(std::string_view from, std::string_view to) const;

 private:
  std::vector<std::string> ids_;
  std::vector<Distance> cells_;
  bool consistent_ = true;
};

/// Floyd-Warshall closure; `consistent()` is false iff a negative cycle exists.
DistanceMatrix solve(const Stn& stn);

/// Earliest solution relative to `origin` (which is placed at 0). Points with
/// no lower bound relative to the origin get the earliest value compatible
/// with the points already placed. Throws PreconditionError when the STN is
/// inconsistent or the origin is unknown.
Schedule earliest_solution(const Stn& stn, std::string_view origin);

/// Every constraint the schedule violates. Throws PreconditionError when a
/// time-point of the STN has no assignment.
std::vector<SimpleConstraint> check_solution(const Stn& stn, const Schedule& schedule);

}  // namespace cstnu
