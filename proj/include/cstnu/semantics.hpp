#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cstnu/network.hpp"
#include "cstnu/projection.hpp"
#include "cstnu/stn.hpp"

namespace cstnu {

struct StrategyEntry {
  Drama drama;
  Schedule schedule;
};

/// A finite table from sampled dramas to schedules. CSTN strategies use empty
/// situations; STNU strategies use scenarios over the empty letter set.
struct ExecutionStrategy {
  std::vector<StrategyEntry> entries;

  const StrategyEntry* find(const Drama& drama) const;
};

/// Observations made before a reference time, as the label they spell out.
using ScenarioHistory = Label;

struct LinkRecord {
  std::size_t activation = 0;
  std::size_t contingent = 0;
  Rational duration;

  friend bool operator==(const LinkRecord&, const LinkRecord&) = default;
  friend bool operator<(const LinkRecord& a, const LinkRecord& b) {
    if (a.activation != b.activation) return a.activation < b.activation;
    if (a.contingent != b.contingent) return a.contingent < b.contingent;
    return a.duration < b.duration;
  }
};

/// Completed links, sorted.
using SituationHistory = std::vector<LinkRecord>;

struct DramaHistory {
  ScenarioHistory scenario;
  SituationHistory situation;

  friend bool operator==(const DramaHistory&, const DramaHistory&) = default;
};

std::string to_string(const ScenarioHistory& h);
std::string to_string(const SituationHistory& h, const std::vector<std::string>& ids);

/// Observations whose points are relevant under `s` and executed strictly
/// before `x`. Throws PreconditionError if `x` is not relevant.
ScenarioHistory sc_hst(const Network& network, const Scenario& s, const Schedule& schedule, std::size_t x);
/// Observations whose points are relevant under `s` and executed strictly
/// before `t`.
ScenarioHistory sc_hst_star(const Network& network, const Scenario& s, const Schedule& schedule, const Rational& t);
/// Links whose contingent point is executed strictly before `t`, with the
/// durations the schedule exhibits.
SituationHistory sit_hst(const Stnu& stnu, const Schedule& schedule, const Rational& t);
/// Scenario history paired with the completed links whose endpoints are both
/// relevant under the drama's scenario.
DramaHistory dr_hst(const Network& network, const Drama& drama, const Schedule& schedule, const Rational& t);

struct ViabilityReport {
  bool viable = true;
  /// Index of the first failing entry.
  std::optional<std::size_t> entry;
  std::vector<SimpleConstraint> violated;
  std::string message;
};

/// Each schedule must solve the drama projection of its entry. Throws
/// PreconditionError when a schedule's domain differs from T_s+ or an
/// entry's scenario/situation does not fit the network.
ViabilityReport is_viable(const Network& network, const ExecutionStrategy& strategy);
/// STNU form: schedules range over all of T.
ViabilityReport is_viable(const Stnu& stnu, const ExecutionStrategy& strategy);

struct DynamicReport {
  bool dynamic = true;
  std::size_t first = 0;
  std::size_t second = 0;
  std::string timepoint;
  std::string message;
};

/// Pairwise check: whenever s1 is consistent with the history of X under s2,
/// X must be executed at the same time in both.
DynamicReport is_dynamic_cstn(const Network& network, const ExecutionStrategy& strategy);
/// Equal histories at the time one entry executes X imply equal times for X.
/// Contingent points are exempt.
DynamicReport is_dynamic_star(const Network& network, const ExecutionStrategy& strategy);
DynamicReport is_dynamic_star(const Stnu& stnu, const ExecutionStrategy& strategy);

}  // namespace cstnu
