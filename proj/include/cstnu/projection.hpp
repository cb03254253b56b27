#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cstnu/label.hpp"
#include "cstnu/network.hpp"
#include "cstnu/stn.hpp"

namespace cstnu {

/// One duration per contingent link, in declared link order.
using Situation = std::vector<Rational>;

struct Drama {
  Scenario scenario;
  Situation situation;

  friend bool operator==(const Drama&, const Drama&) = default;
  friend bool operator<(const Drama& a, const Drama& b) {
    if (a.scenario != b.scenario) return a.scenario < b.scenario;
    return a.situation < b.situation;
  }
};

std::string to_string(const Situation& situation);
std::string to_string(const Drama& drama);

/// Parses `A=1,B=0` (also `true`/`false`) into a scenario over `letters`.
/// Every letter must be assigned exactly once.
Scenario parse_scenario(std::string_view text, const LetterSet& letters);
/// Parses `2,3.5`.
Situation parse_situation(std::string_view text);

/// Throws PreconditionError unless the scenario's domain is exactly P.
void require_scenario(const Network& network, const Scenario& scenario);
/// Throws PreconditionError unless the situation has one in-bounds duration
/// per link.
void require_situation(const std::vector<ContingentLink>& links, const Situation& situation,
                       const std::vector<std::string>& ids);

/// T_s+ as network indices, in network order.
std::vector<std::size_t> relevant_timepoints(const Network& network, const Scenario& scenario);

/// A projected STN together with the network index of each of its points.
struct Projection {
  Stn stn;
  std::vector<std::size_t> members;
};

/// Shared construction behind the three projections. Links whose endpoints
/// are both relevant get rigid durations when `situation` is given.
Projection project(const Network& network, const Scenario& scenario, const Situation* situation);

Stn scenario_projection(const Network& network, const Scenario& scenario);
Stn situation_projection(const Stnu& stnu, const Situation& situation);
Stn drama_projection(const Network& network, const Scenario& scenario, const Situation& situation);
inline Stn drama_projection(const Network& network, const Drama& drama) {
  return drama_projection(network, drama.scenario, drama.situation);
}

}  // namespace cstnu
