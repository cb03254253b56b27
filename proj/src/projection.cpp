#include "cstnu/projection.hpp"


#include "cstnu/error.hpp"

namespace cstnu {

std::string to_string(const Situation& situation) {
  std::string out;
  for (std::size_t i = 0; i < situation.size(); ++i) {
    if (i) out += ',';
    out += format_rational(situation[i]);
  }
  return out;
}

std::string to_string(const Drama& drama) {
  return "(" + drama.scenario.to_string() + "; " + to_string(drama.situation) + ")";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  if (trim(text).empty()) return parts;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    parts.push_back(trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

}  // namespace

Scenario parse_scenario(std::string_view text, const LetterSet& letters) {
  LetterSet seen;
  std::uint64_t truth = 0;
  for (std::string_view part : split_commas(text)) {
    auto eq = part.find('=');
    if (eq == std::string_view::npos) throw ParseError("scenario entry '" + std::string(part) + "' lacks '='");
    std::string_view name = trim(part.substr(0, eq));
    std::string_view value = trim(part.substr(eq + 1));
    if (name.size() != 1) throw ParseError("'" + std::string(name) + "' is not a letter");
    Letter p(name[0]);
    if (!letters.contains(p)) throw ParseError("letter " + std::string(name) + " is not in P");
    if (seen.contains(p)) throw ParseError("letter " + std::string(name) + " assigned twice");
    seen.insert(p);
    if (value == "1" || value == "true" || value == "T") {
      truth |= p.bit();
    } else if (!(value == "0" || value == "false" || value == "F")) {
      throw ParseError("bad truth value '" + std::string(value) + "'");
    }
  }
  if (seen != letters) throw ParseError("scenario must assign every letter of P");
  return Scenario(letters, truth);
}

Situation parse_situation(std::string_view text) {
  Situation out;
  for (std::string_view part : split_commas(text)) out.push_back(parse_rational(part));
  return out;
}

void require_scenario(const Network& network, const Scenario& scenario) {
  if (scenario.domain() != network.letters()) {
    throw PreconditionError("scenario " + scenario.to_string() + " does not assign exactly the letters of P");
  }
}

void require_situation(const std::vector<ContingentLink>& links, const Situation& situation,
                       const std::vector<std::string>& ids) {
  if (situation.size() != links.size()) {
    throw PreconditionError("situation has " + std::to_string(situation.size()) + " durations for " +
                            std::to_string(links.size()) + " links");
  }
  for (std::size_t i = 0; i < links.size(); ++i) {
    const auto& l = links[i];
    if (situation[i] < l.lower || situation[i] > l.upper) {
      throw PreconditionError("duration " + format_rational(situation[i]) + " for link " + ids[l.activation] +
                              " -> " + ids[l.contingent] + " lies outside [" + format_rational(l.lower) + ", " +
                              format_rational(l.upper) + "]");
    }
  }
}

std::vector<std::size_t> relevant_timepoints(const Network& network, const Scenario& scenario) {
  require_scenario(network, scenario);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < network.size(); ++i) {
    if (evaluate(network.label(i), scenario)) out.push_back(i);
  }
  return out;
}

Projection project(const Network& network, const Scenario& scenario, const Situation* situation) {
  Projection p;
  p.members = relevant_timepoints(network, scenario);
  std::vector<std::size_t> local(network.size(), SIZE_MAX);
  for (std::size_t k = 0; k < p.members.size(); ++k) {
    local[p.members[k]] = k;
    p.stn.timepoints.push_back(network.id(p.members[k]));
  }
  for (std::size_t i = 0; i < network.constraints().size(); ++i) {
    const auto& c = network.constraints()[i];
    if (!evaluate(c.label, scenario)) continue;
    if (local[c.from] == SIZE_MAX || local[c.to] == SIZE_MAX) {
      throw PreconditionError(network.describe(c) + " holds in " + scenario.to_string() +
                              " but relates an irrelevant time-point");
    }
    p.stn.add_constraint(local[c.from], local[c.to], c.delta, "constraint #" + std::to_string(i));
  }
  if (situation) {
    std::vector<std::string> ids;
    for (const auto& tp : network.timepoints()) ids.push_back(tp.id);
    require_situation(network.links(), *situation, ids);
    for (std::size_t k = 0; k < network.links().size(); ++k) {
      const auto& l = network.links()[k];
      if (local[l.activation] == SIZE_MAX || local[l.contingent] == SIZE_MAX) continue;
      const Rational& d = (*situation)[k];
      p.stn.add_interval(local[l.activation], local[l.contingent], d, d, "link #" + std::to_string(k) + " duration");
    }
  }
  return p;
}

Stn scenario_projection(const Network& network, const Scenario& scenario) {
  return project(network, scenario, nullptr).stn;
}

Stn situation_projection(const Stnu& stnu, const Situation& situation) {
  require_situation(stnu.links, situation, stnu.stn.timepoints);
  Stn out = stnu.stn;
  for (std::size_t k = 0; k < stnu.links.size(); ++k) {
    const auto& l = stnu.links[k];
    out.add_interval(l.activation, l.contingent, situation[k], situation[k],
                     "link #" + std::to_string(k) + " duration");
  }
  return out;
}

Stn drama_projection(const Network& network, const Scenario& scenario, const Situation& situation) {
  return project(network, scenario, &situation).stn;
}

}  // namespace cstnu
