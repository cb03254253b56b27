#include "cstnu/semantics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cstnu/error.hpp"

namespace cstnu {

const StrategyEntry* ExecutionStrategy::find(const Drama& drama) const {
  for (const auto& e : entries) {
    if (e.drama == drama) return &e;
  }
  return nullptr;
}

std::string to_string(const ScenarioHistory& h) { return "{" + (h.empty() ? std::string() : h.to_string()) + "}"; }

std::string to_string(const SituationHistory& h, const std::vector<std::string>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i) out += ", ";
    out += "(" + ids[h[i].activation] + "," + ids[h[i].contingent] + "," + format_rational(h[i].duration) + ")";
  }
  return out + "}";
}

namespace {

const Rational& time_of(const Schedule& schedule, const std::string& id) {
  auto it = schedule.find(id);
  if (it == schedule.end()) throw PreconditionError("schedule has no time for " + id);
  return it->second;
}

struct HistoryLess {
  bool operator()(const DramaHistory& a, const DramaHistory& b) const {
    if (a.scenario != b.scenario) return a.scenario < b.scenario;
    return a.situation < b.situation;
  }
};

void require_domain(const Schedule& schedule, const std::vector<std::string>& expected, const std::string& what) {
  std::set<std::string, std::less<>> want(expected.begin(), expected.end());
  for (const auto& [id, t] : schedule) {
    if (!want.count(id)) throw PreconditionError("schedule for " + what + " assigns " + id + " which is not relevant");
  }
  for (const auto& id : expected) {
    if (!schedule.count(id)) throw PreconditionError("schedule for " + what + " lacks relevant time-point " + id);
  }
}

}  // namespace

ScenarioHistory sc_hst_star(const Network& network, const Scenario& s, const Schedule& schedule, const Rational& t) {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
  for (const auto& [p, obs] : network.observations()) {
    if (!evaluate(network.label(obs), s)) continue;
    if (time_of(schedule, network.id(obs)) < t) (s.value(p) ? pos : neg) |= p.bit();
  }
  return *Label::from_masks(pos, neg);
}

ScenarioHistory sc_hst(const Network& network, const Scenario& s, const Schedule& schedule, std::size_t x) {
  if (!evaluate(network.label(x), s)) {
    throw PreconditionError(network.id(x) + " is not relevant in scenario " + s.to_string());
  }
  return sc_hst_star(network, s, schedule, time_of(schedule, network.id(x)));
}

SituationHistory sit_hst(const Stnu& stnu, const Schedule& schedule, const Rational& t) {
  SituationHistory out;
  for (const auto& l : stnu.links) {
    const Rational& c = time_of(schedule, stnu.stn.timepoints[l.contingent]);
    if (c < t) out.push_back({l.activation, l.contingent, c - time_of(schedule, stnu.stn.timepoints[l.activation])});
  }
  std::sort(out.begin(), out.end());
  return out;
}

DramaHistory dr_hst(const Network& network, const Drama& drama, const Schedule& schedule, const Rational& t) {
  DramaHistory h;
  h.scenario = sc_hst_star(network, drama.scenario, schedule, t);
  for (const auto& l : network.links()) {
    if (!evaluate(network.label(l.activation), drama.scenario) ||
        !evaluate(network.label(l.contingent), drama.scenario)) {
      continue;
    }
    const Rational& c = time_of(schedule, network.id(l.contingent));
    if (c < t) h.situation.push_back({l.activation, l.contingent, c - time_of(schedule, network.id(l.activation))});
  }
  std::sort(h.situation.begin(), h.situation.end());
  return h;
}

ViabilityReport is_viable(const Network& network, const ExecutionStrategy& strategy) {
  ViabilityReport report;
  for (std::size_t i = 0; i < strategy.entries.size(); ++i) {
    const auto& e = strategy.entries[i];
    Projection p = project(network, e.drama.scenario, &e.drama.situation);
    require_domain(e.schedule, p.stn.timepoints, to_string(e.drama));
    auto violated = check_solution(p.stn, e.schedule);
    if (!violated.empty()) {
      report.viable = false;
      report.entry = i;
      report.message = "schedule for " + to_string(e.drama) + " violates";
      for (const auto& c : violated) {
        report.message += " (" + p.stn.timepoints[c.to] + " - " + p.stn.timepoints[c.from] +
                          " <= " + format_rational(c.delta) + ")";
      }
      report.violated = std::move(violated);
      return report;
    }
  }
  return report;
}

ViabilityReport is_viable(const Stnu& stnu, const ExecutionStrategy& strategy) {
  ViabilityReport report;
  for (std::size_t i = 0; i < strategy.entries.size(); ++i) {
    const auto& e = strategy.entries[i];
    if (!e.drama.scenario.domain().empty()) throw PreconditionError("STNU strategy entries carry no scenario");
    Stn stn = situation_projection(stnu, e.drama.situation);
    require_domain(e.schedule, stn.timepoints, to_string(e.drama.situation));
    auto violated = check_solution(stn, e.schedule);
    if (!violated.empty()) {
      report.viable = false;
      report.entry = i;
      report.message = "schedule for situation (" + to_string(e.drama.situation) + ") violates";
      for (const auto& c : violated) {
        report.message += " (" + stn.timepoints[c.to] + " - " + stn.timepoints[c.from] +
                          " <= " + format_rational(c.delta) + ")";
      }
      report.violated = std::move(violated);
      return report;
    }
  }
  return report;
}

DynamicReport is_dynamic_cstn(const Network& network, const ExecutionStrategy& strategy) {
  DynamicReport report;
  const auto& es = strategy.entries;
  for (std::size_t x = 0; x < network.size(); ++x) {
    const std::string& id = network.id(x);
    for (std::size_t j = 0; j < es.size(); ++j) {
      if (!evaluate(network.label(x), es[j].drama.scenario)) continue;
      const ScenarioHistory h = sc_hst(network, es[j].drama.scenario, es[j].schedule, x);
      const Rational& tj = time_of(es[j].schedule, id);
      for (std::size_t i = 0; i < es.size(); ++i) {
        if (i == j || !evaluate(network.label(x), es[i].drama.scenario)) continue;
        if (!con(es[i].drama.scenario.as_label(), h)) continue;
        if (time_of(es[i].schedule, id) != tj) {
          report.dynamic = false;
          report.first = i;
          report.second = j;
          report.timepoint = id;
          report.message = "scenario " + es[i].drama.scenario.to_string() + " agrees with the history " +
                           to_string(h) + " of " + id + " under " + es[j].drama.scenario.to_string() +
                           " but executes it at " + format_rational(time_of(es[i].schedule, id)) + " instead of " +
                           format_rational(tj);
          return report;
        }
      }
    }
  }
  return report;
}

namespace {

// For every X and every time t at which some entry executes X, entries with
// equal histories at t must all execute X at t.
template <typename Relevant, typename History>
DynamicReport bucket_check(const std::vector<StrategyEntry>& es, const std::vector<std::string>& ids,
                           const std::vector<bool>& contingent, Relevant relevant, History history) {
  DynamicReport report;
  for (std::size_t x = 0; x < ids.size(); ++x) {
    if (contingent[x]) continue;
    std::vector<std::size_t> members;
    std::set<Rational> times;
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (!relevant(i, x)) continue;
      members.push_back(i);
      times.insert(time_of(es[i].schedule, ids[x]));
    }
    for (const Rational& t : times) {
      std::map<DramaHistory, std::vector<std::size_t>, HistoryLess> buckets;
      for (std::size_t i : members) buckets[history(i, t)].push_back(i);
      for (const auto& [h, bucket] : buckets) {
        std::optional<std::size_t> at_t;
        std::optional<std::size_t> elsewhere;
        for (std::size_t i : bucket) {
          (time_of(es[i].schedule, ids[x]) == t ? at_t : elsewhere) = i;
        }
        if (at_t && elsewhere) {
          report.dynamic = false;
          report.first = *at_t;
          report.second = *elsewhere;
          report.timepoint = ids[x];
          report.message = to_string(es[*at_t].drama) + " and " + to_string(es[*elsewhere].drama) +
                           " share their history at " + format_rational(t) + " but execute " + ids[x] + " at " +
                           format_rational(t) + " and " + format_rational(time_of(es[*elsewhere].schedule, ids[x]));
          return report;
        }
      }
    }
  }
  return report;
}

}  // namespace

DynamicReport is_dynamic_star(const Network& network, const ExecutionStrategy& strategy) {
  const auto& es = strategy.entries;
  std::vector<std::string> ids;
  std::vector<bool> contingent;
  for (std::size_t x = 0; x < network.size(); ++x) {
    ids.push_back(network.id(x));
    contingent.push_back(network.is_contingent(x));
  }
  std::vector<std::vector<bool>> rel(es.size(), std::vector<bool>(network.size()));
  for (std::size_t i = 0; i < es.size(); ++i) {
    require_scenario(network, es[i].drama.scenario);
    for (std::size_t x = 0; x < network.size(); ++x) rel[i][x] = evaluate(network.label(x), es[i].drama.scenario);
  }
  return bucket_check(
      es, ids, contingent, [&](std::size_t i, std::size_t x) { return bool(rel[i][x]); },
      [&](std::size_t i, const Rational& t) { return dr_hst(network, es[i].drama, es[i].schedule, t); });
}

DynamicReport is_dynamic_star(const Stnu& stnu, const ExecutionStrategy& strategy) {
  const auto& es = strategy.entries;
  std::vector<bool> contingent(stnu.stn.timepoints.size(), false);
  for (const auto& l : stnu.links) contingent[l.contingent] = true;
  return bucket_check(
      es, stnu.stn.timepoints, contingent, [](std::size_t, std::size_t) { return true; },
      [&](std::size_t i, const Rational& t) { return DramaHistory{Label{}, sit_hst(stnu, es[i].schedule, t)}; });
}

}  // namespace cstnu
