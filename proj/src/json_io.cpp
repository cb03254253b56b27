#include "cstnu/json_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "cstnu/error.hpp"

namespace cstnu {

Rational rational_from_json(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return parse_rational(std::to_string(value.get<long long>()));
  if (value.is_number()) return parse_rational(value.dump());
  throw ParseError("expected a rational, got " + value.dump());
}

Json rational_to_json(const Rational& value) { return format_rational(value); }

namespace {

const Json& field(const Json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  return obj.at(name);
}

std::string string_field(const Json& obj, const char* name) {
  const Json& v = field(obj, name);
  if (!v.is_string()) throw ParseError(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

Letter letter_from(const std::string& s) {
  if (s.size() != 1) throw ParseError("'" + s + "' is not a single-symbol letter");
  try {
    return Letter(s[0]);
  } catch (const Error&) {
    throw ParseError("'" + s + "' is not a letter");
  }
}

Label label_field(const Json& obj) {
  if (!obj.contains("label")) return Label{};
  const Json& v = obj.at("label");
  if (!v.is_string()) throw ParseError("labels must be strings");
  return Label::parse(v.get<std::string>());
}

}  // namespace

Network network_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("network document must be an object");
  NetworkBuilder b;
  if (doc.contains("letters")) {
    const Json& ls = doc.at("letters");
    if (ls.is_string()) {
      b.letters(LetterSet::parse(ls.get<std::string>()));
    } else if (ls.is_array()) {
      for (const auto& l : ls) {
        if (!l.is_string()) throw ParseError("letters must be strings");
        b.letter(letter_from(l.get<std::string>()));
      }
    } else {
      throw ParseError("'letters' must be an array");
    }
  }
  if (doc.contains("epsilon")) b.epsilon(rational_from_json(doc.at("epsilon")));
  if (doc.contains("timepoints")) {
    for (const auto& tp : doc.at("timepoints")) b.timepoint(string_field(tp, "id"), label_field(tp));
  }
  if (doc.contains("observations")) {
    const Json& obs = doc.at("observations");
    if (!obs.is_object()) throw ParseError("'observations' must map letters to time-point ids");
    for (const auto& [letter, id] : obs.items()) {
      if (!id.is_string()) throw ParseError("observation point for " + letter + " must be a string");
      b.observe(letter_from(letter), id.get<std::string>());
    }
  }
  if (doc.contains("constraints")) {
    for (const auto& c : doc.at("constraints")) {
      b.constraint(string_field(c, "from"), string_field(c, "to"), rational_from_json(field(c, "delta")),
                   label_field(c));
    }
  }
  if (doc.contains("links")) {
    for (const auto& l : doc.at("links")) {
      b.link(string_field(l, "activation"), rational_from_json(field(l, "lower")),
             rational_from_json(field(l, "upper")), string_field(l, "contingent"));
    }
  }
  return b.build();
}

Json network_to_json(const Network& network) {
  Json doc;
  Json letters = Json::array();
  for (Letter p : network.letters().to_vector()) letters.push_back(std::string(1, p.symbol()));
  doc["letters"] = letters;
  doc["epsilon"] = rational_to_json(network.epsilon());
  Json tps = Json::array();
  for (const auto& tp : network.timepoints()) tps.push_back({{"id", tp.id}, {"label", tp.label.to_string()}});
  doc["timepoints"] = tps;
  Json obs = Json::object();
  for (const auto& [p, idx] : network.observations()) obs[std::string(1, p.symbol())] = network.id(idx);
  doc["observations"] = obs;
  Json cs = Json::array();
  for (const auto& c : network.constraints()) {
    cs.push_back({{"from", network.id(c.from)},
                  {"to", network.id(c.to)},
                  {"delta", rational_to_json(c.delta)},
                  {"label", c.label.to_string()}});
  }
  doc["constraints"] = cs;
  Json links = Json::array();
  for (const auto& l : network.links()) {
    links.push_back({{"activation", network.id(l.activation)},
                     {"lower", rational_to_json(l.lower)},
                     {"upper", rational_to_json(l.upper)},
                     {"contingent", network.id(l.contingent)}});
  }
  doc["links"] = links;
  return doc;
}

Json stn_to_json(const Stn& stn) {
  Json doc;
  doc["letters"] = Json::array();
  Json tps = Json::array();
  for (const auto& id : stn.timepoints) tps.push_back({{"id", id}, {"label", "[]"}});
  doc["timepoints"] = tps;
  doc["observations"] = Json::object();
  Json cs = Json::array();
  for (const auto& c : stn.constraints) {
    cs.push_back({{"from", stn.timepoints[c.from]},
                  {"to", stn.timepoints[c.to]},
                  {"delta", rational_to_json(c.delta)},
                  {"label", "[]"},
                  {"origin", c.origin}});
  }
  doc["constraints"] = cs;
  doc["links"] = Json::array();
  return doc;
}

Json schedule_to_json(const Schedule& schedule) {
  Json out = Json::object();
  for (const auto& [id, t] : schedule) out[id] = rational_to_json(t);
  return out;
}

Json strategy_to_json(const ExecutionStrategy& strategy) {
  Json out = Json::array();
  for (const auto& e : strategy.entries) {
    Json scenario = Json::object();
    for (Letter p : e.drama.scenario.domain().to_vector()) {
      scenario[std::string(1, p.symbol())] = e.drama.scenario.value(p);
    }
    Json situation = Json::array();
    for (const auto& d : e.drama.situation) situation.push_back(rational_to_json(d));
    out.push_back({{"scenario", scenario}, {"situation", situation}, {"schedule", schedule_to_json(e.schedule)}});
  }
  return out;
}

ExecutionStrategy strategy_from_json(const Json& doc, const Network& network) {
  if (!doc.is_array()) throw ParseError("strategy document must be an array of entries");
  ExecutionStrategy out;
  for (const auto& e : doc) {
    StrategyEntry entry;
    std::uint64_t truth = 0;
    LetterSet seen;
    if (e.contains("scenario")) {
      const Json& s = e.at("scenario");
      if (!s.is_object()) throw ParseError("'scenario' must map letters to booleans");
      for (const auto& [letter, value] : s.items()) {
        Letter p = letter_from(letter);
        if (!value.is_boolean()) throw ParseError("scenario value for " + letter + " must be a boolean");
        seen.insert(p);
        if (value.get<bool>()) truth |= p.bit();
      }
    }
    if (seen != network.letters()) throw ParseError("scenario must assign exactly the letters of the network");
    entry.drama.scenario = Scenario(seen, truth);
    if (e.contains("situation")) {
      for (const auto& d : e.at("situation")) entry.drama.situation.push_back(rational_from_json(d));
    }
    const Json& sch = field(e, "schedule");
    if (!sch.is_object()) throw ParseError("'schedule' must map time-point ids to times");
    for (const auto& [id, t] : sch.items()) entry.schedule.emplace(id, rational_from_json(t));
    out.entries.push_back(std::move(entry));
  }
  return out;
}

Json report_to_json(const ValidationReport& report) {
  Json vs = Json::array();
  for (const auto& v : report.violations) vs.push_back({{"condition", v.condition}, {"message", v.message}});
  return {{"ok", report.ok()}, {"violations", vs}};
}

namespace {

Json constraint_json(const Network& network, const LabeledConstraint& c) {
  return {{"from", network.id(c.from)},
          {"to", network.id(c.to)},
          {"delta", rational_to_json(c.delta)},
          {"label", c.label.to_string()}};
}

}  // namespace

Json propagation_to_json(const Network& network, const PropagationResult& result) {
  Json cs = Json::array();
  for (std::size_t i : result.active) {
    Json c = constraint_json(network, result.ledger[i]);
    c["index"] = i;
    cs.push_back(c);
  }
  Json out = {{"fixpoint", result.fixpoint},
              {"refuted", result.refuted},
              {"applications", result.applications},
              {"constraints", cs}};
  if (result.refutation) out["refutation"] = constraint_json(network, result.ledger[*result.refutation]);
  return out;
}

Json trace_to_json(const Network& network, const PropagationResult& result) {
  Json out = Json::array();
  for (const auto& d : result.trace) {
    out.push_back({{"index", d.index},
                   {"rule", d.rule},
                   {"parents", d.parents},
                   {"constraint", constraint_json(network, result.ledger[d.index])}});
  }
  return out;
}

Json compilation_map_to_json(const CompilationMap& map) {
  Json out = Json::object();
  for (const auto& [id, m] : map.elements) {
    Json letters = Json::array();
    for (Letter p : m.letters) letters.push_back(std::string(1, p.symbol()));
    Json entry = {{"start", m.start},
                  {"end", m.end},
                  {"label", m.label.to_string()},
                  {"letters", letters},
                  {"observation_points", m.observation_points}};
    if (m.link) entry["link"] = *m.link;
    out[id] = entry;
  }
  return out;
}

Json dc_result_to_json(const Network& network, const DcResult& result) {
  Json out = {{"verdict", std::string(to_string(result.verdict))},
              {"detail", result.detail},
              {"samples", result.sample_description},
              {"dramas", result.dramas},
              {"nodes", result.nodes}};
  if (result.inconsistent_drama) {
    ExecutionStrategy tmp;
    tmp.entries.push_back({*result.inconsistent_drama, {}});
    Json d = strategy_to_json(tmp)[0];
    d.erase("schedule");
    out["inconsistent_drama"] = d;
  }
  if (result.refutation) out["refutation"] = constraint_json(network, *result.refutation);
  if (result.verdict == Verdict::Controllable) out["strategy"] = strategy_to_json(result.strategy);
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  buf << in.rdbuf();
  return buf.str();
}

Json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace cstnu
