#include "cstnu/network.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

#include "cstnu/error.hpp"

namespace cstnu {

std::string_view to_string(NetworkKind kind) {
  switch (kind) {
    case NetworkKind::Stn: return "STN";
    case NetworkKind::Cstn: return "CSTN";
    case NetworkKind::Stnu: return "STNU";
    case NetworkKind::Cstnu: return "CSTNU";
  }
  return "?";
}

Rational default_epsilon() { return Rational(1, 1000); }

NetworkKind Network::kind() const noexcept {
  const bool conditional = !letters_.empty();
  const bool uncertain = !links_.empty();
  if (conditional && uncertain) return NetworkKind::Cstnu;
  if (conditional) return NetworkKind::Cstn;
  if (uncertain) return NetworkKind::Stnu;
  return NetworkKind::Stn;
}

std::optional<std::size_t> Network::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Network::index_of(std::string_view id) const {
  auto idx = find(id);
  if (!idx) throw PreconditionError("unknown time-point '" + std::string(id) + "'");
  return *idx;
}

std::optional<std::size_t> Network::observer(Letter p) const {
  auto it = observations_.find(p);
  if (it == observations_.end()) return std::nullopt;
  return it->second;
}

std::optional<Letter> Network::observed_letter(std::size_t index) const {
  for (const auto& [p, tp] : observations_) {
    if (tp == index) return p;
  }
  return std::nullopt;
}

std::optional<std::size_t> Network::link_of_contingent(std::size_t index) const {
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (links_[i].contingent == index) return i;
  }
  return std::nullopt;
}

Network Network::with_constraints(std::vector<LabeledConstraint> constraints) const {
  Network copy = *this;
  copy.constraints_ = std::move(constraints);
  return copy;
}

std::string Network::describe(const LabeledConstraint& c) const {
  return "(" + id(c.to) + " - " + id(c.from) + " <= " + format_rational(c.delta) + ", " + c.label.to_string() + ")";
}

// ---------------------------------------------------------------------------

NetworkBuilder& NetworkBuilder::letter(Letter p) {
  net_.letters_.insert(p);
  return *this;
}

NetworkBuilder& NetworkBuilder::letters(const LetterSet& set) {
  for (Letter p : set.to_vector()) letter(p);
  return *this;
}

NetworkBuilder& NetworkBuilder::epsilon(const Rational& value) {
  if (value <= 0) throw PreconditionError("epsilon must be positive");
  net_.epsilon_ = value;
  return *this;
}

std::size_t NetworkBuilder::timepoint(std::string id, Label label) {
  if (id.empty()) throw InvalidNetwork("time-point id must not be empty");
  if (net_.index_.count(id) != 0) throw InvalidNetwork("duplicate time-point '" + id + "'");
  net_.index_.emplace(id, net_.timepoints_.size());
  net_.timepoints_.push_back({std::move(id), label});
  return net_.timepoints_.size() - 1;
}

std::size_t NetworkBuilder::require(std::string_view id) const {
  auto idx = net_.find(id);
  if (!idx) throw InvalidNetwork("unknown time-point '" + std::string(id) + "'");
  return *idx;
}

NetworkBuilder& NetworkBuilder::observe(Letter p, std::string_view id) {
  net_.observations_[p] = require(id);
  return *this;
}

NetworkBuilder& NetworkBuilder::constraint(std::string_view from, std::string_view to, const Rational& delta,
                                           Label label) {
  net_.constraints_.push_back({require(from), require(to), delta, label});
  return *this;
}

NetworkBuilder& NetworkBuilder::interval(std::string_view from, std::string_view to, const Rational& lower,
                                         const Rational& upper, Label label) {
  constraint(from, to, upper, label);
  return constraint(to, from, Rational(-lower), label);
}

NetworkBuilder& NetworkBuilder::link(std::string_view activation, const Rational& lower, const Rational& upper,
                                     std::string_view contingent) {
  net_.links_.push_back({require(activation), lower, upper, require(contingent)});
  return *this;
}

NetworkBuilder& NetworkBuilder::contingent_link(std::string_view activation, const Rational& lower,
                                                const Rational& upper, std::string_view contingent) {
  link(activation, lower, upper, contingent);
  return interval(activation, contingent, lower, upper, net_.label(require(activation)));
}

NetworkBuilder& NetworkBuilder::add(const LabeledConstraint& c) {
  if (c.from >= net_.size() || c.to >= net_.size()) throw InvalidNetwork("constraint endpoint out of range");
  net_.constraints_.push_back(c);
  return *this;
}

// ---------------------------------------------------------------------------

bool ValidationReport::has(std::string_view condition) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.condition == condition; });
}

void ValidationReport::add(std::string condition, std::string message) {
  violations.push_back({std::move(condition), std::move(message)});
}

void ValidationReport::merge(const ValidationReport& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& v : violations) out << v.condition << ": " << v.message << '\n';
  return out.str();
}

EmbeddingError::EmbeddingError(ValidationReport report)
    : PreconditionError("embedding input is not well formed:\n" + report.to_string()), report_(std::move(report)) {}

namespace {

std::string letter_name(Letter p) { return std::string(1, p.symbol()); }

void check_observation_map(const Network& n, ValidationReport& report) {
  std::map<std::size_t, Letter> seen;
  for (const auto& [p, tp] : n.observations()) {
    if (!n.letters().contains(p)) {
      report.add("OBS", "observation declared for letter " + letter_name(p) + " which is not in P");
    }
    auto [it, inserted] = seen.emplace(tp, p);
    if (!inserted) {
      report.add("OBS", "time-point " + n.id(tp) + " observes both " + letter_name(it->second) + " and " +
                            letter_name(p));
    }
  }
  for (Letter p : n.letters().to_vector()) {
    if (!n.observer(p)) report.add("OBS", "letter " + letter_name(p) + " has no observation time-point");
  }
}

}  // namespace

ValidationReport validate_cstn(const Network& n) {
  ValidationReport report;
  check_observation_map(n, report);

  for (const auto& c : n.constraints()) {
    if (!sub(c.label, n.label(c.from)) || !sub(c.label, n.label(c.to))) {
      report.add("WD1", n.describe(c) + " does not subsume the labels " + n.label(c.from).to_string() + " of " +
                            n.id(c.from) + " and " + n.label(c.to).to_string() + " of " + n.id(c.to));
    }
  }

  for (std::size_t t = 0; t < n.size(); ++t) {
    const Label& lt = n.label(t);
    for (Letter p : lt.letters().to_vector()) {
      auto obs = n.observer(p);
      if (!n.letters().contains(p) || !obs) {
        report.add("WD2", "label of " + n.id(t) + " mentions " + letter_name(p) + " which has no observation point");
        continue;
      }
      if (!sub(lt, n.label(*obs))) {
        report.add("WD2", "label " + lt.to_string() + " of " + n.id(t) + " does not subsume label " +
                              n.label(*obs).to_string() + " of observation point " + n.id(*obs));
      }
      const bool ordered = std::any_of(n.constraints().begin(), n.constraints().end(), [&](const auto& c) {
        return c.from == t && c.to == *obs && c.label == lt && c.delta <= -n.epsilon();
      });
      if (!ordered) {
        report.add("WD2", "missing (" + n.id(*obs) + " - " + n.id(t) + " <= -" + format_rational(n.epsilon()) +
                              ", " + lt.to_string() + ")");
      }
    }
  }

  for (const auto& c : n.constraints()) {
    for (Letter p : c.label.letters().to_vector()) {
      auto obs = n.observer(p);
      if (!n.letters().contains(p) || !obs) {
        report.add("WD3", n.describe(c) + " mentions " + letter_name(p) + " which has no observation point");
        continue;
      }
      if (!sub(c.label, n.label(*obs))) {
        report.add("WD3", n.describe(c) + " does not subsume label " + n.label(*obs).to_string() +
                              " of observation point " + n.id(*obs));
      }
    }
  }
  return report;
}

ValidationReport validate_stnu(const Stnu& u) {
  ValidationReport report;
  const auto& ids = u.stn.timepoints;
  auto link_name = [&](const ContingentLink& l) {
    return "(" + ids[l.activation] + ", " + format_rational(l.lower) + ", " + format_rational(l.upper) + ", " +
           ids[l.contingent] + ")";
  };
  auto has = [&](std::size_t from, std::size_t to, const Rational& delta) {
    return std::any_of(u.stn.constraints.begin(), u.stn.constraints.end(),
                       [&](const auto& c) { return c.from == from && c.to == to && c.delta == delta; });
  };
  std::map<std::size_t, std::size_t> contingent_owner;
  for (std::size_t i = 0; i < u.links.size(); ++i) {
    const auto& l = u.links[i];
    if (!(l.lower > 0 && l.lower < l.upper)) {
      report.add("LINK-BOUNDS", "link " + link_name(l) + " must satisfy 0 < x < y");
    }
    if (l.activation == l.contingent) {
      report.add("LINK-BOUNDS", "link " + link_name(l) + " has identical activation and contingent points");
    }
    if (!has(l.activation, l.contingent, l.upper) || !has(l.contingent, l.activation, Rational(-l.lower))) {
      report.add("LINK-CONSTRAINT", "constraints for link " + link_name(l) + " are missing");
    }
    auto [it, inserted] = contingent_owner.emplace(l.contingent, i);
    if (!inserted) {
      report.add("LINK-DISTINCT", "links " + link_name(u.links[it->second]) + " and " + link_name(l) +
                                      " share contingent point " + ids[l.contingent]);
    }
  }

  // Loops in the activation -> contingent graph.
  const std::size_t n = ids.size();
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& l : u.links) succ[l.activation].push_back(l.contingent);
  std::vector<int> color(n, 0);
  std::vector<std::size_t> stack;
  bool reported = false;
  std::function<void(std::size_t)> dfs = [&](std::size_t v) {
    color[v] = 1;
    stack.push_back(v);
    for (std::size_t w : succ[v]) {
      if (color[w] == 1 && !reported) {
        std::string cycle;
        auto start = std::find(stack.begin(), stack.end(), w);
        for (auto it = start; it != stack.end(); ++it) cycle += ids[*it] + " -> ";
        cycle += ids[w];
        report.add("LINK-LOOP", "contingent links form a loop: " + cycle);
        reported = true;
      } else if (color[w] == 0) {
        dfs(w);
      }
    }
    stack.pop_back();
    color[v] = 2;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (color[v] == 0) dfs(v);
  }
  return report;
}

ValidationReport validate_cstnu(const Network& n) {
  ValidationReport report = validate_cstn(n);
  report.merge(validate_stnu(unlabeled_part(n)));
  for (const auto& l : n.links()) {
    const Label& la = n.label(l.activation);
    if (la != n.label(l.contingent)) {
      report.add("LINK-LABEL", "link endpoints " + n.id(l.activation) + " (" + la.to_string() + ") and " +
                                   n.id(l.contingent) + " (" + n.label(l.contingent).to_string() +
                                   ") carry different labels");
    }
    auto has = [&](std::size_t from, std::size_t to, const Rational& delta) {
      return std::any_of(n.constraints().begin(), n.constraints().end(), [&](const auto& c) {
        return c.from == from && c.to == to && c.delta == delta && c.label == la;
      });
    };
    if (!has(l.activation, l.contingent, l.upper) || !has(l.contingent, l.activation, Rational(-l.lower))) {
      report.add("LINK-LABEL", "labeled bound constraints (" + format_rational(l.lower) + " <= " +
                                   n.id(l.contingent) + " - " + n.id(l.activation) + " <= " +
                                   format_rational(l.upper) + ", " + la.to_string() + ") are missing");
    }
  }
  return report;
}

std::vector<SimpleConstraint> strip_labels(const std::vector<LabeledConstraint>& constraints) {
  std::vector<SimpleConstraint> out;
  std::set<std::tuple<std::size_t, std::size_t, Rational>> seen;
  for (const auto& c : constraints) {
    if (seen.emplace(c.from, c.to, c.delta).second) out.push_back({c.from, c.to, c.delta, {}});
  }
  return out;
}

Stnu unlabeled_part(const Network& n) {
  Stnu u;
  for (const auto& tp : n.timepoints()) u.stn.timepoints.push_back(tp.id);
  u.stn.constraints = strip_labels(n.constraints());
  u.links = n.links();
  return u;
}

Network embed_stn(const Stn& stn) {
  NetworkBuilder b;
  for (const auto& id : stn.timepoints) b.timepoint(id);
  for (const auto& c : stn.constraints) b.add({c.from, c.to, c.delta, Label{}});
  return b.build();
}

Network embed_cstp(const Cstp& cstp) {
  ValidationReport report;
  const auto& pts = cstp.points;
  for (const auto& e : cstp.edges) {
    if (!con(pts[e.from].label, pts[e.to].label)) {
      report.add("A1", "edge " + pts[e.from].id + " -> " + pts[e.to].id + " relates inconsistent labels " +
                           pts[e.from].label.to_string() + " and " + pts[e.to].label.to_string());
    }
  }
  for (std::size_t t = 0; t < pts.size(); ++t) {
    for (Letter p : pts[t].label.letters().to_vector()) {
      auto it = cstp.observations.find(p);
      if (it == cstp.observations.end() || !cstp.letters.contains(p)) {
        report.add("A2", pts[t].id + " is labeled with " + letter_name(p) + " which has no observation node");
        continue;
      }
      const std::size_t obs = it->second;
      if (!sub(pts[t].label, pts[obs].label)) {
        report.add("A2", "observation node " + pts[obs].id + " is not executed whenever " + pts[t].id + " is");
      }
      const bool before = std::any_of(cstp.edges.begin(), cstp.edges.end(), [&](const CstpEdge& e) {
        return (e.from == obs && e.to == t && e.lower && *e.lower >= cstp.epsilon) ||
               (e.from == t && e.to == obs && e.upper && *e.upper <= -cstp.epsilon);
      });
      if (!before) {
        report.add("A2", "no edge forces observation node " + pts[obs].id + " to precede " + pts[t].id);
      }
    }
  }
  if (!report.ok()) throw EmbeddingError(report);

  NetworkBuilder b;
  b.letters(cstp.letters).epsilon(cstp.epsilon);
  for (const auto& tp : pts) b.timepoint(tp.id, tp.label);
  for (const auto& [p, tp] : cstp.observations) b.observe(p, pts[tp].id);
  for (const auto& e : cstp.edges) {
    const Label label = *conjoin(pts[e.from].label, pts[e.to].label);
    if (e.upper) b.add({e.from, e.to, *e.upper, label});
    if (e.lower) b.add({e.to, e.from, Rational(-*e.lower), label});
  }
  Network out = b.build();
  if (auto r = validate_cstn(out); !r.ok()) throw EmbeddingError(r);
  return out;
}

Network embed_stnu(const Stnu& stnu) {
  if (auto r = validate_stnu(stnu); !r.ok()) throw EmbeddingError(r);
  NetworkBuilder b;
  for (const auto& id : stnu.stn.timepoints) b.timepoint(id);
  for (const auto& c : stnu.stn.constraints) b.add({c.from, c.to, c.delta, Label{}});
  for (const auto& l : stnu.links) {
    b.link(stnu.stn.timepoints[l.activation], l.lower, l.upper, stnu.stn.timepoints[l.contingent]);
  }
  return b.build();
}

Network embed_cstn(const Network& cstn) {
  ValidationReport r = validate_cstn(cstn);
  if (!cstn.links().empty()) r.add("LINK-BOUNDS", "a CSTN carries no contingent links");
  if (!r.ok()) throw EmbeddingError(r);
  return cstn;
}

}  // namespace cstnu
