#include "cstnu/workflow.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "cstnu/error.hpp"

namespace cstnu {

std::string_view to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::Task: return "task";
    case ElementKind::Split: return "split";
    case ElementKind::Join: return "join";
  }
  return "?";
}

const WorkflowElement* WorkflowSpec::find(std::string_view id) const {
  for (const auto& e : elements) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  if (line == 0) throw ParseError(msg);
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

bool valid_id(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

Range parse_range(std::string_view text, std::size_t line) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) fail(line, "range '[" + std::string(text) + "]' needs two bounds");
  auto bound = [&](std::string_view s) -> std::string {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
  };
  Range r;
  try {
    r.lower = parse_rational(bound(text.substr(0, comma)));
    std::string hi = bound(text.substr(comma + 1));
    if (hi != "inf") r.upper = parse_rational(hi);
  } catch (const ParseError& e) {
    fail(line, e.what());
  }
  return r;
}

Anchor parse_anchor(const std::string& token, std::size_t line) {
  auto dot = token.rfind('.');
  if (dot == std::string::npos || dot + 2 != token.size() || (token[dot + 1] != 'S' && token[dot + 1] != 'E')) {
    fail(line, "anchor '" + token + "' must look like <id>.S or <id>.E");
  }
  return {token.substr(0, dot), token[dot + 1] == 'S'};
}

std::string range_text(const Range& r) {
  return "[" + format_rational(r.lower) + "," + (r.upper ? format_rational(*r.upper) : "inf") + "]";
}

}  // namespace

WorkflowSpec parse_workflow(std::string_view text) {
  WorkflowSpec spec;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::optional<Range> range;
    if (auto open = raw.find('['); open != std::string::npos) {
      auto close = raw.find(']', open);
      if (close == std::string::npos) fail(line, "unterminated range");
      if (raw.find_first_not_of(" \t\r", close + 1) != std::string::npos) fail(line, "text after the range");
      range = parse_range(std::string_view(raw).substr(open + 1, close - open - 1), line);
      raw.erase(open);
    }
    std::istringstream words(raw);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) {
      if (range) fail(line, "range without a statement");
      continue;
    }
    const std::string& kw = tok[0];
    auto need_range = [&] {
      if (!range) fail(line, "'" + kw + "' needs a range [x,y]");
      return *range;
    };
    if (kw == "task" || kw == "split" || kw == "join") {
      if (tok.size() != 2) fail(line, "expected '" + kw + " <id> [x,y]'");
      if (!valid_id(tok[1])) fail(line, "bad identifier '" + tok[1] + "'");
      ElementKind kind = kw == "task" ? ElementKind::Task : kw == "split" ? ElementKind::Split : ElementKind::Join;
      spec.elements.push_back({tok[1], kind, need_range(), line});
    } else if (kw == "flow") {
      if (tok.size() != 4 || tok[2] != "->") fail(line, "expected 'flow <from> -> <to> [x,y]'");
      spec.flows.push_back({tok[1], tok[3], range ? *range : Range{Rational(0), std::nullopt}, line});
    } else if (kw == "branch") {
      if (tok.size() != 3 && tok.size() != 4) fail(line, "expected 'branch <split> <target> [+|-]'");
      if (range) fail(line, "'branch' takes no range");
      std::optional<bool> sign;
      if (tok.size() == 4) {
        if (tok[3] != "+" && tok[3] != "-") fail(line, "branch sign must be + or -");
        sign = tok[3] == "+";
      }
      spec.branches.push_back({tok[1], tok[2], sign, line});
    } else if (kw == "constrain") {
      if (tok.size() != 4 || tok[2] != "->") fail(line, "expected 'constrain <id>.<S|E> -> <id>.<S|E> [x,y]'");
      spec.constraints.push_back({parse_anchor(tok[1], line), parse_anchor(tok[3], line), need_range(), line});
    } else {
      fail(line, "unknown statement '" + kw + "'");
    }
  }
  validate_workflow(spec);
  return spec;
}

void validate_workflow(const WorkflowSpec& spec) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < spec.elements.size(); ++i) {
    const auto& e = spec.elements[i];
    if (!index.emplace(e.id, i).second) fail(e.line, "duplicate element '" + e.id + "'");
    if (!e.range.upper) fail(e.line, e.id + " needs a finite upper bound");
    if (e.kind == ElementKind::Task) {
      if (!(e.range.lower > 0 && e.range.lower < *e.range.upper)) {
        fail(e.line, "task " + e.id + " needs 0 < x < y, got " + range_text(e.range));
      }
    } else if (e.range.lower < 0 || e.range.lower > *e.range.upper) {
      fail(e.line, std::string(to_string(e.kind)) + " " + e.id + " needs 0 <= x <= y, got " + range_text(e.range));
    }
  }
  auto known = [&](const std::string& id, std::size_t line) {
    auto it = index.find(id);
    if (it == index.end()) fail(line, "unknown element '" + id + "'");
    return it->second;
  };

  const std::size_t n = spec.elements.size();
  std::vector<std::vector<std::size_t>> succ(n);
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& f : spec.flows) {
    const std::size_t a = known(f.from, f.line);
    const std::size_t b = known(f.to, f.line);
    if (a == b) fail(f.line, "flow from " + f.from + " to itself");
    if (!edges.emplace(a, b).second) fail(f.line, "duplicate flow " + f.from + " -> " + f.to);
    if (f.delay.lower < 0 || (f.delay.upper && f.delay.lower > *f.delay.upper)) {
      fail(f.line, "flow delay needs 0 <= x <= y, got " + range_text(f.delay));
    }
    succ[a].push_back(b);
  }

  std::vector<int> color(n, 0);
  std::function<void(std::size_t)> dfs = [&](std::size_t v) {
    color[v] = 1;
    for (std::size_t w : succ[v]) {
      if (color[w] == 1) fail(0, "flow graph has a cycle through " + spec.elements[w].id);
      if (color[w] == 0) dfs(w);
    }
    color[v] = 2;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (color[v] == 0) dfs(v);
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = spec.elements[i];
    if (e.kind == ElementKind::Split && succ[i].size() < 2) {
      fail(e.line, "split " + e.id + " needs at least two outgoing flows");
    }
  }
  std::set<std::pair<std::string, std::string>> seen_branch;
  std::map<std::string, int> signs;
  for (const auto& b : spec.branches) {
    const std::size_t s = known(b.split, b.line);
    const std::size_t t = known(b.target, b.line);
    if (spec.elements[s].kind != ElementKind::Split) fail(b.line, b.split + " is not a split");
    if (!edges.count({s, t})) fail(b.line, "no flow from " + b.split + " to " + b.target);
    if (!seen_branch.emplace(b.split, b.target).second) fail(b.line, "branch declared twice");
    if (b.positive) {
      int& mask = signs[b.split];
      const int bit = *b.positive ? 1 : 2;
      if (mask & bit) fail(b.line, "split " + b.split + " already has a " + (*b.positive ? "+" : "-") + " branch");
      mask |= bit;
    }
  }
  for (const auto& c : spec.constraints) {
    known(c.from.element, c.line);
    known(c.to.element, c.line);
    if (!c.range.upper || c.range.lower > *c.range.upper) {
      fail(c.line, "constraint needs a bounded range with x <= y, got " + range_text(c.range));
    }
  }
}

namespace {

// Branch i of k gets the literals of a balanced prefix code; depth d uses
// letter d of the split.
void assign_codes(std::size_t lo, std::size_t hi, std::size_t depth, const std::vector<Letter>& letters,
                  std::vector<Label>& codes, const Label& prefix) {
  if (hi - lo == 1) {
    codes[lo] = prefix;
    return;
  }
  const std::size_t mid = lo + (hi - lo + 1) / 2;
  assign_codes(lo, mid, depth + 1, letters, codes, *conjoin(prefix, Label::literal(letters[depth], true)));
  assign_codes(mid, hi, depth + 1, letters, codes, *conjoin(prefix, Label::literal(letters[depth], false)));
}

std::size_t ceil_log2(std::size_t k) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < k) ++bits;
  return bits;
}

}  // namespace

Compilation compile_workflow(const WorkflowSpec& spec, const Rational& epsilon) {
  validate_workflow(spec);
  const std::size_t n = spec.elements.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[spec.elements[i].id] = i;
  std::vector<std::vector<std::size_t>> preds(n), succ(n);
  for (const auto& f : spec.flows) {
    succ[index[f.from]].push_back(index[f.to]);
    preds[index[f.to]].push_back(index[f.from]);
  }

  // Letters and branch codes per split, in declaration order.
  std::vector<std::vector<Letter>> letters(n);
  std::map<std::pair<std::size_t, std::size_t>, Label> branch_code;
  std::size_t next_letter = 0;
  auto fresh_letter = [&](std::size_t line) {
    static const std::string alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    if (next_letter >= alphabet.size()) fail(line, "workflow needs more than 52 letters");
    return Letter(alphabet[next_letter++]);
  };
  for (std::size_t s = 0; s < n; ++s) {
    if (spec.elements[s].kind != ElementKind::Split) continue;
    std::vector<std::size_t> plus, plain, minus;
    for (std::size_t t : succ[s]) {
      std::optional<bool> sign;
      for (const auto& b : spec.branches) {
        if (b.split == spec.elements[s].id && b.target == spec.elements[t].id) sign = b.positive;
      }
      (sign ? (*sign ? plus : minus) : plain).push_back(t);
    }
    std::vector<std::size_t> order = plus;
    order.insert(order.end(), plain.begin(), plain.end());
    order.insert(order.end(), minus.begin(), minus.end());
    for (std::size_t i = 0; i < ceil_log2(order.size()); ++i) letters[s].push_back(fresh_letter(spec.elements[s].line));
    std::vector<Label> codes(order.size());
    assign_codes(0, order.size(), 0, letters[s], codes, Label{});
    for (std::size_t i = 0; i < order.size(); ++i) branch_code[{s, order[i]}] = codes[i];
  }

  // Element labels in topological order.
  std::vector<std::size_t> indeg(n, 0), topo;
  for (std::size_t v = 0; v < n; ++v) indeg[v] = preds[v].size();
  for (std::size_t round = 0; topo.size() < n; ++round) {
    for (std::size_t v = 0; v < n; ++v) {
      if (indeg[v] == 0) {
        topo.push_back(v);
        indeg[v] = SIZE_MAX;
        for (std::size_t w : succ[v]) --indeg[w];
        break;
      }
    }
  }
  std::vector<Label> label(n);
  for (std::size_t v : topo) {
    std::vector<Label> incoming;
    for (std::size_t u : preds[v]) {
      auto it = branch_code.find({u, v});
      incoming.push_back(it == branch_code.end() ? label[u] : *conjoin(label[u], it->second));
    }
    if (incoming.empty()) continue;
    Label l = incoming.front();
    for (std::size_t i = 1; i < incoming.size(); ++i) {
      if (spec.elements[v].kind == ElementKind::Join) {
        l = l.common(incoming[i]);
      } else {
        auto joined = conjoin(l, incoming[i]);
        if (!joined) {
          fail(spec.elements[v].line, spec.elements[v].id + " is reached from mutually exclusive branches; use a join");
        }
        l = *joined;
      }
    }
    label[v] = l;
  }

  Compilation out;
  NetworkBuilder b;
  b.epsilon(epsilon);
  for (std::size_t s = 0; s < n; ++s) {
    for (Letter p : letters[s]) b.letter(p);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = spec.elements[i];
    ElementMapping m;
    m.start = e.id + "_S";
    m.end = e.id + "_E";
    m.label = label[i];
    m.letters = letters[i];
    b.timepoint(m.start, label[i]);
    b.timepoint(m.end, label[i]);
    for (std::size_t k = 0; k < letters[i].size(); ++k) {
      std::string obs = k == 0 ? m.end : e.id + "_E" + std::to_string(k + 1);
      if (k > 0) b.timepoint(obs, label[i]);
      m.observation_points.push_back(obs);
    }
    out.map.elements[e.id] = m;
  }
  std::size_t links = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = spec.elements[i];
    ElementMapping& m = out.map.elements[e.id];
    if (e.kind == ElementKind::Task) {
      b.contingent_link(m.start, e.range.lower, *e.range.upper, m.end);
      m.link = links++;
    } else {
      b.interval(m.start, m.end, e.range.lower, *e.range.upper, label[i]);
    }
    for (std::size_t k = 0; k < letters[i].size(); ++k) {
      b.observe(letters[i][k], m.observation_points[k]);
      if (k > 0) b.interval(m.end, m.observation_points[k], Rational(0), Rational(0), label[i]);
    }
  }
  for (const auto& f : spec.flows) {
    const std::size_t u = index[f.from], v = index[f.to];
    const Label l = *conjoin(label[u], label[v]);
    const auto& from = out.map.elements[f.from].end;
    const auto& to = out.map.elements[f.to].start;
    if (f.delay.upper) b.constraint(from, to, *f.delay.upper, l);
    b.constraint(to, from, Rational(-f.delay.lower), l);
  }
  for (const auto& c : spec.constraints) {
    const std::size_t u = index[c.from.element], v = index[c.to.element];
    auto l = conjoin(label[u], label[v]);
    if (!l) fail(c.line, "constraint relates " + c.from.element + " and " + c.to.element + " on exclusive branches");
    const auto& mu = out.map.elements[c.from.element];
    const auto& mv = out.map.elements[c.to.element];
    b.interval(c.from.start ? mu.start : mu.end, c.to.start ? mv.start : mv.end, c.range.lower, *c.range.upper, *l);
  }

  // WD2: every labeled point follows the observations of its letters.
  Network partial = b.build();
  for (std::size_t t = 0; t < partial.size(); ++t) {
    const Label& l = partial.label(t);
    for (Letter p : l.letters().to_vector()) {
      b.constraint(partial.id(t), partial.id(*partial.observer(p)), Rational(-epsilon), l);
    }
  }
  out.network = b.build();
  if (auto report = validate_cstnu(out.network); !report.ok()) {
    throw InvalidNetwork("compiled workflow does not validate:\n" + report.to_string());
  }
  return out;
}

}  // namespace cstnu
