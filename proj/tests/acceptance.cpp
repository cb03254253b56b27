// One PASS/FAIL line per acceptance criterion; exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "cstnu/dc_check.hpp"
#include "cstnu/json_io.hpp"
#include "cstnu/propagation.hpp"
#include "cstnu/strategy_space.hpp"
#include "cstnu/workflow.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace cstnu;
namespace t = cstnu::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int number, const char* title, double limit_ms, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (o.pass && ms > limit_ms) {
    o.pass = false;
    o.detail += " (over the time limit)";
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %s [%.1f ms / %.0f ms] %s\n", o.pass ? "PASS" : "FAIL", number, title, ms, limit_ms,
              o.detail.c_str());
  std::fflush(stdout);
}

// Corpus shared by criteria 4 and 5.
struct CorpusItem {
  Network net;
  ExecutionStrategy strategy;
};

std::vector<CorpusItem> make_corpus() {
  t::Rng rng(2024);
  std::vector<CorpusItem> out;
  while (out.size() < 200) {
    Network net = t::random_cstn(rng, t::uniform(rng, 2, 6), t::uniform(rng, 1, 3), t::uniform(rng, 0, 4));
    ExecutionStrategy s = t::random_ordered_strategy(rng, net);
    out.push_back({std::move(net), std::move(s)});
  }
  return out;
}

const LabeledConstraint& find(const Network& net, const char* from, const char* to, const char* label) {
  for (const auto& c : net.constraints()) {
    if (net.id(c.from) == from && net.id(c.to) == to && c.label == Label::parse(label)) return c;
  }
  throw std::runtime_error(std::string("fixture lacks ") + from + " -> " + to);
}

}  // namespace

int main() {
  criterion(1, "label universe over {A,B}", 1, [] {
    const auto universe = enumerate_universe(LetterSet::parse("AB"));
    const std::set<Label> expected{Label{},           Label::parse("A"),  Label::parse("B"),
                                   Label::parse("!A"), Label::parse("!B"), Label::parse("AB"),
                                   Label::parse("A!B"), Label::parse("!AB"), Label::parse("!A!B")};
    const std::set<Label> got(universe.begin(), universe.end());
    return Outcome{universe.size() == 9 && got == expected, std::to_string(universe.size()) + " labels"};
  });

  criterion(2, "con/sub agree with truth tables, |P| <= 3", 1000, [] {
    std::size_t pairs = 0, mismatches = 0;
    for (const char* letters : {"", "A", "AB", "ABC"}) {
      const LetterSet set = LetterSet::parse(letters);
      const auto universe = enumerate_universe(set);
      for (const Label& a : universe) {
        for (const Label& b : universe) {
          ++pairs;
          if (con(a, b) != t::oracle_con(a, b, set)) ++mismatches;
          if (sub(a, b) != t::oracle_sub(a, b, set)) ++mismatches;
        }
      }
    }
    return Outcome{mismatches == 0, std::to_string(pairs) + " pairs, " + std::to_string(mismatches) + " mismatches"};
  });

  criterion(3, "embeddings of 50 STNs/CSTPs/STNUs/CSTNs validate", 10000, [] {
    t::Rng rng(3);
    int failed = 0;
    for (int i = 0; i < 50; ++i) {
      const Stn stn = t::random_stn(rng, t::uniform(rng, 1, 8), t::uniform(rng, 0, 12));
      if (!validate_cstnu(embed_stn(stn)).ok()) ++failed;
      const Cstp cstp = t::random_cstp(rng, t::uniform(rng, 2, 8), t::uniform(rng, 0, 3), 6);
      if (!validate_cstn(embed_cstp(cstp)).ok()) ++failed;
      const Stnu stnu = t::random_stnu(rng, t::uniform(rng, 2, 8), t::uniform(rng, 0, 3), 4);
      if (!validate_cstnu(embed_stnu(stnu)).ok()) ++failed;
      const Network cstn = t::random_cstn(rng, t::uniform(rng, 2, 8), t::uniform(rng, 0, 3), 5);
      if (!validate_cstnu(embed_cstn(cstn)).ok()) ++failed;
    }
    return Outcome{failed == 0, "200 embeddings, " + std::to_string(failed) + " failures"};
  });

  const auto corpus = make_corpus();

  criterion(4, "pairwise dynamic and dynamic* agree on 200 CSTN strategies", 60000, [&] {
    int mismatches = 0, dynamic = 0;
    for (const auto& item : corpus) {
      const bool a = is_dynamic_cstn(item.net, item.strategy).dynamic;
      const bool b = is_dynamic_star(item.net, item.strategy).dynamic;
      mismatches += a != b;
      dynamic += a;
    }
    return Outcome{mismatches == 0, std::to_string(dynamic) + " dynamic, " + std::to_string(200 - dynamic) +
                                        " not, " + std::to_string(mismatches) + " mismatches"};
  });

  criterion(5, "history of X equals history* at its execution time", 60000, [&] {
    std::size_t tuples = 0, mismatches = 0;
    for (const auto& item : corpus) {
      for (const auto& e : item.strategy.entries) {
        for (std::size_t x = 0; x < item.net.size(); ++x) {
          auto it = e.schedule.find(item.net.id(x));
          if (it == e.schedule.end()) continue;
          ++tuples;
          if (sc_hst(item.net, e.drama.scenario, e.schedule, x) !=
              sc_hst_star(item.net, e.drama.scenario, e.schedule, it->second)) {
            ++mismatches;
          }
        }
      }
    }
    return Outcome{mismatches == 0, std::to_string(tuples) + " tuples, " + std::to_string(mismatches) + " mismatches"};
  });

  const Network obs_net = t::observation_fixture();
  criterion(6, "label modification on the observation fixture", 1, [&] {
    const auto m = label_modification(obs_net, find(obs_net, "P", "X", "ab"), find(obs_net, "X", "Y", "bcp"));
    const std::size_t x = obs_net.index_of("X"), y = obs_net.index_of("Y");
    const std::vector<LabeledConstraint> expected{{x, y, Rational(5), Label::parse("abc")},
                                                  {x, y, Rational(5), Label::parse("!abcp")}};
    std::string got;
    for (const auto& c : m.replacement) got += obs_net.describe(c) + " ";
    return Outcome{m.derived == expected[0] && m.replacement == expected, got};
  });

  criterion(7, "label modification is sound on grid strategies", 300000, [&] {
    const std::vector<Rational> grid{Rational(0), Rational(5), Rational(10), Rational(15), Rational(20)};
    StrategyDag dag;
    const auto before = enumerate_grid_strategies(obs_net, grid, dag);
    const Network replaced = t::observation_fixture_replaced();
    const auto after = enumerate_grid_strategies(replaced, grid, dag);
    const Letter a('a'), b('b'), c('c');
    const bool derived_holds = every_leaf(dag, before.root, obs_net, grid, [&](const Scenario& s, const Schedule& sch) {
      if (!(s.value(a) && s.value(b) && s.value(c))) return true;
      return sch.at("Y") - sch.at("X") <= 5;
    });
    // Independent re-check of sampled members with the semantic checkers.
    std::mt19937_64 rng(7);
    int sampled_bad = 0;
    for (int i = 0; i < 50 && before.root != StrategyDag::kFail; ++i) {
      const auto s = sample_grid_strategy(dag, before.root, obs_net, grid, rng);
      if (!is_viable(obs_net, s).viable || !is_dynamic_star(obs_net, s).dynamic || !is_viable(replaced, s).viable) {
        ++sampled_bad;
      }
    }
    std::ostringstream d;
    d << "strategies " << before.count.get_str() << " before, " << after.count.get_str() << " after; "
      << dag.size() << " dag nodes; derived holds: " << (derived_holds ? "yes" : "no")
      << "; sampled failures: " << sampled_bad;
    const bool ok = before.root != StrategyDag::kFail && before.root == after.root && derived_holds &&
                    sampled_bad == 0;
    return Outcome{ok, d.str()};
  });

  criterion(8, "unlabeled propagation equals the shortest-path closure", 10000, [] {
    t::Rng rng(8);
    int mismatches = 0, refuted = 0;
    for (int i = 0; i < 50; ++i) {
      const std::size_t n = t::uniform(rng, 2, 8);
      const Stn stn = t::random_stn(rng, n, t::uniform(rng, 1, 16), -3, 10);
      const auto closure = solve(stn);
      const auto r = propagate_to_fixpoint(embed_stn(stn));
      if ((!r.fixpoint && !r.refuted) || r.refuted != !closure.consistent()) {
        ++mismatches;
        continue;
      }
      if (r.refuted) {
        ++refuted;
        continue;
      }
      std::vector<Distance> bound(n * n);
      for (const auto& c : r.constraints()) {
        if (c.label.empty() && c.from != c.to && Distance(c.delta) < bound[c.from * n + c.to]) {
          bound[c.from * n + c.to] = c.delta;
        }
      }
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          if (x != y && !(bound[x * n + y] == closure.at(x, y))) ++mismatches;
        }
      }
    }
    return Outcome{mismatches == 0, "50 instances (" + std::to_string(refuted) + " inconsistent), " +
                                        std::to_string(mismatches) + " mismatches"};
  });

  criterion(9, "CSTN and STNU checks agree with their embeddings", 300000, [] {
    t::Rng rng(9);
    DcOptions o;
    o.duration_samples = 3;
    int mismatches = 0;
    std::map<std::string, int> verdicts;
    for (int i = 0; i < 20; ++i) {
      const Network cstn = t::random_cstn(rng, t::uniform(rng, 2, 5), t::uniform(rng, 0, 2), t::uniform(rng, 1, 4));
      const auto direct = check_dc_cstn(cstn, o).verdict;
      const auto embedded = check_dc(embed_cstn(cstn), o).verdict;
      mismatches += direct != embedded;
      ++verdicts["cstn " + std::string(to_string(direct))];
    }
    for (int i = 0; i < 20; ++i) {
      const Stnu stnu = t::random_stnu(rng, t::uniform(rng, 2, 5), t::uniform(rng, 0, 2), t::uniform(rng, 1, 3));
      const auto direct = check_dc_stnu(stnu, o).verdict;
      const auto embedded = check_dc(embed_stnu(stnu), o).verdict;
      mismatches += direct != embedded;
      ++verdicts["stnu " + std::string(to_string(direct))];
    }
    std::string d;
    for (const auto& [k, v] : verdicts) d += k + "=" + std::to_string(v) + " ";
    return Outcome{mismatches == 0, d + std::to_string(mismatches) + " mismatches"};
  });

  criterion(10, "workflow fixture is controllable with the expected B2 windows", 300000, [] {
    const auto c = compile_workflow(parse_workflow(read_text_file(std::string(CSTNU_TEST_DATA) + "/emergency.wf")));
    const Network& net = c.network;
    if (!validate_cstnu(net).ok()) return Outcome{false, validate_cstnu(net).to_string()};
    const auto r = check_dc(net);
    if (r.verdict != Verdict::Controllable) return Outcome{false, "verdict " + std::string(to_string(r.verdict))};
    if (!is_viable(net, r.strategy).viable || !is_dynamic_star(net, r.strategy).dynamic) {
      return Outcome{false, "strategy fails certification"};
    }
    const Letter branch = c.map.elements.at("C1").letters.at(0);
    std::optional<Rational> lo[2], hi[2];
    for (const auto& e : r.strategy.entries) {
      const int k = e.drama.scenario.value(branch) ? 0 : 1;
      const Rational b2 = e.schedule.at("T5_S") - e.schedule.at("C2_E");
      if (!lo[k] || b2 < *lo[k]) lo[k] = b2;
      if (!hi[k] || b2 > *hi[k]) hi[k] = b2;
    }
    if (!lo[0] || !lo[1]) return Outcome{false, "a branch has no dramas"};
    const bool ok = *lo[0] >= 1 && *hi[0] <= 31 && *lo[1] >= 32 && *hi[1] <= 42;
    return Outcome{ok, std::to_string(r.dramas) + " dramas; B2 on T3 branch [" + format_rational(*lo[0]) + "," +
                           format_rational(*hi[0]) + "], on T4 branch [" + format_rational(*lo[1]) + "," +
                           format_rational(*hi[1]) + "]"};
  });

  criterion(11, "negative-control STNU is not controllable", 1000, [] {
    const auto r = check_dc_stnu(t::negative_control_stnu());
    const bool ok = r.verdict == Verdict::NotControllable && r.inconsistent_drama.has_value();
    return Outcome{ok, std::string(to_string(r.verdict)) +
                           (r.inconsistent_drama ? ", inconsistent drama " + to_string(*r.inconsistent_drama) : "")};
  });

  return failures == 0 ? 0 : 1;
}
