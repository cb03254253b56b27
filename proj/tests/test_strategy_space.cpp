#include "doctest.h"

#include "cstnu/strategy_space.hpp"
#include "support/generators.hpp"

using namespace cstnu;

namespace {

Network tiny() {
  NetworkBuilder b;
  b.letter(Letter('p'));
  b.timepoint("Z");
  b.timepoint("P");
  b.timepoint("X");
  b.observe(Letter('p'), "P");
  b.interval("Z", "P", Rational(0), Rational(2));
  b.interval("Z", "X", Rational(0), Rational(2));
  b.constraint("P", "X", Rational(0), Label::parse("p"));
  return b.build();
}

// Every scenario-indexed grid strategy, filtered by viability and dynamic*.
long brute_count(const Network& net, const std::vector<Rational>& grid) {
  const auto scenarios = enumerate_scenarios(net.letters());
  const std::size_t n = net.size(), g = grid.size();
  std::size_t per = 1;
  for (std::size_t i = 0; i < n; ++i) per *= g;
  long count = 0;
  for (std::size_t a = 0; a < per; ++a) {
    for (std::size_t b = 0; b < per; ++b) {
      ExecutionStrategy s;
      std::size_t codes[2] = {a, b};
      for (std::size_t k = 0; k < 2; ++k) {
        Schedule sch;
        std::size_t c = codes[k];
        for (std::size_t i = 0; i < n; ++i, c /= g) sch.emplace(net.id(i), grid[c % g]);
        s.entries.push_back({Drama{scenarios[k], {}}, sch});
      }
      if (is_viable(net, s).viable && is_dynamic_star(net, s).dynamic) ++count;
    }
  }
  return count;
}

}  // namespace

TEST_SUITE("strategy_space") {

TEST_CASE("grid enumeration matches brute force") {
  const Network net = tiny();
  const std::vector<Rational> grid{Rational(0), Rational(1), Rational(2)};
  StrategyDag dag;
  const auto space = enumerate_grid_strategies(net, grid, dag);
  CHECK(space.count == brute_count(net, grid));
  CHECK(space.count > 0);
}

TEST_CASE("samples are viable and dynamic") {
  const Network net = tiny();
  const std::vector<Rational> grid{Rational(0), Rational(1), Rational(2)};
  StrategyDag dag;
  const auto space = enumerate_grid_strategies(net, grid, dag);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto s = sample_grid_strategy(dag, space.root, net, grid, rng);
    CHECK(is_viable(net, s).viable);
    CHECK(is_dynamic_star(net, s).dynamic);
    CHECK(is_dynamic_cstn(net, s).dynamic);
  }
}

TEST_CASE("every leaf satisfies the constraints") {
  const Network net = tiny();
  const std::vector<Rational> grid{Rational(0), Rational(1), Rational(2)};
  StrategyDag dag;
  const auto space = enumerate_grid_strategies(net, grid, dag);
  CHECK(every_leaf(dag, space.root, net, grid, [](const Scenario& s, const Schedule& sch) {
    return !s.value(Letter('p')) || sch.at("X") <= sch.at("P");
  }));
  CHECK_FALSE(every_leaf(dag, space.root, net, grid, [](const Scenario&, const Schedule& sch) {
    return sch.at("X") > Rational(0);
  }));
}

TEST_CASE("infeasible networks have an empty space") {
  NetworkBuilder b;
  b.timepoint("A");
  b.timepoint("B");
  b.interval("A", "B", Rational(5), Rational(6));
  StrategyDag dag;
  const auto space = enumerate_grid_strategies(b.build(), {Rational(0), Rational(1)}, dag);
  CHECK(space.root == StrategyDag::kFail);
  CHECK(space.count == 0);
}

}
