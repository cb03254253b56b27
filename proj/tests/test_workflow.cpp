#include "doctest.h"

#include "cstnu/error.hpp"
#include "cstnu/json_io.hpp"
#include "cstnu/workflow.hpp"

using namespace cstnu;

TEST_SUITE("workflow") {

TEST_CASE("empty file") {
  const auto spec = parse_workflow("");
  CHECK(spec.elements.empty());
  CHECK(compile_workflow(spec).network.size() == 0);
}

TEST_CASE("parse statements") {
  const auto spec = parse_workflow(
      "# comment\n"
      "task T1 [2,4]\n"
      "task T2 [1,3]\n"
      "flow T1 -> T2 [0,inf]\n"
      "constrain T1.S -> T2.E [5,9]\n");
  REQUIRE(spec.elements.size() == 2);
  CHECK(spec.elements[0].range.lower == Rational(2));
  CHECK(spec.flows[0].delay.upper == std::nullopt);
  CHECK(spec.constraints[0].from.start);
  CHECK_FALSE(spec.constraints[0].to.start);
}

TEST_CASE("errors carry line numbers") {
  auto message = [](const char* text) {
    try {
      parse_workflow(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("task T1 [2,4]\ntask T1 [1,2]\n").rfind("line 2", 0) == 0);
  CHECK(message("task T1 [4,2]\n").rfind("line 1", 0) == 0);
  CHECK(message("frobnicate\n").rfind("line 1", 0) == 0);
  CHECK(message("task A [1,2]\nflow A -> B [0,1]\n").find("B") != std::string::npos);
  CHECK_FALSE(message("task A [1,2]\ntask B [1,2]\nflow A -> B [0,1]\nflow B -> A [0,1]\n").empty());
}

TEST_CASE("single task compiles to one unlabeled link") {
  const auto c = compile_workflow(parse_workflow("task T [2,4]\n"));
  REQUIRE(c.network.links().size() == 1);
  CHECK(c.network.id(c.network.links()[0].activation) == "T_S");
  CHECK(c.network.id(c.network.links()[0].contingent) == "T_E");
  CHECK(c.network.label(0).empty());
  CHECK(validate_cstnu(c.network).ok());
}

TEST_CASE("two-way split labels the branches") {
  const auto c = compile_workflow(parse_workflow(
      "task T1 [1,2]\nsplit C1 [1,1]\ntask T3 [1,2]\ntask T4 [1,2]\njoin C2 [0,0]\ntask T5 [1,2]\n"
      "flow T1 -> C1 [0,1]\nflow C1 -> T3 [0,1]\nflow C1 -> T4 [0,1]\n"
      "flow T3 -> C2 [0,1]\nflow T4 -> C2 [0,1]\nflow C2 -> T5 [0,1]\n"
      "branch C1 T3 +\n"));
  const Network& net = c.network;
  CHECK(validate_cstnu(net).ok());
  CHECK(net.label(net.index_of("T3_S")) == Label::parse("a"));
  CHECK(net.label(net.index_of("T4_E")) == Label::parse("!a"));
  CHECK(net.label(net.index_of("T5_S")).empty());
  CHECK(net.observer(Letter('a')) == net.index_of("C1_E"));
  CHECK(c.map.elements.at("C1").letters == std::vector<Letter>{Letter('a')});
  bool wd2 = false;
  for (const auto& k : net.constraints()) {
    if (net.id(k.from) == "T3_S" && net.id(k.to) == "C1_E" && k.label == Label::parse("a") && k.delta < 0) wd2 = true;
  }
  CHECK(wd2);
}

TEST_CASE("three-way split uses two letters") {
  const auto c = compile_workflow(parse_workflow(
      "split C [0,1]\ntask A [1,2]\ntask B [1,2]\ntask D [1,2]\n"
      "flow C -> A [0,1]\nflow C -> B [0,1]\nflow C -> D [0,1]\n"));
  CHECK(c.map.elements.at("C").letters.size() == 2);
  CHECK(validate_cstnu(c.network).ok());
  const Label a = c.network.label(c.network.index_of("A_S"));
  const Label b = c.network.label(c.network.index_of("B_S"));
  const Label d = c.network.label(c.network.index_of("D_S"));
  CHECK_FALSE(con(a, b));
  CHECK_FALSE(con(a, d));
  CHECK_FALSE(con(b, d));
}

TEST_CASE("compilation is deterministic") {
  const char* text = "task T1 [2,4]\nsplit C [0,1]\ntask A [1,2]\ntask B [1,2]\n"
                     "flow T1 -> C [0,1]\nflow C -> A [0,1]\nflow C -> B [0,1]\n";
  const auto a = compile_workflow(parse_workflow(text));
  const auto b = compile_workflow(parse_workflow(text));
  CHECK(network_to_json(a.network).dump() == network_to_json(b.network).dump());
}

}
