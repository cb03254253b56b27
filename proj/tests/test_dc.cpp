#include "doctest.h"

#include "cstnu/dc_check.hpp"
#include "cstnu/error.hpp"
#include "support/generators.hpp"

using namespace cstnu;

TEST_SUITE("dc") {

TEST_CASE("duration samples") {
  const ContingentLink l{0, Rational(1), Rational(3), 1};
  CHECK(sample_durations(l, 3) == std::vector<Rational>{Rational(1), Rational(2), Rational(3)});
  CHECK(sample_durations(l, 1) == std::vector<Rational>{Rational(2)});
  CHECK(sample_durations(l, 2) == std::vector<Rational>{Rational(1), Rational(3)});
}

TEST_CASE("drama sampling and caps") {
  NetworkBuilder b;
  b.letters(LetterSet::parse("pq"));
  b.timepoint("P");
  b.timepoint("Q");
  b.timepoint("C");
  b.observe(Letter('p'), "P").observe(Letter('q'), "Q");
  b.contingent_link("P", Rational(1), Rational(2), "C");
  const Network net = b.build();
  CHECK(sample_dramas(net).size() == 12);
  DcOptions tight;
  tight.max_letters = 1;
  CHECK_THROWS_AS(sample_dramas(net, tight), CapExceeded);
  tight = {};
  tight.max_dramas = 5;
  CHECK_THROWS_AS(sample_dramas(net, tight), CapExceeded);
}

TEST_CASE("waiting for a contingent end is controllable") {
  Stnu u;
  u.stn.add_timepoint("A");
  u.stn.add_timepoint("C");
  u.stn.add_timepoint("X");
  u.links.push_back({0, Rational(1), Rational(3), 1});
  u.stn.add_interval(0, 1, Rational(1), Rational(3));
  u.stn.add_interval(1, 2, Rational(0), Rational(1));
  u.stn.add_interval(0, 2, Rational(0), Rational(10));
  const auto r = check_dc_stnu(u);
  CHECK(r.verdict == Verdict::Controllable);
  CHECK(is_viable(u, r.strategy).viable);
  CHECK(is_dynamic_star(u, r.strategy).dynamic);
}

TEST_CASE("anticipating a contingent end is never certified") {
  // X must precede C by exactly one unit: requires knowing C in advance.
  // Every projection is consistent and search failure is not a proof.
  Stnu u;
  u.stn.add_timepoint("A");
  u.stn.add_timepoint("C");
  u.stn.add_timepoint("X");
  u.links.push_back({0, Rational(1), Rational(3), 1});
  u.stn.add_interval(0, 1, Rational(1), Rational(3));
  u.stn.add_interval(2, 1, Rational(1), Rational(1));
  CHECK(check_dc_stnu(u).verdict == Verdict::Unknown);
}

TEST_CASE("acting before an observation with conflicting demands") {
  NetworkBuilder b;
  b.letter(Letter('p'));
  b.timepoint("Z");
  b.timepoint("P");
  b.timepoint("X");
  b.observe(Letter('p'), "P");
  b.interval("Z", "X", Rational(0), Rational(20));
  b.interval("Z", "P", Rational(0), Rational(20));
  b.constraint("P", "X", Rational(-10));
  b.constraint("Z", "X", Rational(1), Label::parse("p"));
  b.constraint("X", "Z", Rational(-5), Label::parse("!p"));
  const auto r = check_dc(b.build());
  CHECK(r.verdict == Verdict::NotControllable);
  CHECK(r.refutation.has_value());
}

TEST_CASE("negative control reports an inconsistent projection") {
  const auto r = check_dc_stnu(testing::negative_control_stnu());
  CHECK(r.verdict == Verdict::NotControllable);
  REQUIRE(r.inconsistent_drama);
  CHECK(r.inconsistent_drama->situation == Situation{Rational(3)});
}

TEST_CASE("CSTN that must react to an observation") {
  NetworkBuilder b;
  b.letter(Letter('p'));
  b.timepoint("Z");
  b.timepoint("P");
  b.timepoint("X");
  b.observe(Letter('p'), "P");
  b.interval("Z", "P", Rational(2), Rational(2));
  b.interval("Z", "X", Rational(0), Rational(10));
  b.constraint("Z", "X", Rational(4), Label::parse("p"));
  b.constraint("X", "Z", Rational(-6), Label::parse("!p"));
  const Network net = b.build();
  const auto r = check_dc_cstn(net);
  REQUIRE(r.verdict == Verdict::Controllable);
  CHECK(is_dynamic_cstn(net, r.strategy).dynamic);

  // If P happens too late the agent cannot react in time.
  NetworkBuilder late = b;
  late.interval("Z", "P", Rational(5), Rational(5));
  CHECK(check_dc_cstn(late.build()).verdict == Verdict::NotControllable);
}

TEST_CASE("check_dc rejects invalid networks") {
  NetworkBuilder b;
  b.letter(Letter('p'));
  b.timepoint("P");
  b.timepoint("X", Label::parse("p"));
  b.observe(Letter('p'), "P");
  CHECK_THROWS_AS(check_dc(b.build()), PreconditionError);
}

TEST_CASE("direct and embedded checks agree on small random instances") {
  testing::Rng rng(21);
  for (int i = 0; i < 8; ++i) {
    const Network cstn = testing::random_cstn(rng, testing::uniform(rng, 2, 4), testing::uniform(rng, 0, 2), 3);
    CHECK(verify_lemma6(cstn));
    const Stnu stnu = testing::random_stnu(rng, testing::uniform(rng, 2, 4), testing::uniform(rng, 0, 2), 2);
    CHECK(verify_lemma7(stnu));
  }
}

TEST_CASE("seeded search is reproducible") {
  testing::Rng rng(2);
  const Network cstn = testing::random_cstn(rng, 5, 2, 4);
  DcOptions o;
  o.seed = 17;
  const auto a = check_dc(cstn, o), b = check_dc(cstn, o);
  CHECK(a.verdict == b.verdict);
  CHECK(a.nodes == b.nodes);
}

}
