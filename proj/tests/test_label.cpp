#include "doctest.h"

#include "cstnu/error.hpp"
#include "cstnu/label.hpp"
#include "support/oracles.hpp"

using namespace cstnu;

TEST_SUITE("label") {

TEST_CASE("parse and print round trip") {
  for (const char* text : {"[]", "A", "!A", "AB", "A!B", "!A!Bc"}) {
    CHECK(Label::parse(text).to_string() == text);
  }
  CHECK(Label::parse("") == Label{});
  CHECK(Label::parse("BA") == Label::parse("AB"));
}

TEST_CASE("malformed labels are rejected") {
  CHECK_THROWS_AS(Label::parse("A!A"), ParseError);
  CHECK_THROWS_AS(Label::parse("AA"), ParseError);
  CHECK_THROWS_AS(Label::parse("A1"), ParseError);
  CHECK_THROWS_AS(Label::parse("!"), ParseError);
}

TEST_CASE("conjunction") {
  CHECK(conjoin(Label::parse("A"), Label::parse("B")) == Label::parse("AB"));
  CHECK_FALSE(conjoin(Label::parse("A"), Label::parse("!A")).has_value());
  CHECK(conjoin(Label{}, Label::parse("!B")) == Label::parse("!B"));
}

TEST_CASE("con and sub follow the literal sets") {
  CHECK(con(Label::parse("AB"), Label::parse("B!C")));
  CHECK_FALSE(con(Label::parse("AB"), Label::parse("!B")));
  CHECK(sub(Label::parse("AB"), Label::parse("A")));
  CHECK(sub(Label::parse("A"), Label{}));
  CHECK_FALSE(sub(Label{}, Label::parse("A")));
}

TEST_CASE("set operations") {
  const Label l = Label::parse("A!Bc");
  CHECK(l.without(Letter('B')) == Label::parse("Ac"));
  CHECK(l.minus(Label::parse("!B")) == Label::parse("Ac"));
  CHECK(l.common(Label::parse("Ac!d")) == Label::parse("Ac"));
  CHECK(l.polarity(Letter('B')) == false);
  CHECK_FALSE(l.polarity(Letter('D')).has_value());
  CHECK(l.letters() == LetterSet::parse("ABc"));
}

TEST_CASE("universe sizes") {
  CHECK(enumerate_universe({}).size() == 1);
  CHECK(enumerate_universe(LetterSet::parse("AB")).size() == 9);
  CHECK(enumerate_universe(LetterSet::parse("ABC")).size() == 27);
}

TEST_CASE("con and sub agree with truth tables") {
  for (const char* letters : {"A", "AB", "ABC"}) {
    const LetterSet set = LetterSet::parse(letters);
    const auto universe = enumerate_universe(set);
    for (const Label& a : universe) {
      for (const Label& b : universe) {
        CHECK(con(a, b) == testing::oracle_con(a, b, set));
        CHECK(sub(a, b) == testing::oracle_sub(a, b, set));
      }
    }
  }
}

TEST_CASE("scenarios") {
  const LetterSet set = LetterSet::parse("AB");
  const auto all = enumerate_scenarios(set);
  REQUIRE(all.size() == 4);
  CHECK(all[1].value(Letter('A')));
  CHECK_FALSE(all[1].value(Letter('B')));
  CHECK(all[3].as_label() == Label::parse("AB"));
  CHECK_THROWS_AS(all[0].value(Letter('C')), PreconditionError);
  CHECK_THROWS_AS(evaluate(Label::parse("C"), all[0]), PreconditionError);
  CHECK(evaluate(Label::parse("!A!B"), all[0]));
}

}
