#include "doctest.h"
#include "fixtures.hpp"
#include "tripost/generator.hpp"
#include "tripost/io.hpp"

using namespace tripost;

namespace {

const char* kSys1Text = "alphabet: ab\ndominoes:\nab | a | ab\nabb | babb | ab\nb | b | bb\nbba | baaa | ba\n";

std::string error_of(std::string_view text) {
  try {
    parse_instance(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse_instance examples") {
  CHECK(parse_instance(kSys1Text) == fixtures::sys1());
  CHECK(parse_instance("alphabet: a\ndominoes:\na | a | a\n") == fixtures::single("a", "a", "a", "a"));
  CHECK(error_of("alphabet: a\ndominoes:\nb | a | a\n") == "letter not in alphabet, line 3");
}

TEST_CASE("parse_instance tolerates layout noise") {
  const char* noisy =
      "# a comment\n"
      "\n"
      "  alphabet:  a b   # trailing comment\n"
      "dominoes:\n"
      "\n"
      "   ab|a   |  ab\n"
      "abb | babb | ab\r\n"
      "b | b | bb # third\n"
      "bba | baaa | ba";
  CHECK(parse_instance(noisy) == fixtures::sys1());
}

TEST_CASE("parse_instance errors carry line numbers") {
  CHECK(error_of("dominoes:\n") == "expected 'alphabet: <letters>', line 1");
  CHECK(error_of("alphabet: ab\nfoo\n") == "expected 'dominoes:', line 2");
  CHECK(error_of("alphabet: ab\ndominoes:\na | b\n") == "expected 'top | middle | bottom', line 3");
  CHECK(error_of("alphabet: ab\ndominoes:\na | b | a | b\n") == "expected 'top | middle | bottom', line 3");
  CHECK(error_of("alphabet: ab\ndominoes:\na |  | a\n") == "empty word, line 3");
  CHECK(error_of("alphabet: ab\ndominoes:\na b | a | a\n") == "whitespace inside word, line 3");
  CHECK(error_of("alphabet: aba\ndominoes:\na | a | a\n") == "duplicate alphabet letter 'a', line 1");
  CHECK(error_of("alphabet:\ndominoes:\n") == "alphabet must be nonempty, line 1");
  CHECK(error_of("alphabet: ab\ndominoes:\n").starts_with("n >= 1 required"));
  CHECK(error_of("").starts_with("missing 'alphabet:'"));
  CHECK(error_of("alphabet: ab\n").starts_with("missing 'dominoes:'"));

  try {
    parse_instance("alphabet: ab\nnope\n");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Syntax);
  }
  try {
    parse_instance("alphabet: a\ndominoes:\nb | a | a\n");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSystem);
  }
}

TEST_CASE("serialize_instance") {
  CHECK(serialize_instance(fixtures::sys1()) == kSys1Text);
  CHECK(serialize_instance(fixtures::single("a", "a", "a", "a")) == "alphabet: a\ndominoes:\na | a | a\n");
}

TEST_CASE("text and record forms round-trip") {
  for (Seed seed = 0; seed < 1000; ++seed) {
    const TriSystem s = random_instance(seed, {4, 4, 3});
    const std::string text = serialize_instance(s);
    CHECK(parse_instance(text) == s);
    CHECK(serialize_instance(parse_instance(text)) == text);
    CHECK(instance_from_record(instance_to_record(s)) == s);
    CHECK(parse_instance_any(instance_to_record(s).dump()) == s);
  }
  CHECK(instance_to_record(fixtures::sys1()).dump() ==
        R"({"alphabet":"ab","dominoes":[["ab","a","ab"],["abb","babb","ab"],["b","b","bb"],["bba","baaa","ba"]]})");
  CHECK_THROWS_AS(parse_instance_any(R"({"alphabet":"a","dominoes":[["a","a"]]})"), Error);
  CHECK_THROWS_AS(parse_instance_any(R"({"alphabet":"a")"), Error);
}

TEST_CASE("outcome and report records use stable field names") {
  const auto found = outcome_to_record(search_triple(fixtures::sys1(), SearchBounds{}));
  CHECK(found.at("outcome") == "found");
  CHECK(found.at("match") == nlohmann::json::array({1, 2, 3}));
  CHECK(found.at("stats").contains("states"));

  const auto closed = outcome_to_record(search_pair(fixtures::pairs({{"ab", "ba"}}), SearchBounds{}));
  CHECK(closed.at("outcome") == "certified-no");
  CHECK(closed.at("certificate").at("kind") == "ClosedStateGraph");
  CHECK(closed.at("certificate").at("statesExplored") == 1);

  const auto unknown = outcome_to_record(search_pair(fixtures::pairs({{"a", "aa"}}, "a"), {64, 4, 100}));
  CHECK(unknown.at("outcome") == "unknown");
  CHECK(unknown.at("reason") == "overhang");

  const auto report = report_to_record(analyze(fixtures::sys1(), SearchBounds{}));
  CHECK(report.at("witnessed") == true);
  const auto& tm = report.at("games").at("tm");
  CHECK(tm.at("status") == "yes");
  CHECK(tm.at("origin") == "closure");
  CHECK(tm.at("from") == "tmb");
  CHECK(tm.at("raw").at("match") == nlohmann::json::array({3}));

  const auto cert = certificate_to_record(LengthImbalance{{-1}});
  CHECK(cert.dump() == R"({"kind":"LengthImbalance","differences":[-1]})");
}
