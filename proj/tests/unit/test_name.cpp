#include "ccnlab/name.hpp"

#include <string>
#include <vector>

#include "ccnlab/rng.hpp"
#include "doctest.h"

using namespace ccnlab;

namespace {

Name random_name(Rng& rng, std::size_t max_components = 8) {
  static const char* words[] = {"edu", "uci", "ics", "bob", "alice", "bbc", "news",
                                "today", "a", "b", "c", "x1", "seg0"};
  std::size_t count = rng.next_below(max_components + 1);
  std::vector<std::string> comps;
  for (std::size_t i = 0; i < count; ++i) {
    comps.push_back(words[rng.next_below(std::size(words))]);
  }
  return Name(comps);
}

}  // namespace

TEST_CASE("parse_lci splits components") {
  Name n = parse_lci("lci:/edu/uci/ics/bob");
  REQUIRE(n.size() == 4);
  CHECK(n.at(0) == "edu");
  CHECK(n.at(1) == "uci");
  CHECK(n.at(2) == "ics");
  CHECK(n.at(3) == "bob");
  CHECK(parse_lci("/edu/uci/ics/bob") == n);
}

TEST_CASE("parse_lci root forms") {
  CHECK(parse_lci("lci:/").empty());
  CHECK(parse_lci("/").empty());
}

TEST_CASE("parse_lci rejects malformed text") {
  CHECK_THROWS_AS(parse_lci("lci:/a//b"), MalformedName);
  CHECK_THROWS_AS(parse_lci("lci:/a/"), MalformedName);  // trailing empty component
  CHECK_THROWS_AS(parse_lci("bbc/news"), MalformedName);
  CHECK_THROWS_AS(parse_lci(""), MalformedName);
  std::string too_deep = "lci:";
  for (int i = 0; i < 65; ++i) too_deep += "/c" + std::to_string(i);
  CHECK_THROWS_AS(parse_lci(too_deep), MalformedName);
}

TEST_CASE("format_lci examples") {
  CHECK(format_lci(Name({"bbc", "news", "today"})) == "lci:/bbc/news/today");
  CHECK(format_lci(Name()) == "lci:/");
}

TEST_CASE("parse/format round trip on random names") {
  Rng rng(42);
  for (int i = 0; i < 500; ++i) {
    Name n = random_name(rng);
    CHECK(parse_lci(format_lci(n)) == n);
  }
}

TEST_CASE("name component validation") {
  CHECK_THROWS_AS(Name({""}), MalformedName);
  CHECK_THROWS_AS(Name({"a/b"}), MalformedName);
  CHECK_THROWS_AS(Name(std::vector<std::string>(65, "x")), MalformedName);
  CHECK_NOTHROW(Name(std::vector<std::string>(64, "x")));
}

TEST_CASE("prefix relation is reflexive and transitive, root below everything") {
  Rng rng(7);
  Name root;
  for (int i = 0; i < 200; ++i) {
    Name a = random_name(rng);
    CHECK(a.is_prefix_of(a));
    CHECK(root.is_prefix_of(a));
    Name b = a;
    for (int extra = 0; extra < 2; ++extra) b = b.appended("tail" + std::to_string(extra));
    CHECK(a.is_prefix_of(b));
    Name c = b.appended("more");
    CHECK(a.is_prefix_of(c));  // transitivity via a<=b<=c
  }
}

TEST_CASE("aggregate_prefixes is the longest common prefix") {
  std::vector<Name> site = {parse_lci("lci:/edu/uci/ics/bob"), parse_lci("lci:/edu/uci/ics/alice")};
  CHECK(aggregate_prefixes(site) == parse_lci("lci:/edu/uci/ics"));

  std::vector<Name> one = {parse_lci("lci:/a/b/c")};
  CHECK(aggregate_prefixes(one) == one[0]);

  std::vector<Name> disjoint = {parse_lci("lci:/a/b"), parse_lci("lci:/c/d")};
  CHECK(aggregate_prefixes(disjoint) == Name());

  // Oracle: scan candidate prefix lengths by brute force.
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Name> names;
    std::size_t count = 1 + rng.next_below(5);
    for (std::size_t i = 0; i < count; ++i) names.push_back(random_name(rng, 5));
    Name agg = aggregate_prefixes(names);
    for (const Name& n : names) CHECK(agg.is_prefix_of(n));
    // Maximality: no one-component extension of the aggregate is still a
    // common prefix of every name.
    bool all_longer = true;
    for (const Name& n : names) all_longer = all_longer && n.size() > agg.size();
    if (all_longer) {
      Name longer = agg.appended(names[0].at(agg.size()));
      bool still_common = true;
      for (const Name& n : names) still_common = still_common && longer.is_prefix_of(n);
      CHECK(!still_common);
    }
  }
}
