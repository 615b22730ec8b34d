#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "support/generators.hpp"
#include "teamlogic/errors.hpp"
#include "teamlogic/team.hpp"

using namespace teamlogic;

namespace {
const SymbolList kP = gen::syms({"p"});
const SymbolList kPQ = gen::syms({"p", "q"});
}  // namespace

TEST_CASE("teams deduplicate and order their members") {
  Team t(kPQ, {3, 1, 3, 0});
  CHECK(t.size() == 3);
  CHECK(t.codes() == std::vector<std::uint64_t>{0, 1, 3});
  CHECK(t.contains(1));
  CHECK_FALSE(t.contains(2));
  t.insert(2);
  t.insert(2);
  CHECK(t.codes() == std::vector<std::uint64_t>{0, 1, 2, 3});

  // First domain symbol is the most significant row bit.
  Team u(kPQ, {2});
  CHECK(u.value(2, PropSymbol("p")));
  CHECK_FALSE(u.value(2, PropSymbol("q")));
}

TEST_CASE("team construction validates domain and codes") {
  CHECK_THROWS_AS(Team(gen::syms({"p", "p"})), std::invalid_argument);
  CHECK_THROWS_AS(Team(kP, {2}), std::invalid_argument);
  SymbolList wide;
  for (int i = 0; i < 64; ++i) wide.emplace_back("v" + std::to_string(i));
  CHECK_THROWS_AS(Team(wide), LimitError);
}

TEST_CASE("team equality is extensional") {
  CHECK(Team(kPQ, {1, 2}) == Team(kPQ, {2, 1, 2}));
  CHECK_FALSE(Team(kPQ, {1}) == Team(kPQ, {2}));
  CHECK_FALSE(Team(kP, {1}) == Team(gen::syms({"q"}), {1}));
}

TEST_CASE("full teams enumerate every assignment") {
  CHECK(full_team(kP).codes() == std::vector<std::uint64_t>{0, 1});
  CHECK(full_team({}).size() == 1);
  CHECK(full_team(kPQ).size() == 4);
  SymbolList wide;
  for (int i = 0; i < 21; ++i) wide.emplace_back("v" + std::to_string(i));
  CHECK_THROWS_AS(full_team(wide), LimitError);
}

TEST_CASE("all teams stream in subset mask order") {
  auto ts = all_teams(kP);
  REQUIRE(ts.size() == 4);
  CHECK(ts[0].empty());
  CHECK(ts[1].codes() == std::vector<std::uint64_t>{0});
  CHECK(ts[2].codes() == std::vector<std::uint64_t>{1});
  CHECK(ts[3].codes() == std::vector<std::uint64_t>{0, 1});

  CHECK(all_teams({}).size() == 2);
  CHECK(all_teams(kPQ).size() == 16);
  CHECK(all_teams(gen::syms({"a", "b", "c", "d"})).size() == 65536);
  CHECK_THROWS_AS(all_teams(gen::syms({"a", "b", "c", "d", "e"})), LimitError);
}

TEST_CASE("cover enumeration yields every lax split") {
  Team empty(kP);
  CoverEnumerator at_zero(empty);
  REQUIRE(at_zero.valid());
  CHECK(at_zero.current().first.empty());
  CHECK(at_zero.current().second.empty());
  at_zero.next();
  CHECK_FALSE(at_zero.valid());

  Team one(kP, {1});
  std::vector<std::pair<std::size_t, std::size_t>> sizes;
  for (CoverEnumerator c(one); c.valid(); c.next())
    sizes.emplace_back(c.current().first.size(), c.current().second.size());
  CHECK(sizes == std::vector<std::pair<std::size_t, std::size_t>>{
                     {0, 1}, {1, 0}, {1, 1}});

  for (std::size_t n : {2u, 3u, 4u, 5u, 6u}) {
    SymbolList domain = gen::syms({"a", "b", "c"});
    std::vector<std::uint64_t> codes;
    for (std::size_t i = 0; i < n; ++i) codes.push_back(i);
    Team x(domain, codes);
    std::size_t count = 0;
    for (CoverEnumerator c(x); c.valid(); c.next()) {
      auto [y, z] = c.current();
      std::set<std::uint64_t> uni(y.codes().begin(), y.codes().end());
      uni.insert(z.codes().begin(), z.codes().end());
      REQUIRE(std::vector<std::uint64_t>(uni.begin(), uni.end()) == x.codes());
      ++count;
    }
    std::size_t expect = 1;
    for (std::size_t i = 0; i < n; ++i) expect *= 3;
    CHECK(count == expect);
  }

  Team big(gen::syms({"a", "b", "c"}), {0, 1, 2, 3, 4});
  CHECK_THROWS_AS(CoverEnumerator(big, 4), LimitError);
}

TEST_CASE("subteam enumeration covers the powerset") {
  Team x(kPQ, {0, 3});
  std::vector<std::size_t> sizes;
  for (SubteamEnumerator s(x); s.valid(); s.next())
    sizes.push_back(s.current().size());
  CHECK(sizes == std::vector<std::size_t>{0, 1, 1, 2});
  CHECK_THROWS_AS(SubteamEnumerator(x, 1), LimitError);
}

TEST_CASE("projection restricts and collapses") {
  Team x(kPQ, {2, 3});  // rows 10, 11
  Team p = project(x, kP);
  CHECK(p.codes() == std::vector<std::uint64_t>{1});

  CHECK(project(Team(kPQ), kP).empty());

  Team y(kPQ, {1, 2});  // rows 01, 10
  CHECK(project(y, gen::syms({"q"})).codes() ==
        std::vector<std::uint64_t>{0, 1});

  // Projection onto the full domain is the identity; full teams stay full.
  CHECK(project(x, kPQ) == x);
  CHECK(project(full_team(kPQ), kPQ) == full_team(kPQ));

  // Tuple order matters and repeats are allowed.
  Team swapped = project(y, gen::syms({"q", "p"}));
  CHECK(swapped.codes() == std::vector<std::uint64_t>{1, 2});
  CHECK_THROWS_AS(project(y, gen::syms({"z"})), std::invalid_argument);
}

TEST_CASE("team files round trip") {
  Team x(kPQ, {1, 2});
  std::string text = team_to_string(x);
  CHECK(text == "p q\n01\n10\n");
  CHECK(team_from_string(text) == x);

  Team parsed = team_from_string(
      "# leading comment\n"
      "p q   # domain\n"
      "\n"
      "10\n"
      "10\n"
      "01\n");
  CHECK(parsed == x);

  CHECK_THROWS_AS(team_to_string(Team()), std::invalid_argument);
}

TEST_CASE("team file errors name the offending line") {
  try {
    team_from_string("p q\n10\n1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  try {
    team_from_string("p q\n12\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(team_from_string(""), ParseError);
  CHECK_THROWS_AS(team_from_string("# only comments\n"), ParseError);
  CHECK_THROWS_AS(team_from_string("p p\n00\n"), ParseError);
  CHECK_THROWS_AS(team_from_string("p q\n10 01\n"), ParseError);
  CHECK_THROWS_AS(team_from_string("p 9x\n"), ParseError);
}

TEST_CASE("read_team_file reports missing files") {
  CHECK_THROWS_AS(read_team_file("/nonexistent/team.txt"),
                  std::runtime_error);
}
