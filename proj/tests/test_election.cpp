#include <doctest.h>

#include "helpers.hpp"
#include "rcv/errors.hpp"
#include "rcv/oracle.hpp"

using namespace rcv;
using rcv::testing::make_profile;
using rcv::testing::order_of;

TEST_CASE("validate_profile reports duplicates, empty profiles and accepts well-formed input") {
  auto p = make_profile({"A", "B", "C"}, {{1, {"A", "B"}}});
  p.bound_ballots[0].rankings = {candidate(0), candidate(0), candidate(1)};
  auto v = validate_profile(p);
  REQUIRE(v.size() == 1);
  CHECK(v[0].reason == "duplicate candidate at ballot 0");
  CHECK(v[0].ballot == 0);

  ElectionProfile empty;
  v = validate_profile(empty);
  REQUIRE(!v.empty());
  CHECK(v[0].reason == "no candidates");

  CHECK(validate_profile(make_profile({"A", "B", "C"}, {{3, {"A"}}, {2, {"B", "C"}}})).empty());
}

TEST_CASE("validate_profile rejects structural problems") {
  auto p = make_profile({"A", "B"}, {{1, {"A"}}}, 0, 1);
  p.bound_ballots.push_back(BallotSignature{});
  p.bound_ballots.push_back(BallotSignature{{candidate(0), candidate(1)}});
  p.bound_ballots.push_back(BallotSignature{{candidate(5)}});
  p.candidates.push_back("A");
  const auto v = validate_profile(p);
  CHECK(v.size() == 4);
  CHECK_THROWS_AS(require_valid(p), InvalidProfile);
}

TEST_CASE("count: shared minimum after a transfer is an unresolvable tie") {
  // Round 1: A=3 B=2 C=1, C out; its ballot moves to B, leaving A=3 B=3.
  const auto p = make_profile({"A", "B", "C"}, {{3, {"A"}}, {2, {"B"}}, {1, {"C", "B"}}});
  CHECK_THROWS_AS(count_ranked_votes(p), UnresolvableTie);
  const auto r = count_ranked_votes(p, TiePolicy::lowest_id);
  CHECK(r.order == order_of(p, {"C", "A", "B"}));
}

TEST_CASE("count: exhausted ballot drops out") {
  const auto p = make_profile({"A", "B", "C"}, {{3, {"A"}}, {2, {"B"}}, {1, {"C"}}});
  const auto r = count_ranked_votes(p);
  CHECK(r.order == order_of(p, {"C", "B", "A"}));
  CHECK(p.name(r.winner()) == "A");
  REQUIRE(r.rounds.size() == 3);
  CHECK(r.rounds[1].counts[0] == 3);
  CHECK(r.rounds[1].counts[1] == 2);
  CHECK(r.rounds[1].exhausted == 1);
}

TEST_CASE("count: single candidate wins immediately") {
  const auto p = make_profile({"A"}, {{4, {"A"}}});
  const auto r = count_ranked_votes(p);
  CHECK(r.order == order_of(p, {"A"}));
  CHECK(r.rounds.size() == 1);
}

TEST_CASE("count requires every ballot to be bound") {
  const auto p = make_profile({"A", "B"}, {{1, {"A"}}}, 3);
  CHECK_THROWS_AS(count_ranked_votes(p), InvalidProfile);
}

TEST_CASE("count round invariants hold on random profiles") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto p = oracle::random_profile({1 + seed % 6, 5 + seed % 40, 0, 1 + static_cast<std::uint32_t>(seed % 4), seed});
    const auto r = count_ranked_votes(p, TiePolicy::lowest_id);
    REQUIRE(r.rounds.size() == p.candidate_count());
    CandidateSet seen;
    for (const auto& round : r.rounds) {
      std::uint64_t total = round.exhausted;
      for (CandidateId c : round.active.members()) {
        total += round.counts[index(c)];
        CHECK(round.counts[index(round.eliminated)] <= round.counts[index(c)]);
      }
      CHECK(total == p.bound_ballots.size());
      CHECK(!seen.contains(round.eliminated));
      seen.insert(round.eliminated);
    }
    CHECK(r.rounds.back().active.size() == 1);
    CHECK(r.rounds.back().active.contains(r.winner()));
  }
}
