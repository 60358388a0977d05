#include <doctest.h>

#include "helpers.hpp"
#include "rcv/errors.hpp"
#include "rcv/oracle.hpp"
#include "rcv/search.hpp"

using namespace rcv;
using rcv::testing::make_profile;
using rcv::testing::order_of;

TEST_CASE("signature enumeration sizes") {
  CHECK(oracle::all_signatures(3, 1).size() == 3);
  CHECK(oracle::all_signatures(3, 2).size() == 3 + 6);
  CHECK(oracle::all_signatures(3, 3).size() == 3 + 6 + 6);
  CHECK(oracle::all_signatures(3, 9).size() == 15);  // capped at n
}

TEST_CASE("toy profile, one ranking per unbound ballot") {
  // AA, AB, BA -> A; BB -> B at 3 to 2.
  const auto p = make_profile({"A", "B"}, {{2, {"A"}}, {1, {"B"}}}, 2, 1);
  const auto w = oracle::exhaustive_winner_set(p);
  CHECK(w.completions == 4);
  CHECK(w.discarded_ties == 0);
  CHECK(w.winners.size() == 2);
  CHECK(w.orders == std::set{order_of(p, {"A", "B"}), order_of(p, {"B", "A"})});
  CHECK(w.min_support[0] == 1);
  CHECK(w.min_support[1] == 2);
}

TEST_CASE("tied completions are discarded") {
  // 1A,1B plus one ballot: never a tie. Plus two: AB and BA tie at 2-2.
  const auto p = make_profile({"A", "B"}, {{1, {"A"}}, {1, {"B"}}}, 2, 1);
  const auto w = oracle::exhaustive_winner_set(p);
  CHECK(w.completions == 4);
  CHECK(w.discarded_ties == 2);
}

TEST_CASE("no unbound ballots: one completion") {
  const auto p = make_profile({"A", "B", "C"}, {{3, {"A"}}, {2, {"B"}}, {1, {"C", "A"}}});
  const auto w = oracle::exhaustive_winner_set(p);
  CHECK(w.completions == 1);
  CHECK(w.orders == std::set{order_of(p, {"C", "B", "A"})});
}

TEST_CASE("completion count and the cap") {
  auto p = oracle::random_profile({4, 5, 3, 2, 7});
  CHECK(oracle::completion_count(p) == 16 * 16 * 16);
  p.unbound_count = 6;
  CHECK(oracle::completion_count(p, 1000) == std::nullopt);
  CHECK_THROWS_AS(oracle::exhaustive_winner_set(p, 1000), SpaceTooLarge);
}

TEST_CASE("random profiles are deterministic and valid") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const oracle::RandomProfileParams params{1 + seed % 6, seed % 20, seed % 4, static_cast<std::uint32_t>(1 + seed % 4), seed};
    const auto a = oracle::random_profile(params);
    CHECK(a == oracle::random_profile(params));
    CHECK(validate_profile(a).empty());
    CHECK(a.bound_ballots.size() == params.ballots);
    CHECK(a.unbound_count == params.unbound);
  }
  CHECK_FALSE(oracle::random_profile({4, 30, 0, 4, 1}) == oracle::random_profile({4, 30, 0, 4, 2}));
}

TEST_CASE("search winners match the exhaustive oracle on small profiles") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto p = oracle::random_profile({1 + seed % 3, seed % 9, seed % 3, static_cast<std::uint32_t>(1 + seed % 2), seed});
    if (p.bound_ballots.empty() && p.unbound_count == 0) continue;
    const auto w = oracle::exhaustive_winner_set(p);
    const auto r = enumerate_outcomes(p);
    CHECK(r.possible_winners == w.winners);
  }
}
