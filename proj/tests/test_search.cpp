#include <algorithm>
#include <cmath>
#include <set>

#include <doctest.h>

#include "helpers.hpp"
#include "rcv/errors.hpp"
#include "rcv/oracle.hpp"
#include "rcv/search.hpp"

using namespace rcv;
using rcv::testing::make_profile;
using rcv::testing::order_of;

namespace {

const ElectionProfile kToy0 = make_profile({"A", "B"}, {{2, {"A"}}, {1, {"B"}}}, 0);
const ElectionProfile kToy2 = make_profile({"A", "B"}, {{2, {"A"}}, {1, {"B"}}}, 2);

SearchOptions no_memo() {
  SearchOptions o;
  o.memoize = false;
  return o;
}

}  // namespace

TEST_CASE("enumerate: no unbound ballots leaves only the count's order") {
  const auto r = enumerate_outcomes(kToy0);
  CHECK(r.orders == std::vector{order_of(kToy0, {"B", "A"})});
  CHECK(r.winner_names() == std::vector<std::string>{"A"});
  CHECK_FALSE(r.timed_out);
}

TEST_CASE("enumerate: two unbound ballots open both orders") {
  const auto r = enumerate_outcomes(kToy2);
  CHECK(r.orders == std::vector{order_of(kToy2, {"A", "B"}), order_of(kToy2, {"B", "A"})});
  CHECK(r.winner_names() == std::vector<std::string>{"A", "B"});
}

TEST_CASE("enumerate: enough unbound ballots make every permutation feasible") {
  auto p = make_profile({"A", "B", "C"}, {{3, {"A", "B"}}, {2, {"B"}}, {1, {"C", "A"}}});
  p.unbound_count = p.bound_ballots.size() * 3;  // m * n with m counted before adding U
  const auto r = enumerate_outcomes(p);
  CHECK(r.orders.size() == 6);
  CHECK(r.possible_winners == p.all_candidates());
}

TEST_CASE("enumerate: a single candidate") {
  const auto p = make_profile({"A"}, {{2, {"A"}}}, 5);
  const auto r = enumerate_outcomes(p);
  CHECK(r.orders == std::vector{order_of(p, {"A"})});
}

TEST_CASE("brute force and branch and bound agree on small profiles") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::size_t n = 1 + seed % 4;
    const auto p = oracle::random_profile({n, 4 + seed % 20, seed % 7, static_cast<std::uint32_t>(1 + seed % 3), seed});
    const auto bnb = enumerate_outcomes(p);
    const auto brute = brute_force_outcomes(p);
    const auto plain = enumerate_outcomes(p, no_memo());
    CHECK(bnb.orders == brute.orders);
    CHECK(plain.orders == bnb.orders);
    CHECK(bnb.nodes_expanded <= brute.nodes_expanded);
    CHECK(bnb.verify_calls <= brute.verify_calls);
    CHECK(bnb.nodes_expanded <= plain.nodes_expanded);
    CHECK(bnb.nodes_expanded <= permutation_tree_nodes(n));
  }
}

TEST_CASE("brute force does at least as much checking on the toy profile") {
  auto p = make_profile({"A", "B", "C"}, {{3, {"A"}}, {2, {"B"}}, {1, {"C"}}}, 2);
  const auto brute = brute_force_outcomes(p);
  const auto bnb = enumerate_outcomes(p);
  CHECK(brute.orders == bnb.orders);
  CHECK(brute.verify_calls >= bnb.verify_calls);
}

TEST_CASE("an infeasible prefix has no feasible completion") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const std::size_t n = 2 + seed % 3;
    const auto p = oracle::random_profile({n, 6 + seed % 15, seed % 5, static_cast<std::uint32_t>(1 + seed % 2), seed});
    const SearchContext ctx(p);
    const auto brute = brute_force_outcomes(p);
    // Every proper prefix of every permutation.
    std::vector<CandidateId> perm = p.all_candidates().members();
    do {
      for (std::size_t k = 1; k < n; ++k) {
        const std::span<const CandidateId> prefix(perm.data(), k);
        if (verify_order(ctx, prefix).feasible) continue;
        for (const auto& o : brute.orders)
          CHECK_FALSE(std::equal(prefix.begin(), prefix.end(), o.sequence.begin()));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("without unbound ballots the search reproduces the strict count") {
  int compared = 0;
  for (std::uint64_t seed = 0; compared < 60 && seed < 2000; ++seed) {
    const auto p = oracle::random_profile({2 + seed % 4, 15 + seed % 30, 0, 3, seed});
    const auto r = enumerate_outcomes(p);
    try {
      const auto count = count_ranked_votes(p);
      CHECK(r.orders == std::vector{count.order});
      ++compared;
    } catch (const UnresolvableTie&) {
      // A tied round cannot be forced without spare ballots.
      CHECK(r.orders.empty());
    }
  }
  CHECK(compared == 60);
}

TEST_CASE("parallel search matches the sequential one") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto p = oracle::random_profile({3 + seed % 3, 30, 6 + seed % 5, 2, seed});
    SearchOptions par;
    par.parallel = true;
    par.threads = 3;
    const auto a = enumerate_outcomes(p);
    const auto b = enumerate_outcomes(p, par);
    CHECK(a.orders == b.orders);
    CHECK(a.nodes_expanded == b.nodes_expanded);
    par.memoize = false;
    CHECK(enumerate_outcomes(p, par).orders == a.orders);
  }
}

TEST_CASE("permutation tree size stays below e * n!") {
  CHECK(permutation_tree_nodes(1) == 1);
  CHECK(permutation_tree_nodes(3) == 3 + 6 + 6);
  CHECK(permutation_tree_nodes(4) == 4 + 12 + 24 + 24);
  double fact = 1;
  for (std::size_t n = 1; n <= 12; ++n) {
    fact *= static_cast<double>(n);
    CHECK(static_cast<double>(permutation_tree_nodes(n)) < std::exp(1.0) * fact);
  }
}

TEST_CASE("prune: zero threshold changes nothing") {
  const auto p = make_profile({"A", "B", "C"}, {{10, {"A"}}, {9, {"B"}}, {1, {"C", "A"}}});
  const auto r = prune_candidates(p, 0.0);
  CHECK(r.profile == p);
  CHECK(r.pruned.empty());
}

TEST_CASE("prune: exactly at the threshold is kept, below is removed") {
  const auto p = make_profile({"A", "B", "C"}, {{10, {"A"}}, {9, {"B"}}, {1, {"C", "A"}}});
  CHECK(prune_candidates(p, 0.05).pruned.empty());

  const auto r = prune_candidates(p, 0.06);
  CHECK(r.pruned == std::vector<std::string>{"C"});
  CHECK(r.profile.candidates == std::vector<std::string>{"A", "B"});
  REQUIRE(r.profile.bound_ballots.size() == 20);
  CHECK(r.profile.bound_ballots.back().rankings == std::vector{candidate(0)});
}

TEST_CASE("prune: removing everyone is an error, emptied ballots are dropped") {
  const auto p = make_profile({"A", "B", "C"}, {{3, {"A"}}, {3, {"B"}}, {4, {"C"}}});
  CHECK_THROWS_AS(prune_candidates(p, 0.9), AllPruned);
  const auto r = prune_candidates(p, 0.35);
  CHECK(r.pruned == std::vector<std::string>{"A", "B"});
  CHECK(r.dropped_ballots == 6);
}

TEST_CASE("search reports pruned candidates and searches the reduced profile") {
  const auto p = make_profile({"A", "B", "C"}, {{10, {"A"}}, {9, {"B"}}, {1, {"C", "A"}}}, 1);
  SearchOptions o;
  o.prune_threshold = 0.06;
  ElectionProfile searched;
  const auto r = enumerate_outcomes(p, o, &searched);
  CHECK(r.pruned_candidates == std::vector<std::string>{"C"});
  CHECK(r.candidates == searched.candidates);
  for (const auto& order : r.orders) CHECK(order.size() == 2);
}

TEST_CASE("an exhausted budget returns partial results") {
  const auto p = oracle::random_profile({7, 500, 100, 3, 5});
  SearchOptions o;
  o.timeout_secs = 1e-9;
  CHECK(enumerate_outcomes(p, o).timed_out);
  CHECK(brute_force_outcomes(p, o).timed_out);
}

TEST_CASE("search options are range checked") {
  SearchOptions o;
  o.timeout_secs = 0;
  CHECK_THROWS_AS(enumerate_outcomes(kToy0, o), std::invalid_argument);
  o = {};
  o.prune_threshold = 1.0;
  CHECK_THROWS_AS(enumerate_outcomes(kToy0, o), std::invalid_argument);
}

TEST_CASE("invalid profiles are rejected before searching") {
  auto p = kToy0;
  p.bound_ballots.push_back(BallotSignature{});
  CHECK_THROWS_AS(enumerate_outcomes(p), InvalidProfile);
  CHECK_THROWS_AS(brute_force_outcomes(p), InvalidProfile);
}
