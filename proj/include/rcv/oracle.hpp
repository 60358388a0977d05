#pragma once

// Ground truth for small elections: enumerate every concrete way the unbound
// ballots could be filled in and run the ordinary count on each.
//
// Completions whose count hits a tie for last place are discarded, so the
// comparison is against strict-elimination worlds only.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "rcv/election.hpp"

namespace rcv::oracle {

inline constexpr std::uint64_t kDefaultCompletionCap = 1'000'000;

/// Every signature of length 1..max_rankings (capped at n) over n candidates.
std::vector<BallotSignature> all_signatures(std::size_t n, std::size_t max_rankings);

/// Number of completions, or nullopt when it exceeds `cap`.
std::optional<std::uint64_t> completion_count(const ElectionProfile& profile, std::uint64_t cap = kDefaultCompletionCap);

/// Calls `visit` with the unbound ballots of every completion.
/// Throws SpaceTooLarge when the completion count exceeds `cap`.
void for_each_completion(const ElectionProfile& profile,
                         const std::function<void(std::span<const BallotSignature>)>& visit,
                         std::uint64_t cap = kDefaultCompletionCap);

struct WinnerSet {
  CandidateSet winners;
  std::set<EliminationOrder> orders;
  /// Per candidate: fewest unbound ballots mentioning it over the completions it wins.
  std::vector<std::optional<std::uint64_t>> min_support;
  std::uint64_t completions = 0;
  std::uint64_t discarded_ties = 0;
};

WinnerSet exhaustive_winner_set(const ElectionProfile& profile, std::uint64_t cap = kDefaultCompletionCap);

struct RandomProfileParams {
  std::size_t candidates = 3;
  std::size_t ballots = 6;
  std::uint64_t unbound = 0;
  std::uint32_t max_rankings = 3;
  std::uint64_t seed = 0;
};

/// Deterministic per seed. Ballots are prefixes of uniform random permutations
/// with a uniform length in 1..min(max_rankings, n). Names are "A", "B", ...
ElectionProfile random_profile(const RandomProfileParams& params);

}  // namespace rcv::oracle
