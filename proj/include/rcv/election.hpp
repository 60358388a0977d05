#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcv/candidate_set.hpp"

namespace rcv {

/// A voter's ranking, most preferred first. No candidate appears twice.
struct BallotSignature {
  std::vector<CandidateId> rankings;

  std::size_t size() const { return rankings.size(); }
  bool empty() const { return rankings.empty(); }
  bool contains(CandidateId c) const;

  friend bool operator==(const BallotSignature&, const BallotSignature&) = default;
  friend auto operator<=>(const BallotSignature&, const BallotSignature&) = default;
};

/// Candidates, known (bound) ballots and the number of ballots not yet known.
struct ElectionProfile {
  std::vector<std::string> candidates;
  std::vector<BallotSignature> bound_ballots;
  std::uint64_t unbound_count = 0;
  std::uint32_t max_rankings = 1;

  std::size_t candidate_count() const { return candidates.size(); }
  std::uint64_t total_ballots() const { return bound_ballots.size() + unbound_count; }
  CandidateSet all_candidates() const { return CandidateSet::first(candidates.size()); }

  /// Lookup by display name.
  std::optional<CandidateId> find(std::string_view name) const;
  const std::string& name(CandidateId c) const { return candidates.at(index(c)); }

  friend bool operator==(const ElectionProfile&, const ElectionProfile&) = default;
};

/// Candidates in elimination sequence. When complete, the last entry is the winner.
struct EliminationOrder {
  std::vector<CandidateId> sequence;

  std::size_t size() const { return sequence.size(); }
  bool complete(std::size_t n) const { return sequence.size() == n; }
  CandidateId winner() const { return sequence.back(); }

  friend bool operator==(const EliminationOrder&, const EliminationOrder&) = default;
  friend auto operator<=>(const EliminationOrder&, const EliminationOrder&) = default;
};

struct Violation {
  std::optional<std::size_t> ballot;
  std::string reason;
};

/// Returns every broken invariant; empty when the profile is well formed.
std::vector<Violation> validate_profile(const ElectionProfile& profile);

/// Throws InvalidProfile carrying the first violation, if any.
void require_valid(const ElectionProfile& profile);

enum class TiePolicy {
  strict,     ///< a shared minimum raises UnresolvableTie
  lowest_id,  ///< eliminate the tied candidate with the smallest id
};

/// Tallies for one round of a count.
struct RoundTally {
  CandidateSet active;
  std::vector<std::uint64_t> counts;  ///< indexed by candidate; zero for inactive
  std::uint64_t exhausted = 0;
  CandidateId eliminated{};
};

struct CountResult {
  EliminationOrder order;
  std::vector<RoundTally> rounds;

  CandidateId winner() const { return order.winner(); }
};

/// Standard instant-runoff count over bound ballots. Requires unbound_count == 0.
CountResult count_ranked_votes(const ElectionProfile& profile, TiePolicy policy = TiePolicy::strict);

/// Instant-runoff count over an explicit ballot list (no precondition on unbound ballots).
CountResult count_ballots(std::size_t candidate_count, std::span<const BallotSignature> ballots,
                          TiePolicy policy = TiePolicy::strict);

}  // namespace rcv
