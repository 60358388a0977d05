#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcv/election.hpp"
#include "rcv/search.hpp"

namespace rcv {

/// One concrete filling of the unbound ballots that realizes a feasible order.
struct Completion {
  EliminationOrder order;
  std::vector<BallotSignature> unbound;  ///< one per originally unbound ballot, none empty
  std::uint64_t winner_support = 0;      ///< unbound ballots that mention the winner
};

/// Fills the unbound ballots left after checking a complete order.
///
/// Rankings already bound by the check are kept. Every still-empty ballot gets
/// one ranking, chosen so that the order survives with strict eliminations and
/// the winner receives as few of them as possible.
Completion realize_completion(const SearchContext& ctx, const TentativeState& final_state);

struct MinBoundEntry {
  std::uint64_t min_ballots = 0;
  double fraction_of_unbound = 0.0;
  EliminationOrder witness;
};

struct MinBoundReport {
  std::vector<std::string> candidates;
  std::uint64_t unbound_count = 0;
  std::vector<std::optional<MinBoundEntry>> per_candidate;  ///< set exactly for possible winners
};

/// For each possible winner, the fewest unbound ballots that must mention it
/// over all of its feasible orders. `profile` must be the profile the report
/// was computed on (after pruning).
MinBoundReport min_bound_ballots(const ElectionProfile& profile, const SearchReport& report);

}  // namespace rcv
