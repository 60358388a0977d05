#pragma once

// Possible elimination orders of an instant-runoff election with ballots
// still outstanding.
//
// The feasibility check walks a (partial) elimination order round by round.
// Outstanding ballots are handed out lazily: when the intended eliminee is not
// strictly last, every candidate at or below it is lifted to exactly one vote
// above it, each lifted vote binding one more ranking on an outstanding
// ballot. A ballot whose assigned candidates have all been eliminated goes
// back to the pool while it still has free ranking slots.
//
// enumerate_outcomes runs that check depth first over the permutation tree
// and prunes a subtree as soon as its prefix is infeasible.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcv/election.hpp"
#include "rcv/kernels/tally.hpp"

namespace rcv {

struct SearchOptions {
  double timeout_secs = 7200.0;
  double prune_threshold = 0.0;
  bool memoize = true;
  bool parallel = false;
  unsigned threads = 0;  ///< 0 picks hardware concurrency
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument when out of range.
  void check() const;
};

/// Immutable per-profile data shared by every search node.
class SearchContext {
 public:
  /// Picks the fastest tally kernel unless `isa` is given.
  explicit SearchContext(const ElectionProfile& profile, std::optional<kernels::Isa> isa = std::nullopt);

  const ElectionProfile& profile() const { return profile_; }
  std::size_t candidate_count() const { return profile_.candidate_count(); }
  std::size_t capacity() const { return capacity_; }
  kernels::Isa isa() const { return isa_; }

  /// Adds bound-ballot first preferences among `active` into counts.
  void tally_bound(CandidateSet active, std::span<std::uint64_t> counts) const {
    tally_(matrix_, active, counts);
  }

 private:
  ElectionProfile profile_;
  std::size_t capacity_;
  kernels::BallotMatrix matrix_;
  kernels::Isa isa_;
  kernels::TallyFn tally_;
};

struct RoundTrace;

/// Search-node snapshot: active candidates, eliminated prefix and the
/// tentative rankings bound so far on each originally unbound ballot.
///
/// An unbound ballot is in the pool (U') when none of its assigned candidates
/// is active and it has a free slot; otherwise it is tentatively bound (B').
class TentativeState {
 public:
  TentativeState() = default;
  static TentativeState initial(const SearchContext& ctx);

  CandidateSet active() const { return active_; }
  const EliminationOrder& prefix() const { return prefix_; }
  std::size_t unbound_ballots() const { return lengths_.size(); }

  /// Rankings tentatively assigned to unbound ballot i, in assignment order.
  std::span<const CandidateId> assigned(std::size_t i) const {
    return {assigned_.data() + i * capacity_, lengths_[i]};
  }
  bool in_pool(std::size_t i) const;
  std::size_t pool_size() const;
  /// Bound ballots plus unbound ballots currently outside the pool.
  std::size_t tentative_bound_size(const SearchContext& ctx) const;

 private:
  friend bool advance(const SearchContext&, TentativeState&, CandidateId, RoundTrace*);

  CandidateSet active_;
  EliminationOrder prefix_;
  std::size_t capacity_ = 0;
  std::vector<CandidateId> assigned_;   // unbound_ballots() x capacity_
  std::vector<std::uint8_t> lengths_;
};

/// Simulates one elimination round in place. Returns false (leaving `state`
/// partially updated) when the pool cannot lift every rival above `eliminee`.
bool advance(const SearchContext& ctx, TentativeState& state, CandidateId eliminee, RoundTrace* trace = nullptr);

/// Per-round record of what the feasibility check did.
struct RoundTrace {
  CandidateId eliminee{};
  std::vector<std::uint64_t> tallies;  ///< before any lifting, indexed by candidate
  std::vector<std::pair<CandidateId, std::uint64_t>> boosts;  ///< (candidate, ballots bound)
  std::size_t pool_before = 0;
  std::size_t pool_after = 0;
};

struct VerifyResult {
  bool feasible = false;
  std::optional<TentativeState> next;
  std::size_t rounds = 0;  ///< rounds actually simulated
};

/// Checks whether `extension` can be eliminated next, in order, from `state`.
/// Throws InvalidPrefix on a repeated or unknown candidate.
VerifyResult verify(const SearchContext& ctx, const TentativeState& state,
                    std::span<const CandidateId> extension, std::vector<RoundTrace>* trace = nullptr);

/// verify() from the initial state.
VerifyResult verify_order(const SearchContext& ctx, std::span<const CandidateId> order,
                          std::vector<RoundTrace>* trace = nullptr);

struct SearchReport {
  std::vector<std::string> candidates;
  std::vector<EliminationOrder> orders;  ///< sorted, complete feasible orders
  CandidateSet possible_winners;
  std::uint64_t nodes_expanded = 0;  ///< elimination rounds simulated
  std::uint64_t verify_calls = 0;
  bool timed_out = false;
  std::vector<std::string> pruned_candidates;
  double seconds = 0.0;

  std::vector<std::string> winner_names() const;
};

/// Branch-and-bound enumeration of every feasible complete elimination order.
/// Candidates are pruned first when opts.prune_threshold > 0; the profile
/// actually searched is written to `searched` when given.
SearchReport enumerate_outcomes(const ElectionProfile& profile, const SearchOptions& opts = {},
                                ElectionProfile* searched = nullptr);

/// Checks every permutation independently from a fresh state.
SearchReport brute_force_outcomes(const ElectionProfile& profile, const SearchOptions& opts = {},
                                  ElectionProfile* searched = nullptr);

struct PruneResult {
  ElectionProfile profile;
  std::vector<std::string> pruned;
  std::size_t dropped_ballots = 0;  ///< bound ballots left empty by the removal
};

/// Drops candidates whose first-round share of bound ballots is below `threshold`.
PruneResult prune_candidates(const ElectionProfile& profile, double threshold);

/// Sum over i = 1..n of n!/(n-i)!, the non-root node count of the permutation tree.
std::uint64_t permutation_tree_nodes(std::size_t n);

}  // namespace rcv
