#include "rcv/election.hpp"

#include <algorithm>
#include <unordered_set>

#include <fmt/format.h>

#include "rcv/errors.hpp"
#include "rcv/kernels/tally.hpp"

namespace rcv {

bool BallotSignature::contains(CandidateId c) const {
  return std::find(rankings.begin(), rankings.end(), c) != rankings.end();
}

std::optional<CandidateId> ElectionProfile::find(std::string_view name) const {
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (candidates[i] == name) return candidate(i);
  return std::nullopt;
}

std::vector<Violation> validate_profile(const ElectionProfile& profile) {
  std::vector<Violation> out;
  const std::size_t n = profile.candidate_count();
  if (n == 0) out.push_back({std::nullopt, "no candidates"});
  if (n > kMaxCandidates) out.push_back({std::nullopt, fmt::format("more than {} candidates", kMaxCandidates)});
  if (profile.max_rankings == 0) out.push_back({std::nullopt, "max_rankings must be positive"});

  std::unordered_set<std::string_view> names;
  for (const auto& name : profile.candidates) {
    if (name.empty()) out.push_back({std::nullopt, "empty candidate name"});
    else if (!names.insert(name).second) out.push_back({std::nullopt, fmt::format("duplicate candidate name '{}'", name)});
  }

  const std::size_t cap = std::min<std::size_t>(profile.max_rankings, n);
  for (std::size_t b = 0; b < profile.bound_ballots.size(); ++b) {
    const auto& r = profile.bound_ballots[b].rankings;
    if (r.empty()) {
      out.push_back({b, fmt::format("empty ballot at ballot {}", b)});
      continue;
    }
    if (r.size() > cap) out.push_back({b, fmt::format("too many rankings at ballot {}", b)});
    std::uint64_t seen = 0;
    for (CandidateId c : r) {
      if (index(c) >= n) {
        out.push_back({b, fmt::format("unknown candidate {} at ballot {}", index(c), b)});
        continue;
      }
      const std::uint64_t bit = std::uint64_t{1} << index(c);
      if (seen & bit) out.push_back({b, fmt::format("duplicate candidate at ballot {}", b)});
      seen |= bit;
    }
  }
  return out;
}

void require_valid(const ElectionProfile& profile) {
  auto v = validate_profile(profile);
  if (!v.empty()) throw InvalidProfile(v.front().reason);
}

CountResult count_ballots(std::size_t n, std::span<const BallotSignature> ballots, TiePolicy policy) {
  if (n == 0) throw InvalidProfile("no candidates");
  std::size_t width = 0;
  for (const auto& b : ballots) width = std::max(width, b.size());
  const kernels::BallotMatrix matrix(ballots, width);
  const kernels::TallyFn tally = kernels::tally_kernel(kernels::detect_isa(n));

  CountResult result;
  CandidateSet active = CandidateSet::first(n);
  while (!active.empty()) {
    RoundTally round;
    round.active = active;
    round.counts.assign(n, 0);
    tally(matrix, active, round.counts);
    std::uint64_t counted = 0;
    for (auto v : round.counts) counted += v;
    round.exhausted = ballots.size() - counted;

    const auto members = active.members();
    CandidateId lowest = members.front();
    bool tied = false;
    for (std::size_t i = 1; i < members.size(); ++i) {
      const auto t = round.counts[index(members[i])];
      if (t < round.counts[index(lowest)]) {
        lowest = members[i];
        tied = false;
      } else if (t == round.counts[index(lowest)]) {
        tied = true;
      }
    }
    if (tied && policy == TiePolicy::strict)
      throw UnresolvableTie(fmt::format("tie for last place in round {} at {} votes", result.rounds.size() + 1,
                                        round.counts[index(lowest)]));
    round.eliminated = lowest;
    active.erase(lowest);
    result.order.sequence.push_back(lowest);
    result.rounds.push_back(std::move(round));
  }
  return result;
}

CountResult count_ranked_votes(const ElectionProfile& profile, TiePolicy policy) {
  require_valid(profile);
  if (profile.unbound_count != 0) throw InvalidProfile("unbound ballots present; use `outcomes`");
  return count_ballots(profile.candidate_count(), profile.bound_ballots, policy);
}

}  // namespace rcv
