#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "rcv/election.hpp"

namespace rcv::testing {

/// {copies, ranking by name}
using Group = std::pair<std::size_t, std::vector<std::string>>;

inline ElectionProfile make_profile(std::vector<std::string> candidates, std::initializer_list<Group> groups,
                                    std::uint64_t unbound = 0, std::uint32_t max_rankings = 0) {
  ElectionProfile p;
  p.candidates = std::move(candidates);
  p.unbound_count = unbound;
  p.max_rankings = max_rankings != 0 ? max_rankings : static_cast<std::uint32_t>(p.candidates.size());
  for (const auto& [copies, names] : groups) {
    BallotSignature b;
    for (const auto& n : names) b.rankings.push_back(*p.find(n));
    for (std::size_t i = 0; i < copies; ++i) p.bound_ballots.push_back(b);
  }
  return p;
}

inline EliminationOrder order_of(const ElectionProfile& p, std::initializer_list<const char*> names) {
  EliminationOrder o;
  for (const char* n : names) o.sequence.push_back(*p.find(n));
  return o;
}

inline std::vector<CandidateId> ids(const ElectionProfile& p, std::initializer_list<const char*> names) {
  return order_of(p, names).sequence;
}

}  // namespace rcv::testing
