#include "rcv/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "rcv/errors.hpp"

namespace rcv::oracle {

namespace {

void extend(std::vector<CandidateId>& cur, std::uint64_t used, std::size_t n, std::size_t max_len,
            std::vector<BallotSignature>& out) {
  for (std::size_t c = 0; c < n; ++c) {
    if ((used >> c) & 1U) continue;
    cur.push_back(candidate(c));
    out.push_back(BallotSignature{cur});
    if (cur.size() < max_len) extend(cur, used | (std::uint64_t{1} << c), n, max_len, out);
    cur.pop_back();
  }
}

std::string letter_name(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('A' + i));
  return fmt::format("C{}", i + 1);
}

}  // namespace

std::vector<BallotSignature> all_signatures(std::size_t n, std::size_t max_rankings) {
  std::vector<BallotSignature> out;
  std::vector<CandidateId> cur;
  const std::size_t len = std::min(n, max_rankings);
  if (len > 0) extend(cur, 0, n, len, out);
  return out;
}

std::optional<std::uint64_t> completion_count(const ElectionProfile& profile, std::uint64_t cap) {
  const std::uint64_t sigs = all_signatures(profile.candidate_count(), profile.max_rankings).size();
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < profile.unbound_count; ++i) {
    if (sigs != 0 && total > cap / sigs) return std::nullopt;
    total *= sigs;
  }
  if (total > cap) return std::nullopt;
  return total;
}

void for_each_completion(const ElectionProfile& profile,
                         const std::function<void(std::span<const BallotSignature>)>& visit, std::uint64_t cap) {
  if (!completion_count(profile, cap))
    throw SpaceTooLarge(fmt::format("more than {} completions for {} unbound ballots", cap, profile.unbound_count));
  const auto sigs = all_signatures(profile.candidate_count(), profile.max_rankings);
  const std::size_t u = profile.unbound_count;
  std::vector<std::size_t> digit(u, 0);
  std::vector<BallotSignature> ballots(u, sigs.empty() ? BallotSignature{} : sigs.front());
  while (true) {
    visit(ballots);
    std::size_t k = 0;
    while (k < u && ++digit[k] == sigs.size()) {
      digit[k] = 0;
      ballots[k] = sigs[0];
      ++k;
    }
    if (k == u) break;
    ballots[k] = sigs[digit[k]];
  }
}

WinnerSet exhaustive_winner_set(const ElectionProfile& profile, std::uint64_t cap) {
  require_valid(profile);
  const std::size_t n = profile.candidate_count();
  WinnerSet out;
  out.min_support.assign(n, std::nullopt);

  std::vector<BallotSignature> all = profile.bound_ballots;
  const std::size_t bound = all.size();
  all.resize(bound + profile.unbound_count);

  for_each_completion(
      profile,
      [&](std::span<const BallotSignature> unbound) {
        ++out.completions;
        std::copy(unbound.begin(), unbound.end(), all.begin() + static_cast<std::ptrdiff_t>(bound));
        CountResult r;
        try {
          r = count_ballots(n, all, TiePolicy::strict);
        } catch (const UnresolvableTie&) {
          ++out.discarded_ties;
          return;
        }
        const CandidateId w = r.winner();
        out.winners.insert(w);
        out.orders.insert(r.order);
        const auto support = static_cast<std::uint64_t>(
            std::count_if(unbound.begin(), unbound.end(), [w](const BallotSignature& b) { return b.contains(w); }));
        auto& best = out.min_support[index(w)];
        if (!best || support < *best) best = support;
      },
      cap);
  return out;
}

ElectionProfile random_profile(const RandomProfileParams& params) {
  std::mt19937_64 rng(params.seed);
  ElectionProfile p;
  for (std::size_t i = 0; i < params.candidates; ++i) p.candidates.push_back(letter_name(i));
  p.max_rankings = params.max_rankings;
  p.unbound_count = params.unbound;

  const std::size_t cap = std::min<std::size_t>(params.max_rankings, params.candidates);
  std::vector<CandidateId> perm(params.candidates);
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = candidate(i);
  p.bound_ballots.reserve(params.ballots);
  if (cap == 0) return p;
  std::uniform_int_distribution<std::size_t> length(1, cap);
  for (std::size_t b = 0; b < params.ballots; ++b) {
    std::shuffle(perm.begin(), perm.end(), rng);
    p.bound_ballots.push_back(BallotSignature{{perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(length(rng))}});
  }
  return p;
}

}  // namespace rcv::oracle
