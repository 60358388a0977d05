#include "rcv/minbound.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "rcv/errors.hpp"
#include "rcv/kernels/tally.hpp"

namespace rcv {

Completion realize_completion(const SearchContext& ctx, const TentativeState& state) {
  const std::size_t n = ctx.candidate_count();
  const auto& order = state.prefix().sequence;
  if (order.size() != n) throw InconsistentInput("completion needs a complete elimination order");
  const CandidateId winner = order.back();

  Completion out;
  out.order = state.prefix();
  out.unbound.resize(state.unbound_ballots());
  std::vector<std::size_t> empty;
  for (std::size_t i = 0; i < state.unbound_ballots(); ++i) {
    const auto a = state.assigned(i);
    if (a.empty()) empty.push_back(i);
    else out.unbound[i].rankings.assign(a.begin(), a.end());
  }

  // Tallies of every round with the rankings bound so far.
  std::vector<BallotSignature> filled;
  for (const auto& b : out.unbound)
    if (!b.empty()) filled.push_back(b);
  std::size_t width = 0;
  for (const auto& b : filled) width = std::max(width, b.size());
  const kernels::BallotMatrix extra(filled, width);

  // slack[r][c]: how far c may fall towards e_r before e_r stops being strictly last.
  // A ballot given only candidate x lifts x in every round it survives, so
  // x = e_r can take k_x <= k_c + slack[r][c] for every c outliving it.
  std::vector<std::int64_t> reach(n, 0);  // largest k_x - k_winner that keeps the order
  std::vector<std::vector<std::int64_t>> slack(n);
  CandidateSet active = ctx.profile().all_candidates();
  for (std::size_t r = 0; r + 1 < n; ++r) {
    std::vector<std::uint64_t> t(n, 0);
    ctx.tally_bound(active, t);
    kernels::tally_scalar(extra, active, t);
    const CandidateId e = order[r];
    slack[r].assign(n, 0);
    for (std::size_t later = r + 1; later < n; ++later) {
      const CandidateId c = order[later];
      const auto s = static_cast<std::int64_t>(t[index(c)]) - static_cast<std::int64_t>(t[index(e)]) - 1;
      if (s < 0)
        throw InconsistentInput(fmt::format("'{}' is not strictly last in round {}", ctx.profile().name(e), r + 1));
      slack[r][index(c)] = s;
    }
    active.erase(e);
  }
  for (std::size_t r = n - 1; r-- > 0;) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t later = r + 1; later < n; ++later) {
      const CandidateId c = order[later];
      best = std::min(best, reach[index(c)] + slack[r][index(c)]);
    }
    reach[index(order[r])] = best;
  }

  // Smallest winner share W such that n*W + sum(reach) covers every empty ballot,
  // then give back the excess starting from the earliest eliminee.
  const auto pending = static_cast<std::int64_t>(empty.size());
  std::int64_t others = 0;
  for (std::size_t r = 0; r + 1 < n; ++r) others += reach[index(order[r])];
  const std::int64_t ni = static_cast<std::int64_t>(n);
  const std::int64_t w_share = pending > others ? (pending - others + ni - 1) / ni : 0;
  std::vector<std::int64_t> share(n, 0);
  std::int64_t total = 0;
  for (CandidateId c : order) {
    share[index(c)] = w_share + reach[index(c)];
    total += share[index(c)];
  }
  for (std::size_t r = 0; total > pending && r < n; ++r) {
    const std::int64_t give = std::min(total - pending, share[index(order[r])]);
    share[index(order[r])] -= give;
    total -= give;
  }

  std::size_t next = 0;
  for (CandidateId c : order)
    for (std::int64_t k = 0; k < share[index(c)]; ++k) out.unbound[empty[next++]].rankings = {c};

  for (const auto& b : out.unbound) out.winner_support += b.contains(winner);
  return out;
}

MinBoundReport min_bound_ballots(const ElectionProfile& profile, const SearchReport& report) {
  if (report.candidates != profile.candidates)
    throw InconsistentInput("outcome set was computed for a different candidate list");
  const SearchContext ctx(profile);
  const std::size_t n = ctx.candidate_count();

  MinBoundReport out;
  out.candidates = profile.candidates;
  out.unbound_count = profile.unbound_count;
  out.per_candidate.assign(n, std::nullopt);

  // Orders arrive sorted, so consecutive ones share prefixes; states[k] holds
  // the state after the first k eliminations of the current order.
  std::vector<TentativeState> states{TentativeState::initial(ctx)};
  std::vector<CandidateId> current;
  for (const auto& o : report.orders) {
    if (o.size() != n) throw InconsistentInput("outcome set holds an incomplete order");
    std::size_t common = 0;
    while (common < current.size() && current[common] == o.sequence[common]) ++common;
    states.resize(common + 1);
    current.assign(o.sequence.begin(), o.sequence.end());
    for (std::size_t k = common; k < n; ++k) {
      TentativeState next = states.back();
      if (!advance(ctx, next, o.sequence[k]))
        throw InconsistentInput(fmt::format("order is infeasible at round {}", k + 1));
      states.push_back(std::move(next));
    }

    const Completion c = realize_completion(ctx, states.back());
    auto& slot = out.per_candidate[index(o.winner())];
    if (!slot || c.winner_support < slot->min_ballots) {
      MinBoundEntry e;
      e.min_ballots = c.winner_support;
      e.fraction_of_unbound =
          profile.unbound_count == 0 ? 0.0 : static_cast<double>(c.winner_support) / static_cast<double>(profile.unbound_count);
      e.witness = o;
      slot = std::move(e);
    }
  }
  return out;
}

}  // namespace rcv
