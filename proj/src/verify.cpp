#include <algorithm>

#include <fmt/format.h>

#include "rcv/errors.hpp"
#include "rcv/search.hpp"

namespace rcv {

SearchContext::SearchContext(const ElectionProfile& profile, std::optional<kernels::Isa> isa)
    : profile_(profile),
      capacity_(std::min<std::size_t>(profile.max_rankings, profile.candidate_count())),
      isa_(isa.value_or(kernels::detect_isa(profile.candidate_count()))) {
  require_valid(profile_);
  std::size_t width = 0;
  for (const auto& b : profile_.bound_ballots) width = std::max(width, b.size());
  matrix_ = kernels::BallotMatrix(profile_.bound_ballots, width);
  tally_ = kernels::tally_kernel(isa_);
}

TentativeState TentativeState::initial(const SearchContext& ctx) {
  TentativeState s;
  s.active_ = ctx.profile().all_candidates();
  s.capacity_ = ctx.capacity();
  s.assigned_.assign(ctx.profile().unbound_count * s.capacity_, CandidateId{});
  s.lengths_.assign(ctx.profile().unbound_count, 0);
  return s;
}

bool TentativeState::in_pool(std::size_t i) const {
  const std::size_t len = lengths_[i];
  if (len == capacity_) return false;
  // Only the most recent assignment can still be active: a ballot is handed a
  // new candidate only after every earlier one has been eliminated.
  return len == 0 || !active_.contains(assigned_[i * capacity_ + len - 1]);
}

std::size_t TentativeState::pool_size() const {
  std::size_t k = 0;
  for (std::size_t i = 0; i < lengths_.size(); ++i) k += in_pool(i);
  return k;
}

std::size_t TentativeState::tentative_bound_size(const SearchContext& ctx) const {
  return ctx.profile().bound_ballots.size() + unbound_ballots() - pool_size();
}

bool advance(const SearchContext& ctx, TentativeState& s, CandidateId e, RoundTrace* trace) {
  const std::size_t n = ctx.candidate_count();
  if (index(e) >= n) throw InvalidPrefix(fmt::format("unknown candidate id {}", index(e)));
  if (!s.active_.contains(e))
    throw InvalidPrefix(fmt::format("candidate '{}' is already eliminated", ctx.profile().name(e)));

  std::vector<std::uint64_t> t(n, 0);
  ctx.tally_bound(s.active_, t);

  // Loop 1: unbound ballots count for their live assignment, or join the pool
  // ordered by (assigned rankings, ballot index).
  const std::size_t cap = s.capacity_;
  std::vector<std::vector<std::uint32_t>> pool(cap);
  std::size_t pool_total = 0;
  for (std::size_t i = 0; i < s.lengths_.size(); ++i) {
    const std::size_t len = s.lengths_[i];
    if (len > 0) {
      const CandidateId last = s.assigned_[i * cap + len - 1];
      if (s.active_.contains(last)) {
        ++t[index(last)];
        continue;
      }
    }
    if (len < cap) {
      pool[len].push_back(static_cast<std::uint32_t>(i));
      ++pool_total;
    }
  }

  if (trace) {
    trace->eliminee = e;
    trace->tallies = t;
    trace->boosts.clear();
    trace->pool_before = pool_total;
  }

  // Loop 2: lift every rival at or below e to t_e + 1.
  std::size_t bucket = 0, cursor = 0;
  const std::uint64_t target = t[index(e)];
  for (CandidateId c : s.active_.members()) {
    if (c == e || t[index(c)] > target) continue;
    const std::uint64_t margin = target - t[index(c)] + 1;
    if (pool_total < margin) {
      if (trace) trace->pool_after = pool_total;
      return false;
    }
    for (std::uint64_t k = 0; k < margin; ++k) {
      while (cursor == pool[bucket].size()) {
        ++bucket;
        cursor = 0;
      }
      const std::size_t i = pool[bucket][cursor++];
      s.assigned_[i * cap + s.lengths_[i]] = c;
      ++s.lengths_[i];
    }
    pool_total -= margin;
    t[index(c)] += margin;
    if (trace) trace->boosts.emplace_back(c, margin);
  }
  if (trace) trace->pool_after = pool_total;

  s.active_.erase(e);
  s.prefix_.sequence.push_back(e);
  return true;
}

VerifyResult verify(const SearchContext& ctx, const TentativeState& state, std::span<const CandidateId> extension,
                    std::vector<RoundTrace>* trace) {
  VerifyResult r;
  TentativeState s = state;
  for (CandidateId e : extension) {
    RoundTrace* rt = nullptr;
    if (trace) rt = &trace->emplace_back();
    ++r.rounds;
    if (!advance(ctx, s, e, rt)) return r;
  }
  r.feasible = true;
  r.next = std::move(s);
  return r;
}

VerifyResult verify_order(const SearchContext& ctx, std::span<const CandidateId> order,
                          std::vector<RoundTrace>* trace) {
  return verify(ctx, TentativeState::initial(ctx), order, trace);
}

}  // namespace rcv
