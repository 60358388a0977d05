#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <spdlog/spdlog.h>

#include "rcv/errors.hpp"
#include "rcv/search.hpp"

namespace rcv {

void SearchOptions::check() const {
  if (!(timeout_secs > 0.0)) throw std::invalid_argument("timeout_secs must be positive");
  if (!(prune_threshold >= 0.0 && prune_threshold < 1.0))
    throw std::invalid_argument("prune_threshold must be in [0, 1)");
}

std::vector<std::string> SearchReport::winner_names() const {
  std::vector<std::string> out;
  for (CandidateId c : possible_winners.members()) out.push_back(candidates.at(index(c)));
  return out;
}

std::uint64_t permutation_tree_nodes(std::size_t n) {
  std::uint64_t total = 0, level = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    level *= n - i + 1;
    total += level;
  }
  return total;
}

PruneResult prune_candidates(const ElectionProfile& profile, double threshold) {
  if (!(threshold >= 0.0 && threshold < 1.0)) throw std::invalid_argument("prune threshold must be in [0, 1)");
  require_valid(profile);
  const std::size_t n = profile.candidate_count();
  std::vector<std::uint64_t> first(n, 0);
  for (const auto& b : profile.bound_ballots) ++first[index(b.rankings.front())];

  const double cutoff = threshold * static_cast<double>(profile.bound_ballots.size());
  PruneResult out;
  std::vector<int> remap(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (static_cast<double>(first[i]) < cutoff) {
      out.pruned.push_back(profile.candidates[i]);
    } else {
      remap[i] = static_cast<int>(out.profile.candidates.size());
      out.profile.candidates.push_back(profile.candidates[i]);
    }
  }
  if (out.profile.candidates.empty()) throw AllPruned("every candidate falls below the prune threshold");

  out.profile.max_rankings = profile.max_rankings;
  out.profile.unbound_count = profile.unbound_count;
  out.profile.bound_ballots.reserve(profile.bound_ballots.size());
  for (const auto& b : profile.bound_ballots) {
    BallotSignature kept;
    for (CandidateId c : b.rankings)
      if (remap[index(c)] >= 0) kept.rankings.push_back(candidate(static_cast<std::size_t>(remap[index(c)])));
    if (kept.empty()) ++out.dropped_ballots;
    else out.profile.bound_ballots.push_back(std::move(kept));
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Budget {
  Clock::time_point deadline;
  std::atomic<bool> expired{false};

  explicit Budget(double secs)
      : deadline(Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(secs))) {}

  bool out_of_time() {
    if (expired.load(std::memory_order_relaxed)) return true;
    if (Clock::now() >= deadline) {
      expired.store(true, std::memory_order_relaxed);
      return true;
    }
    return false;
  }
};

/// Depth-first walker over one or more subtrees. Each worker owns one.
class Explorer {
 public:
  Explorer(const SearchContext& ctx, Budget& budget) : ctx_(ctx), budget_(budget), n_(ctx.candidate_count()) {}

  /// Memoized: the child state is derived from the parent snapshot.
  void expand(const TentativeState& state) {
    for (CandidateId c : state.active().members()) {
      if (budget_.out_of_time()) return;
      TentativeState child = state;
      ++verify_calls;
      ++nodes;
      if (!advance(ctx_, child, c)) continue;
      if (child.prefix().size() == n_) orders.push_back(child.prefix());
      else expand(child);
    }
  }

  /// Unmemoized: every child prefix is re-checked from the initial state.
  void expand_plain(std::vector<CandidateId>& prefix, CandidateSet remaining) {
    for (CandidateId c : remaining.members()) {
      if (budget_.out_of_time()) return;
      prefix.push_back(c);
      ++verify_calls;
      const VerifyResult r = verify(ctx_, initial_, prefix);
      nodes += r.rounds;
      if (r.feasible) {
        if (prefix.size() == n_) {
          orders.push_back(EliminationOrder{prefix});
        } else {
          CandidateSet rest = remaining;
          rest.erase(c);
          expand_plain(prefix, rest);
        }
      }
      prefix.pop_back();
    }
  }

  void set_initial(TentativeState s) { initial_ = std::move(s); }

  std::vector<EliminationOrder> orders;
  std::uint64_t nodes = 0;
  std::uint64_t verify_calls = 0;

 private:
  const SearchContext& ctx_;
  Budget& budget_;
  std::size_t n_;
  TentativeState initial_;
};

void finish(SearchReport& report, Budget& budget, Clock::time_point start) {
  std::sort(report.orders.begin(), report.orders.end());
  report.orders.erase(std::unique(report.orders.begin(), report.orders.end()), report.orders.end());
  for (const auto& o : report.orders) report.possible_winners.insert(o.winner());
  report.timed_out = budget.expired.load();
  report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
}

ElectionProfile prepare(const ElectionProfile& profile, const SearchOptions& opts, SearchReport& report,
                        ElectionProfile* searched) {
  opts.check();
  require_valid(profile);
  ElectionProfile p = profile;
  if (opts.prune_threshold > 0.0) {
    PruneResult pr = prune_candidates(profile, opts.prune_threshold);
    if (!pr.pruned.empty())
      spdlog::info("pruned {} candidate(s) below {:.1f}% of first preferences", pr.pruned.size(),
                   opts.prune_threshold * 100.0);
    report.pruned_candidates = std::move(pr.pruned);
    p = std::move(pr.profile);
  }
  report.candidates = p.candidates;
  if (searched) *searched = p;
  return p;
}

void run_parallel(const SearchContext& ctx, Budget& budget, const SearchOptions& opts, SearchReport& report) {
  // Work items are the feasible depth-1 prefixes; each worker owns whole subtrees.
  const TentativeState root = TentativeState::initial(ctx);
  std::vector<TentativeState> items;
  for (CandidateId c : root.active().members()) {
    TentativeState child = root;
    ++report.verify_calls;
    ++report.nodes_expanded;
    if (!advance(ctx, child, c)) continue;
    if (child.prefix().size() == ctx.candidate_count()) report.orders.push_back(child.prefix());
    else items.push_back(std::move(child));
  }

  unsigned workers = opts.threads != 0 ? opts.threads : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(items.size(), 1)));
  std::atomic<std::size_t> next{0};
  std::mutex merge;
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      Explorer ex(ctx, budget);
      ex.set_initial(TentativeState::initial(ctx));
      for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
        if (opts.memoize) {
          ex.expand(items[i]);
        } else {
          std::vector<CandidateId> prefix = items[i].prefix().sequence;
          CandidateSet rest = items[i].active();
          ex.expand_plain(prefix, rest);
        }
      }
      std::lock_guard lock(merge);
      report.orders.insert(report.orders.end(), ex.orders.begin(), ex.orders.end());
      report.nodes_expanded += ex.nodes;
      report.verify_calls += ex.verify_calls;
    });
  }
}

}  // namespace

SearchReport enumerate_outcomes(const ElectionProfile& profile, const SearchOptions& opts, ElectionProfile* searched) {
  const auto start = Clock::now();
  SearchReport report;
  const ElectionProfile p = prepare(profile, opts, report, searched);
  const SearchContext ctx(p);
  Budget budget(opts.timeout_secs);

  if (opts.parallel) {
    run_parallel(ctx, budget, opts, report);
  } else {
    Explorer ex(ctx, budget);
    if (opts.memoize) {
      ex.expand(TentativeState::initial(ctx));
    } else {
      ex.set_initial(TentativeState::initial(ctx));
      std::vector<CandidateId> prefix;
      ex.expand_plain(prefix, p.all_candidates());
    }
    report.orders = std::move(ex.orders);
    report.nodes_expanded = ex.nodes;
    report.verify_calls = ex.verify_calls;
  }
  finish(report, budget, start);
  if (report.timed_out) spdlog::warn("search timed out after {:.1f}s; results are partial", report.seconds);
  return report;
}

SearchReport brute_force_outcomes(const ElectionProfile& profile, const SearchOptions& opts,
                                  ElectionProfile* searched) {
  const auto start = Clock::now();
  SearchReport report;
  const ElectionProfile p = prepare(profile, opts, report, searched);
  const SearchContext ctx(p);
  Budget budget(opts.timeout_secs);
  const TentativeState initial = TentativeState::initial(ctx);

  std::vector<CandidateId> perm = p.all_candidates().members();
  do {
    if (budget.out_of_time()) break;
    TentativeState s = initial;
    bool ok = true;
    for (CandidateId e : perm) {
      ++report.verify_calls;
      ++report.nodes_expanded;
      if (!advance(ctx, s, e)) {
        ok = false;
        break;
      }
    }
    if (ok) report.orders.push_back(EliminationOrder{perm});
  } while (std::next_permutation(perm.begin(), perm.end()));

  finish(report, budget, start);
  return report;
}

}  // namespace rcv
