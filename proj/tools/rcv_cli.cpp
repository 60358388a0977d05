// rcv: possible outcomes of instant-runoff elections with outstanding ballots.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "rcv/dag.hpp"
#include "rcv/election.hpp"
#include "rcv/errors.hpp"
#include "rcv/ingest.hpp"
#include "rcv/minbound.hpp"
#include "rcv/oracle.hpp"
#include "rcv/report_json.hpp"
#include "rcv/search.hpp"

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("rcv");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("%^%l%$: %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("RCV_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

struct ProfileArgs {
  std::string path;
  std::string meta;

  rcv::ElectionProfile load() const {
    const auto fmt = rcv::ingest::format_for(path);
    std::optional<rcv::ingest::CsvMetadata> m;
    if (fmt == rcv::ingest::Format::csv && !meta.empty()) {
      std::ifstream in(meta);
      if (!in) throw rcv::IoError(fmt::format("cannot open '{}'", meta));
      std::stringstream ss;
      ss << in.rdbuf();
      m = rcv::ingest::parse_metadata(ss.str());
    }
    rcv::ingest::ReadStats stats;
    auto p = rcv::ingest::read_profile(path, fmt, m, &stats);
    if (stats.blank_rows) spdlog::info("skipped {} blank ballot row(s)", stats.blank_rows);
    spdlog::info("loaded {} candidates, {} bound ballots, {} unbound", p.candidate_count(), p.bound_ballots.size(),
                 p.unbound_count);
    return p;
  }
};

void add_profile_args(CLI::App* cmd, ProfileArgs& a) {
  cmd->add_option("profile", a.path, "Profile (.json, or .csv with a sidecar)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--meta", a.meta, "Sidecar metadata for CSV input (default <csv>.meta.json)");
}

void add_search_args(CLI::App* cmd, rcv::SearchOptions& o) {
  cmd->add_option("--timeout-secs", o.timeout_secs, "Wall-clock budget; partial results on expiry")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--prune-threshold", o.prune_threshold,
                  "Drop candidates below this share of first preferences before searching")
      ->check(CLI::Range(0.0, 0.999999));
  cmd->add_flag("--no-memoize{false}", o.memoize, "Re-check every prefix from scratch");
  cmd->add_flag("--parallel", o.parallel, "Search subtrees on several threads");
  cmd->add_option("--threads", o.threads, "Worker threads for --parallel (0 = all cores)");
}

/// Writes to `path`, or stdout for "-".
void write_out(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw rcv::IoError(fmt::format("cannot write '{}'", path));
  out << text;
}

std::string winners_line(const rcv::SearchReport& r) {
  const auto names = r.winner_names();
  return fmt::format("{} possible winner{}: {}", names.size(), names.size() == 1 ? "" : "s", fmt::join(names, ", "));
}

int run_count(const ProfileArgs& args, const std::string& tie_policy) {
  const auto p = args.load();
  if (p.unbound_count != 0) throw rcv::InvalidProfile("unbound ballots present; use `outcomes`");
  const auto policy = tie_policy == "lowest-id" ? rcv::TiePolicy::lowest_id : rcv::TiePolicy::strict;
  const auto result = rcv::count_ranked_votes(p, policy);
  for (std::size_t r = 0; r < result.rounds.size(); ++r) {
    const auto& round = result.rounds[r];
    std::vector<std::string> cells;
    for (rcv::CandidateId c : round.active.members()) cells.push_back(fmt::format("{} {}", p.name(c), round.counts[index(c)]));
    std::cout << fmt::format("round {}: {} | exhausted {} -> eliminated {}\n", r + 1, fmt::join(cells, " | "),
                             round.exhausted, p.name(round.eliminated));
  }
  std::vector<std::string> order;
  for (rcv::CandidateId c : result.order.sequence) order.push_back(p.name(c));
  std::cout << fmt::format("order: {}\nwinner: {}\n", fmt::join(order, ", "), p.name(result.winner()));
  return 0;
}

int run_outcomes(const ProfileArgs& args, const rcv::SearchOptions& opts, const std::string& out) {
  const auto p = args.load();
  const auto report = rcv::enumerate_outcomes(p, opts);
  write_out(out, rcv::to_json(report));
  auto& summary = out == "-" ? std::cerr : std::cout;
  summary << winners_line(report) << "\n";
  if (!report.pruned_candidates.empty())
    summary << fmt::format("pruned: {}\n", fmt::join(report.pruned_candidates, ", "));
  if (report.timed_out) std::cerr << "warning: search timed out; results are partial\n";
  return 0;
}

int run_minbound(const ProfileArgs& args, const rcv::SearchOptions& opts, const std::string& out) {
  const auto p = args.load();
  rcv::ElectionProfile searched;
  const auto report = rcv::enumerate_outcomes(p, opts, &searched);
  if (report.timed_out) std::cerr << "warning: search timed out; bounds cover the orders found so far\n";
  const auto bounds = rcv::min_bound_ballots(searched, report);
  write_out(out, rcv::to_json(bounds));
  auto& summary = out == "-" ? std::cerr : std::cout;
  for (std::size_t i = 0; i < bounds.per_candidate.size(); ++i)
    if (const auto& e = bounds.per_candidate[i])
      summary << fmt::format("{}: {} ({:.1f}% of unbound)\n", bounds.candidates[i], e->min_ballots,
                             e->fraction_of_unbound * 100.0);
  return 0;
}

int run_viz(const std::string& report_path, const std::string& format, bool compress, const std::string& out) {
  std::ifstream in(report_path);
  if (!in) throw rcv::IoError(fmt::format("cannot open '{}'", report_path));
  std::stringstream ss;
  ss << in.rdbuf();
  const auto report = rcv::search_report_from_json(ss.str());
  const auto tree = rcv::dag::build_tree(report);
  const auto fmt = format == "json" ? rcv::dag::Format::json : rcv::dag::Format::dot;
  if (compress) {
    const auto dag = rcv::dag::compress(tree);
    spdlog::info("compressed {} tree nodes into {} DAG nodes", tree.size(), dag.size());
    write_out(out, rcv::dag::emit(dag, fmt));
  } else {
    write_out(out, rcv::dag::emit(tree, fmt));
  }
  return 0;
}

struct BenchArgs {
  std::string profile;
  std::string meta;
  std::size_t candidates = 7;
  std::size_t ballots = 10000;
  std::uint64_t unbound = 2000;
  std::uint32_t max_rankings = 5;
  std::uint64_t seed = 1;
  std::vector<std::string> algorithms{"brute_force", "bnb_memo", "bnb_nomemo"};
};

int run_bench(const BenchArgs& a, rcv::SearchOptions opts, const std::string& out) {
  rcv::ElectionProfile p;
  if (!a.profile.empty()) {
    p = ProfileArgs{a.profile, a.meta}.load();
  } else {
    p = rcv::oracle::random_profile({a.candidates, a.ballots, a.unbound, a.max_rankings, a.seed});
  }
  std::string csv = "algorithm,n,bound,unbound,seconds,nodes,verify_calls,timed_out,orders\n";
  std::optional<std::vector<rcv::EliminationOrder>> reference;
  bool mismatch = false;
  for (const auto& alg : a.algorithms) {
    rcv::SearchReport r;
    if (alg == "brute_force") {
      r = rcv::brute_force_outcomes(p, opts);
    } else {
      opts.memoize = alg == "bnb_memo";
      r = rcv::enumerate_outcomes(p, opts);
    }
    csv += fmt::format("{},{},{},{},{},{},{},{},{}\n", alg, r.candidates.size(), p.bound_ballots.size(),
                       p.unbound_count, r.timed_out ? std::string("timeout") : fmt::format("{:.6f}", r.seconds),
                       r.nodes_expanded, r.verify_calls, r.timed_out ? 1 : 0, r.orders.size());
    if (r.timed_out) continue;
    if (!reference) reference = r.orders;
    else if (*reference != r.orders) mismatch = true;
  }
  write_out(out, csv);
  if (mismatch) {
    std::cerr << "error: algorithms disagree on the outcome set\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Possible winners of ranked-choice elections with outstanding ballots"};
  app.require_subcommand(1);

  ProfileArgs profile;
  rcv::SearchOptions opts;
  std::string out = "-";
  std::string tie_policy = "strict";

  auto* count = app.add_subcommand("count", "Standard round-by-round count (no unbound ballots)");
  add_profile_args(count, profile);
  count->add_option("--tie-policy", tie_policy, "strict or lowest-id")
      ->check(CLI::IsMember({"strict", "lowest-id"}));

  auto* outcomes = app.add_subcommand("outcomes", "Enumerate every still-possible elimination order");
  add_profile_args(outcomes, profile);
  add_search_args(outcomes, opts);
  outcomes->add_option("--out", out, "Report JSON path ('-' for stdout)");

  auto* minbound = app.add_subcommand("minbound", "Minimum unbound ballots each possible winner needs");
  add_profile_args(minbound, profile);
  add_search_args(minbound, opts);
  minbound->add_option("--out", out, "Report JSON path ('-' for stdout)");

  std::string report_path;
  std::string format = "dot";
  bool compress = false;
  auto* viz = app.add_subcommand("viz", "Render an outcomes report as a tree or compressed DAG");
  viz->add_option("report", report_path, "Report JSON from `outcomes`")->required()->check(CLI::ExistingFile);
  viz->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  viz->add_flag("--compress", compress, "Merge identical subtrees");
  viz->add_option("--out", out, "Output path ('-' for stdout)");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Time brute force against branch and bound");
  bench->add_option("--profile", bench_args.profile, "Profile to benchmark instead of a synthetic one");
  bench->add_option("--meta", bench_args.meta, "Sidecar metadata for a CSV profile");
  bench->add_option("--candidates", bench_args.candidates, "Synthetic: candidates")->check(CLI::Range(1, 64));
  bench->add_option("--ballots", bench_args.ballots, "Synthetic: bound ballots");
  bench->add_option("--unbound", bench_args.unbound, "Synthetic: unbound ballots");
  bench->add_option("--max-rankings", bench_args.max_rankings, "Synthetic: rankings per ballot")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_args.seed, "Synthetic: RNG seed");
  bench->add_option("--algorithms", bench_args.algorithms, "Subset of brute_force, bnb_memo, bnb_nomemo")
      ->check(CLI::IsMember({"brute_force", "bnb_memo", "bnb_nomemo"}));
  bench->add_option("--timeout-secs", opts.timeout_secs, "Per-algorithm budget")->check(CLI::PositiveNumber);
  bench->add_option("--out", out, "CSV path ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*count) return run_count(profile, tie_policy);
    if (*outcomes) return run_outcomes(profile, opts, out);
    if (*minbound) return run_minbound(profile, opts, out);
    if (*viz) return run_viz(report_path, format, compress, out);
    if (*bench) return run_bench(bench_args, opts, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
