#include "rcv/report_json.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "rcv/errors.hpp"

namespace rcv {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json names(const std::vector<std::string>& table, const std::vector<CandidateId>& ids) {
  auto a = ordered_json::array();
  for (CandidateId c : ids) a.push_back(table.at(index(c)));
  return a;
}

}  // namespace

std::string to_json(const SearchReport& report) {
  ordered_json j;
  j["candidates"] = report.candidates;
  j["possible_winners"] = report.winner_names();
  auto orders = ordered_json::array();
  for (const auto& o : report.orders) orders.push_back(names(report.candidates, o.sequence));
  j["orders"] = std::move(orders);
  j["nodes_expanded"] = report.nodes_expanded;
  j["verify_calls"] = report.verify_calls;
  j["timed_out"] = report.timed_out;
  j["pruned_candidates"] = report.pruned_candidates;
  j["seconds"] = report.seconds;
  return j.dump(2) + "\n";
}

SearchReport search_report_from_json(std::string_view text) {
  SearchReport r;
  try {
    const auto j = nlohmann::json::parse(text);
    r.candidates = j.at("candidates").get<std::vector<std::string>>();
    auto lookup = [&](const std::string& name) {
      auto it = std::find(r.candidates.begin(), r.candidates.end(), name);
      if (it == r.candidates.end()) throw UnknownCandidate(fmt::format("'{}' is not in the report's candidates", name));
      return candidate(static_cast<std::size_t>(it - r.candidates.begin()));
    };
    for (const auto& o : j.at("orders")) {
      EliminationOrder order;
      for (const auto& name : o) order.sequence.push_back(lookup(name.get<std::string>()));
      if (!order.complete(r.candidates.size()))
        throw ParseError(fmt::format("order of length {} for {} candidates", order.size(), r.candidates.size()));
      r.orders.push_back(std::move(order));
    }
    std::sort(r.orders.begin(), r.orders.end());
    for (const auto& o : r.orders) r.possible_winners.insert(o.winner());
    r.nodes_expanded = j.value("nodes_expanded", std::uint64_t{0});
    r.verify_calls = j.value("verify_calls", std::uint64_t{0});
    r.timed_out = j.value("timed_out", false);
    r.pruned_candidates = j.value("pruned_candidates", std::vector<std::string>{});
    r.seconds = j.value("seconds", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("report JSON: {}", e.what()));
  }
  return r;
}

std::string to_json(const MinBoundReport& report) {
  ordered_json j = ordered_json::object();
  for (std::size_t i = 0; i < report.per_candidate.size(); ++i) {
    const auto& e = report.per_candidate[i];
    if (!e) continue;
    j[report.candidates[i]] = {{"min_ballots", e->min_ballots},
                               {"fraction_of_unbound", e->fraction_of_unbound},
                               {"witness", names(report.candidates, e->witness.sequence)}};
  }
  return j.dump(2) + "\n";
}

}  // namespace rcv
