#pragma once

#include <string>
#include <string_view>

#include "rcv/minbound.hpp"
#include "rcv/search.hpp"

namespace rcv {

/// Fields: candidates, possible_winners, orders, nodes_expanded, verify_calls,
/// timed_out, pruned_candidates, seconds. Orders hold candidate names.
std::string to_json(const SearchReport& report);

/// Inverse of to_json. Throws ParseError or UnknownCandidate.
SearchReport search_report_from_json(std::string_view text);

/// candidate name -> {min_ballots, fraction_of_unbound, witness}; possible winners only.
std::string to_json(const MinBoundReport& report);

}  // namespace rcv
