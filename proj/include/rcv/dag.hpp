#pragma once

// Elimination-order trees and their DAG compression.
//
// Every root-to-leaf path of the tree is one feasible elimination order; the
// node reached by an edge is labelled with the candidate eliminated there, so
// leaves carry winners. Compression merges subtrees with equal canonical
// serialization (own label, then child digests in ascending candidate order).

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcv/election.hpp"
#include "rcv/search.hpp"

namespace rcv::dag {

/// Rooted graph whose edges point to the node eliminated next.
struct Graph {
  struct Node {
    std::optional<CandidateId> label;  ///< empty for the root
    std::vector<std::size_t> children;  ///< ascending by child label
  };

  std::vector<std::string> candidates;
  std::vector<Node> nodes;
  std::size_t root = 0;

  std::size_t size() const { return nodes.size(); }
  std::size_t edge_count() const;
  bool is_winner(std::size_t i) const { return i != root && nodes[i].children.empty(); }

  /// Every root-to-leaf label sequence, sorted.
  std::vector<EliminationOrder> paths() const;
};

/// Prefix tree; nodes[0] is the root.
struct OutcomeTree : Graph {};

using Digest = std::array<std::uint8_t, 32>;

/// Compressed form; nodes are sorted by digest and no two share one.
struct OutcomeDag : Graph {
  std::vector<Digest> digests;
};

/// Throws EmptyOutcomeSet when there is nothing to draw.
OutcomeTree build_tree(const SearchReport& report);
OutcomeTree build_tree(const std::vector<std::string>& candidates, std::vector<EliminationOrder> orders);

OutcomeDag compress(const Graph& tree);

/// Canonical bytes hashed for node i given its children's digests.
std::string canonical_form(const Graph& g, std::size_t i, const std::vector<Digest>& child_digests);

enum class Format { dot, json };

/// Deterministic rendering; byte-identical for equal graphs.
std::string emit(const Graph& g, Format format);

/// Reads the JSON produced by emit() and recompresses it.
OutcomeDag load_json(std::string_view text);

/// "Eric L. Adams" -> "ELA"
std::string initials(std::string_view name);

}  // namespace rcv::dag
