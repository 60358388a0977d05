#include "rcv/dag.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "rcv/errors.hpp"

namespace rcv::dag {

namespace {

Digest sha256(std::string_view bytes) {
  Digest d{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), d.data(), &len, EVP_sha256(), nullptr) != 1 || len != d.size())
    throw Error("SHA-256 digest failed");
  return d;
}

void walk(const Graph& g, std::size_t i, std::vector<CandidateId>& path, std::vector<EliminationOrder>& out) {
  const auto& node = g.nodes[i];
  if (node.label) path.push_back(*node.label);
  if (node.children.empty()) {
    if (!path.empty()) out.push_back(EliminationOrder{path});
  } else {
    for (std::size_t c : node.children) walk(g, c, path, out);
  }
  if (node.label) path.pop_back();
}

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out;
}

}  // namespace

std::size_t Graph::edge_count() const {
  std::size_t e = 0;
  for (const auto& n : nodes) e += n.children.size();
  return e;
}

std::vector<EliminationOrder> Graph::paths() const {
  std::vector<EliminationOrder> out;
  std::vector<CandidateId> path;
  if (!nodes.empty()) walk(*this, root, path, out);
  std::sort(out.begin(), out.end());
  return out;
}

OutcomeTree build_tree(const std::vector<std::string>& candidates, std::vector<EliminationOrder> orders) {
  if (orders.empty()) throw EmptyOutcomeSet("no feasible elimination orders to draw");
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());

  OutcomeTree t;
  t.candidates = candidates;
  t.nodes.emplace_back();
  // Sorted input means a child with a given label, if present, is the last one added.
  for (const auto& o : orders) {
    std::size_t cur = 0;
    for (CandidateId c : o.sequence) {
      if (index(c) >= candidates.size()) throw InconsistentInput(fmt::format("unknown candidate id {}", index(c)));
      auto& kids = t.nodes[cur].children;
      if (!kids.empty() && t.nodes[kids.back()].label == c) {
        cur = kids.back();
      } else {
        t.nodes.push_back(Graph::Node{c, {}});
        const std::size_t id = t.nodes.size() - 1;
        t.nodes[cur].children.push_back(id);
        cur = id;
      }
    }
  }
  return t;
}

OutcomeTree build_tree(const SearchReport& report) { return build_tree(report.candidates, report.orders); }

std::string canonical_form(const Graph& g, std::size_t i, const std::vector<Digest>& child_digests) {
  std::string s;
  const auto& node = g.nodes[i];
  if (node.label) s += fmt::format("L{}", index(*node.label));
  else s += "R";
  s.push_back('(');
  for (const auto& d : child_digests) s.append(reinterpret_cast<const char*>(d.data()), d.size());
  s.push_back(')');
  return s;
}

OutcomeDag compress(const Graph& g) {
  OutcomeDag out;
  out.candidates = g.candidates;
  if (g.nodes.empty()) return out;

  // Post-order without recursion; a DAG input is fine too (memoized by node).
  std::vector<std::optional<Digest>> digest(g.nodes.size());
  std::map<Digest, std::size_t> slot;  // digest -> unsorted dag index
  std::vector<Graph::Node> unsorted;
  std::vector<Digest> unsorted_digest;
  std::vector<std::size_t> dag_of(g.nodes.size());
  std::vector<bool> open(g.nodes.size(), false);
  std::vector<std::pair<std::size_t, bool>> stack{{g.root, false}};
  while (!stack.empty()) {
    auto [i, ready] = stack.back();
    stack.pop_back();
    if (digest[i]) continue;
    if (!ready) {
      open[i] = true;
      stack.emplace_back(i, true);
      for (std::size_t c : g.nodes[i].children) {
        if (open[c]) throw InconsistentInput("graph has a cycle");
        if (!digest[c]) stack.emplace_back(c, false);
      }
      continue;
    }
    open[i] = false;
    std::vector<std::size_t> kids = g.nodes[i].children;
    std::sort(kids.begin(), kids.end(), [&](std::size_t a, std::size_t b) {
      return index(*g.nodes[a].label) < index(*g.nodes[b].label);
    });
    std::vector<Digest> kd;
    for (std::size_t c : kids) kd.push_back(*digest[c]);
    const Digest d = sha256(canonical_form(g, i, kd));
    digest[i] = d;
    auto [it, inserted] = slot.emplace(d, unsorted.size());
    if (inserted) {
      Graph::Node n{g.nodes[i].label, {}};
      for (std::size_t c : kids) n.children.push_back(dag_of[c]);
      unsorted.push_back(std::move(n));
      unsorted_digest.push_back(d);
    }
    dag_of[i] = it->second;
  }

  // std::map iterates in digest order, which is the final node order.
  std::vector<std::size_t> rank(unsorted.size());
  std::size_t r = 0;
  for (const auto& [d, u] : slot) rank[u] = r++;
  out.nodes.resize(unsorted.size());
  out.digests.resize(unsorted.size());
  for (std::size_t u = 0; u < unsorted.size(); ++u) {
    auto& n = out.nodes[rank[u]];
    n.label = unsorted[u].label;
    for (std::size_t c : unsorted[u].children) n.children.push_back(rank[c]);
    out.digests[rank[u]] = unsorted_digest[u];
  }
  out.root = rank[dag_of[g.root]];
  return out;
}

std::string initials(std::string_view name) {
  std::string out;
  bool start = true;
  for (char ch : name) {
    const auto u = static_cast<unsigned char>(ch);
    if (std::isspace(u) || ch == '-' || ch == '.') {
      start = true;
    } else if (start) {
      out.push_back(static_cast<char>(std::toupper(u)));
      start = false;
    }
  }
  return out.empty() ? std::string(name) : out;
}

std::string emit(const Graph& g, Format format) {
  if (format == Format::json) {
    nlohmann::ordered_json j;
    j["candidates"] = g.candidates;
    j["root"] = g.root;
    auto nodes = nlohmann::ordered_json::array();
    auto edges = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const auto& n = g.nodes[i];
      nodes.push_back({{"id", i},
                       {"label", n.label ? g.candidates.at(index(*n.label)) : std::string("start")},
                       {"is_winner", g.is_winner(i)}});
      for (std::size_t c : n.children)
        edges.push_back({{"from", i}, {"to", c}, {"label", g.candidates.at(index(*g.nodes[c].label))}});
    }
    j["nodes"] = std::move(nodes);
    j["edges"] = std::move(edges);
    return j.dump(2) + "\n";
  }

  std::ostringstream os;
  os << "digraph outcomes {\n  rankdir=TB;\n  node [shape=circle];\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    if (!n.label) {
      os << "  n" << i << " [label=\"start\", shape=box];\n";
    } else {
      os << "  n" << i << " [label=\"" << dot_escape(initials(g.candidates.at(index(*n.label)))) << "\"";
      if (g.is_winner(i)) os << ", shape=doublecircle, style=filled, fillcolor=\"#cde8c4\"";
      os << "];\n";
    }
  }
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    for (std::size_t c : g.nodes[i].children)
      os << "  n" << i << " -> n" << c << " [label=\"" << dot_escape(g.candidates.at(index(*g.nodes[c].label)))
         << "\"];\n";
  os << "}\n";
  return os.str();
}

OutcomeDag load_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("graph JSON: {}", e.what()));
  }
  try {
    Graph g;
    g.candidates = j.at("candidates").get<std::vector<std::string>>();
    g.root = j.at("root").get<std::size_t>();
    const auto& nodes = j.at("nodes");
    g.nodes.resize(nodes.size());
    for (const auto& n : nodes) {
      const auto id = n.at("id").get<std::size_t>();
      if (id >= g.nodes.size()) throw ParseError(fmt::format("node id {} out of range", id));
      if (id == g.root) continue;
      const auto label = n.at("label").get<std::string>();
      auto it = std::find(g.candidates.begin(), g.candidates.end(), label);
      if (it == g.candidates.end()) throw UnknownCandidate(fmt::format("graph node label '{}'", label));
      g.nodes[id].label = candidate(static_cast<std::size_t>(it - g.candidates.begin()));
    }
    for (const auto& e : j.at("edges")) {
      const auto from = e.at("from").get<std::size_t>();
      const auto to = e.at("to").get<std::size_t>();
      if (from >= g.nodes.size() || to >= g.nodes.size() || to == g.root)
        throw ParseError(fmt::format("bad edge {} -> {}", from, to));
      g.nodes[from].children.push_back(to);
    }
    if (g.root >= g.nodes.size()) throw ParseError("root out of range");
    return compress(g);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("graph JSON: {}", e.what()));
  }
}

}  // namespace rcv::dag
