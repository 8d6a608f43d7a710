#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "phylo/errors.hpp"

namespace phylo {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

struct Edge {
  NodeId parent = kNoNode;
  NodeId child = kNoNode;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Node roles in a rooted phylogenetic network. The root always counts as a
// tree node, whatever its outdegree.
enum class NodeKind { Tree, Reticulate, Redundant, Leaf };

const char* node_kind_name(NodeKind kind);

// A cluster is a set of taxa, kept sorted and duplicate-free.
using Cluster = std::vector<std::string>;

Cluster make_cluster(std::vector<std::string> taxa);

// Mutable edge/label soup used to assemble a network before validation.
// Nodes are keyed by name; duplicate edges collapse (edge-set semantics).
class RawDigraph {
 public:
  NodeId node(std::string_view name);
  void add_edge(std::string_view parent, std::string_view child);
  void set_label(std::string_view node_name, std::string_view taxon);

  std::size_t node_count() const { return names_.size(); }

 private:
  friend class Network;
  std::vector<std::string> names_;
  std::vector<std::string> labels_;  // empty string = unlabeled
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::unordered_map<std::string, NodeId> index_;
};

// Immutable rooted phylogenetic network. Construction validates every
// structural invariant: single root, acyclicity, the degree condition
// (every non-root node has indegree 1 or outdegree 1), leaves labeled
// bijectively, no parallel edges.
class Network {
 public:
  static Network validate(const RawDigraph& raw);

  // Assembles from parts already keyed by dense ids. `edges` must be
  // duplicate-free; names may repeat, labels must not.
  static Network from_parts(std::vector<std::string> names,
                            std::vector<std::string> labels,
                            std::vector<Edge> edges);

  NodeId root() const { return root_; }
  NodeId node_count() const { return static_cast<NodeId>(names_.size()); }
  std::int64_t edge_count() const { return edge_count_; }

  std::span<const NodeId> children(NodeId v) const;
  std::span<const NodeId> parents(NodeId v) const;
  int outdegree(NodeId v) const { return static_cast<int>(children(v).size()); }
  int indegree(NodeId v) const { return static_cast<int>(parents(v).size()); }

  NodeKind kind(NodeId v) const;
  bool is_leaf(NodeId v) const { return kind(v) == NodeKind::Leaf; }

  // Input name (synthesized if the source format had none) and taxon label
  // (empty for internal nodes).
  const std::string& name(NodeId v) const;
  const std::string& label(NodeId v) const;

  std::optional<NodeId> find_taxon(std::string_view taxon) const;
  // Leaf ids of an ascending taxon list in one merge pass; kNoNode where the
  // taxon is absent.
  std::vector<NodeId> find_taxa(const Cluster& sorted_taxa) const;
  // Name lookup for CLI addressing; throws on ambiguity.
  std::optional<NodeId> find_name(std::string_view name) const;

  const std::vector<std::string>& taxa() const { return taxa_; }
  const std::vector<NodeId>& leaves() const { return leaves_; }

  // Kahn order: parents precede children; deterministic for a fixed edge set.
  const std::vector<NodeId>& topological_order() const { return topo_; }

  std::vector<Edge> edges() const;

  void check_node(NodeId v) const;

 private:
  Network() = default;

  std::vector<std::string> names_;
  std::vector<std::string> labels_;
  // CSR adjacency, both directions, neighbor lists sorted by id.
  std::vector<std::int64_t> child_off_, parent_off_;
  std::vector<NodeId> child_dat_, parent_dat_;
  std::vector<NodeKind> kinds_;
  std::vector<NodeId> topo_;
  std::vector<NodeId> leaves_;
  std::vector<std::string> taxa_;          // sorted
  std::vector<NodeId> taxon_leaf_;         // leaf carrying taxa_[i]
  NodeId root_ = kNoNode;
  std::int64_t edge_count_ = 0;
};

// True iff there is a directed path of length >= 1 from x to y.
bool is_ancestor(const Network& net, NodeId x, NodeId y);

// True iff x is an ancestor of y and every root-to-y path passes through x.
// Decided by deleting x and testing root-to-y reachability.
bool is_dominator(const Network& net, NodeId x, NodeId y);

// All nodes that dominate at least one leaf, plus the leaves themselves.
// Computed from the immediate-dominator tree, one pass over a topological
// order; agrees with the deletion-based is_dominator on every network.
std::vector<NodeId> visible_nodes(const Network& net);

// Taxa of the leaves reachable from v (v itself if it is a leaf).
Cluster leaves_below(const Network& net, NodeId v);

// Leaf node-ids reachable from v, sorted.
std::vector<NodeId> leaf_ids_below(const Network& net, NodeId v);

// Nodes reachable from `from` (inclusive), as a mask sized node_count().
std::vector<char> reachable_from(const Network& net, NodeId from);

// Same, but traversal never enters `banned`.
std::vector<char> reachable_from_avoiding(const Network& net, NodeId from,
                                          NodeId banned);

}  // namespace phylo
