#pragma once

#include <optional>
#include <span>
#include <vector>

#include "phylo/compression.hpp"
#include "phylo/network.hpp"

namespace phylo {

enum class Color { Red, Blue, Purple };

// Partial coloring of the compressed network: defined exactly on the
// non-reticulate nodes strictly below f(u).
struct Coloring {
  static constexpr int kUncolored = -1;
  std::vector<int> color_of;  // per compressed node; kUncolored or Color cast
  bool any_purple = false;

  bool colored(NodeId v) const { return color_of[v] != kUncolored; }
  Color color(NodeId v) const { return static_cast<Color>(color_of[v]); }
};

struct SccInstance {
  NodeId node = kNoNode;  // a tree node of the network under query
  Cluster cluster;        // nonempty subset of the taxon set
};

// Auxiliary network testing whether the red leaves are displayed at u.
// It may contain unlabeled sinks, so it is kept as a raw digraph, stored in
// compressed sparse rows to keep query-time allocation flat.
struct NPrime {
  std::vector<int> head;  // per-node offsets into adj; head.size() == size()+1
  std::vector<int> adj;
  int root = -1;
  int u = -1;
  std::vector<int> leaf_color;  // kUncolored, or Color::Red / Color::Blue cast
  std::vector<NodeId> origin;   // source/compressed node behind each id; fresh
                                // leaves carry their parent's origin

  int size() const { return static_cast<int>(head.size()) - 1; }
  std::span<const int> children(int v) const {
    return {adj.data() + head[v], adj.data() + head[v + 1]};
  }
};

// Compressed network minus the reticulate in-edges ruled out by the coloring.
struct NDoublePrime {
  std::vector<std::vector<NodeId>> children;  // over compressed node ids
  NodeId root = kNoNode;
  std::vector<Edge> removed;
};

// Exposed-component test on the source network: S below u, and no leaf
// outside S dominated by u.
bool solve_scc_exposed(const Network& net, const SccInstance& inst,
                       const Decomposition& d);

Coloring color_compression(const Network& net, const SccInstance& inst,
                           const CompressionResult& cr);

NPrime build_n_prime(const Network& net, const SccInstance& inst,
                     const CompressionResult& cr, const Coloring& col);

// Every red leaf below u, no blue leaf dominated by u.
bool n_prime_displays(const NPrime& np);

NDoublePrime build_n_double_prime(const Network& net, const SccInstance& inst,
                                  const CompressionResult& cr,
                                  const Coloring& col);

// The three-condition decision, with per-condition outcomes for reporting.
// Conditions are evaluated in order; later ones stay unset once the answer
// is decided.
struct SccConditions {
  bool purple_free = false;
  std::optional<bool> nprime;
  std::optional<bool> ndouble;
  bool answer = false;
};

SccConditions solve_scc_detailed(const Network& net, const SccInstance& inst);

bool solve_scc(const Network& net, const SccInstance& inst);

// First tree node (deepest first in the deterministic topological order)
// at which the cluster is displayed.
std::optional<NodeId> solve_cc(const Network& net, const Cluster& cluster);

}  // namespace phylo
