#pragma once

#include <optional>
#include <vector>

#include "phylo/decomposition.hpp"
#include "phylo/network.hpp"

namespace phylo {

// Node/edge subset of a network, used for image computations.
struct Subgraph {
  std::vector<NodeId> nodes;
  std::vector<Edge> edges;
};

// Quotient of a network: every tree-node component and every reticulation
// component collapses to a single node; degree-2 nodes and leaves survive.
struct CompressionResult {
  Network compressed;
  Decomposition decomposition;   // of the source network
  std::vector<NodeId> node_map;  // source node -> compressed node (total)
  std::vector<int> preimage_off;      // rows of preimage_dat per compressed node
  std::vector<NodeId> preimage_dat;

  // Source nodes behind one compressed node, ascending by id.
  std::span<const NodeId> preimage(NodeId compressed) const {
    return {preimage_dat.data() + preimage_off[compressed],
            preimage_dat.data() + preimage_off[compressed + 1]};
  }

  // Edge map: defined exactly when the endpoints land on distinct compressed
  // nodes (the edge does not lie inside a component).
  std::optional<Edge> edge_image(Edge e) const {
    NodeId a = node_map[e.parent];
    NodeId b = node_map[e.child];
    if (a == b) return std::nullopt;
    return Edge{a, b};
  }
};

CompressionResult compress(const Network& net);

// (f(nodes), g(edges)) with the edge map applied only where defined;
// duplicates removed.
Subgraph image_subgraph(const CompressionResult& cr, const Subgraph& sub);

// True iff all parents of reticulate node r lie in one tree-node component.
bool is_inner(const Network& net, const Decomposition& d, NodeId r);

}  // namespace phylo
