#pragma once

#include <span>
#include <vector>

#include "phylo/network.hpp"

namespace phylo {

// Partition of the tree nodes and reticulate nodes into connected components
// (edges with both endpoints of the same kind). Leaves and redundant nodes
// belong to no component.
struct Decomposition {
  static constexpr int kNone = -1;

  enum class ComponentKind { TreeNode, Reticulation };

  std::vector<int> component_of;     // size node_count(); kNone outside
  std::vector<ComponentKind> kinds;  // per component
  std::vector<NodeId> roots;         // per component, see below
  std::vector<int> member_off;       // rows of member_dat, one per component
  std::vector<NodeId> member_dat;    // members, each component sorted by id

  int tree_components = 0;         // p
  int reticulation_components = 0; // q

  int component_count() const { return static_cast<int>(kinds.size()); }
  std::span<const NodeId> members(int comp) const {
    return {member_dat.data() + member_off[comp],
            member_dat.data() + member_off[comp + 1]};
  }
};

// Components are numbered by smallest contained node id. A tree-node
// component's root is its unique member without a tree-node parent; a
// reticulation component's root is its unique member whose child lies
// outside the component (every other member sits above it).
Decomposition decompose(const Network& net);

// Component-count bound p - 1 <= q <= n + p - 1 for networks without
// redundant nodes; throws HasRedundantNodes otherwise.
bool check_component_bound(const Network& net, const Decomposition& d);

// A reticulation with no reticulate parent and no reticulate child.
bool is_isolated(const Network& net, NodeId r);

// True iff everything strictly below the tree-node component `component`
// (outside it) is a leaf, a redundant node, or an isolated reticulation.
bool is_exposed(const Network& net, const Decomposition& d, int component);

}  // namespace phylo
