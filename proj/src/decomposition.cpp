#include "phylo/decomposition.hpp"

#include <algorithm>
#include <numeric>

namespace phylo {

namespace {

struct UnionFind {
  std::vector<NodeId> parent;

  explicit UnionFind(NodeId n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  NodeId find(NodeId v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }

  void unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);  // keep the smallest id as representative
    parent[b] = a;
  }
};

bool same_kind_edge(NodeKind k) {
  return k == NodeKind::Tree || k == NodeKind::Reticulate;
}

}  // namespace

Decomposition decompose(const Network& net) {
  const NodeId n = net.node_count();
  UnionFind uf(n);
  // Every tree-tree edge is some tree node's unique in-edge, and every
  // reticulate-reticulate edge is some reticulation's unique out-edge, so one
  // link per node covers all same-kind edges.
  for (NodeId v = 0; v < n; ++v) {
    NodeKind k = net.kind(v);
    if (k == NodeKind::Tree) {
      if (v == net.root()) continue;
      NodeId p = net.parents(v).front();
      if (net.kind(p) == NodeKind::Tree) uf.unite(v, p);
    } else if (k == NodeKind::Reticulate) {
      NodeId c = net.children(v).front();
      if (net.kind(c) == NodeKind::Reticulate) uf.unite(v, c);
    }
  }

  Decomposition d;
  d.component_of.assign(n, Decomposition::kNone);

  // Representatives are minimal ids, so scanning ids ascending yields the
  // required smallest-contained-id component order.
  std::vector<int> comp_of_rep(n, Decomposition::kNone);
  for (NodeId v = 0; v < n; ++v) {
    NodeKind k = net.kind(v);
    if (!same_kind_edge(k)) continue;
    NodeId rep = uf.find(v);
    if (comp_of_rep[rep] == Decomposition::kNone) {
      comp_of_rep[rep] = d.component_count();
      d.kinds.push_back(k == NodeKind::Tree
                            ? Decomposition::ComponentKind::TreeNode
                            : Decomposition::ComponentKind::Reticulation);
    }
    d.component_of[v] = comp_of_rep[rep];
  }

  // Members in flat rows; ids ascend within each row by construction.
  d.member_off.assign(d.component_count() + 1, 0);
  for (NodeId v = 0; v < n; ++v)
    if (d.component_of[v] != Decomposition::kNone)
      ++d.member_off[d.component_of[v] + 1];
  for (int c = 0; c < d.component_count(); ++c)
    d.member_off[c + 1] += d.member_off[c];
  d.member_dat.resize(d.member_off.back());
  {
    std::vector<int> pos(d.member_off.begin(), d.member_off.end() - 1);
    for (NodeId v = 0; v < n; ++v)
      if (d.component_of[v] != Decomposition::kNone)
        d.member_dat[pos[d.component_of[v]]++] = v;
  }

  d.roots.assign(d.component_count(), kNoNode);
  for (int comp = 0; comp < d.component_count(); ++comp) {
    for (NodeId v : d.members(comp)) {
      bool is_root;
      if (d.kinds[comp] == Decomposition::ComponentKind::TreeNode) {
        // Topmost member: no parent inside the component.
        is_root = true;
        for (NodeId p : net.parents(v))
          if (d.component_of[p] == comp) is_root = false;
      } else {
        // Lowest member: its unique child leaves the component.
        is_root = d.component_of[net.children(v).front()] != comp;
      }
      if (is_root) {
        d.roots[comp] = v;
        break;
      }
    }
    if (d.kinds[comp] == Decomposition::ComponentKind::TreeNode)
      ++d.tree_components;
    else
      ++d.reticulation_components;
  }
  return d;
}

bool check_component_bound(const Network& net, const Decomposition& d) {
  for (NodeId v = 0; v < net.node_count(); ++v)
    if (net.kind(v) == NodeKind::Redundant)
      fail(ErrorCode::HasRedundantNodes,
           "component bound assumes no redundant nodes; found " + net.name(v));
  const long long p = d.tree_components;
  const long long q = d.reticulation_components;
  const long long n = static_cast<long long>(net.leaves().size());
  return p - 1 <= q && q <= n + p - 1;
}

bool is_isolated(const Network& net, NodeId r) {
  if (net.kind(r) != NodeKind::Reticulate)
    fail(ErrorCode::NotReticulate, "node " + net.name(r) + " is not reticulate");
  for (NodeId p : net.parents(r))
    if (net.kind(p) == NodeKind::Reticulate) return false;
  return net.kind(net.children(r).front()) != NodeKind::Reticulate;
}

bool is_exposed(const Network& net, const Decomposition& d, int component) {
  if (component < 0 || component >= d.component_count() ||
      d.kinds[component] != Decomposition::ComponentKind::TreeNode)
    fail(ErrorCode::NotTreeComponent,
         "component " + std::to_string(component) + " is not a tree-node component");

  std::vector<char> seen(net.node_count(), 0);
  std::vector<NodeId> stack;
  for (NodeId v : d.members(component)) {
    seen[v] = 1;
    stack.push_back(v);
  }
  bool ok = true;
  while (!stack.empty() && ok) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId c : net.children(v)) {
      if (seen[c]) continue;
      seen[c] = 1;
      switch (net.kind(c)) {
        case NodeKind::Leaf:
        case NodeKind::Redundant:
          break;
        case NodeKind::Reticulate:
          if (!is_isolated(net, c)) ok = false;
          break;
        case NodeKind::Tree:
          ok = false;
          break;
      }
      if (!ok) break;
      stack.push_back(c);
    }
  }
  return ok;
}

}  // namespace phylo
