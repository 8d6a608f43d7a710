#include "phylo/compression.hpp"

#include <algorithm>
#include <string>

namespace phylo {

CompressionResult compress(const Network& net) {
  Decomposition d = decompose(net);
  const NodeId n = net.node_count();
  const int comps = d.component_count();

  // Compressed ids: components first (in component-id order), then the
  // surviving degree-2 nodes and leaves in source-id order.
  std::vector<NodeId> node_map(n, kNoNode);
  std::vector<int> preimage_off(d.member_off);
  std::vector<NodeId> preimage_dat(d.member_dat);

  const std::size_t nbar_nodes =
      comps + (static_cast<std::size_t>(n) - d.member_dat.size());
  std::vector<std::string> names;
  std::vector<std::string> labels;
  names.reserve(nbar_nodes);
  labels.reserve(nbar_nodes);
  preimage_dat.reserve(n);
  preimage_off.reserve(nbar_nodes + 1);
  int tree_seq = 0, ret_seq = 0;
  for (int c = 0; c < comps; ++c) {
    bool tree = d.kinds[c] == Decomposition::ComponentKind::TreeNode;
    names.push_back((tree ? "tau" : "sigma") +
                    std::to_string(tree ? tree_seq++ : ret_seq++));
    labels.emplace_back();
  }
  for (NodeId v = 0; v < n; ++v) {
    if (d.component_of[v] != Decomposition::kNone) {
      node_map[v] = d.component_of[v];
      continue;
    }
    node_map[v] = static_cast<NodeId>(names.size());
    names.push_back(net.name(v));
    labels.push_back(net.label(v));
    preimage_dat.push_back(v);
    preimage_off.push_back(static_cast<int>(preimage_dat.size()));
  }

  std::vector<Edge> edges;
  edges.reserve(net.edge_count());
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId c : net.children(v)) {
      NodeKind kv = net.kind(v), kc = net.kind(c);
      if (kv == NodeKind::Tree && kc == NodeKind::Tree) continue;
      if (kv == NodeKind::Reticulate && kc == NodeKind::Reticulate) continue;
      edges.push_back({node_map[v], node_map[c]});
    }
  }
  CompressionResult cr{Network::from_parts(std::move(names), std::move(labels),
                                           std::move(edges)),
                       std::move(d), std::move(node_map),
                       std::move(preimage_off), std::move(preimage_dat)};
  return cr;
}

Subgraph image_subgraph(const CompressionResult& cr, const Subgraph& sub) {
  Subgraph out;
  out.nodes.reserve(sub.nodes.size());
  for (NodeId v : sub.nodes) out.nodes.push_back(cr.node_map[v]);
  std::sort(out.nodes.begin(), out.nodes.end());
  out.nodes.erase(std::unique(out.nodes.begin(), out.nodes.end()),
                  out.nodes.end());
  for (Edge e : sub.edges)
    if (auto img = cr.edge_image(e)) out.edges.push_back(*img);
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()),
                  out.edges.end());
  return out;
}

bool is_inner(const Network& net, const Decomposition& d, NodeId r) {
  net.check_node(r);
  if (net.kind(r) != NodeKind::Reticulate)
    fail(ErrorCode::NotReticulate, "node " + net.name(r) + " is not reticulate");
  int comp = Decomposition::kNone;
  for (NodeId p : net.parents(r)) {
    if (net.kind(p) != NodeKind::Tree) return false;
    if (comp == Decomposition::kNone)
      comp = d.component_of[p];
    else if (d.component_of[p] != comp)
      return false;
  }
  return true;
}

}  // namespace phylo
