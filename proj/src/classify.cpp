#include "phylo/classify.hpp"

#include <functional>

#include "phylo/compression.hpp"
#include "phylo/decomposition.hpp"

namespace phylo {

namespace {

// Each checker returns the first offending node (or a reason), empty on pass.

std::optional<std::string> binary_witness(const Network& net) {
  for (NodeId v = 0; v < net.node_count(); ++v) {
    switch (net.kind(v)) {
      case NodeKind::Reticulate:
        if (net.indegree(v) != 2)
          return "node " + net.name(v) + " has indegree " +
                 std::to_string(net.indegree(v));
        break;
      case NodeKind::Tree: {
        int out = net.outdegree(v);
        if (v == net.root() ? out > 2 : out != 2)
          return "node " + net.name(v) + " has outdegree " +
                 std::to_string(out);
        break;
      }
      default:
        break;
    }
  }
  return std::nullopt;
}

std::optional<std::string> tree_child_witness(const Network& net) {
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (net.is_leaf(v)) continue;
    bool ok = false;
    for (NodeId c : net.children(v))
      if (net.kind(c) != NodeKind::Reticulate) {
        ok = true;
        break;
      }
    if (!ok) return "node " + net.name(v) + " has only reticulate children";
  }
  return std::nullopt;
}

std::optional<std::string> reticulation_visible_witness(const Network& net) {
  std::vector<char> visible(net.node_count(), 0);
  for (NodeId v : visible_nodes(net)) visible[v] = 1;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    NodeKind k = net.kind(v);
    if ((k == NodeKind::Reticulate || k == NodeKind::Redundant) && !visible[v])
      return "node " + net.name(v) + " is not visible";
  }
  return std::nullopt;
}

std::optional<std::string> tree_sibling_witness(const Network& net) {
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (net.kind(v) != NodeKind::Reticulate) continue;
    bool ok = false;
    for (NodeId p : net.parents(v)) {
      for (NodeId c : net.children(p)) {
        if (c == v) continue;
        NodeKind k = net.kind(c);
        if (k == NodeKind::Tree || k == NodeKind::Leaf) {
          ok = true;
          break;
        }
      }
      if (ok) break;
    }
    if (!ok) return "node " + net.name(v) + " has no tree or leaf sibling";
  }
  return std::nullopt;
}

std::optional<std::string> galled_witness(const Network& net,
                                          const Decomposition& d) {
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (net.kind(v) != NodeKind::Reticulate) continue;
    int comp = Decomposition::kNone;
    for (NodeId p : net.parents(v)) {
      if (net.kind(p) != NodeKind::Tree)
        return "node " + net.name(v) + " has a non-tree parent " + net.name(p);
      if (comp == Decomposition::kNone)
        comp = d.component_of[p];
      else if (d.component_of[p] != comp)
        return "parents of node " + net.name(v) +
               " lie in different tree-node components";
    }
  }
  return std::nullopt;
}

// Exhaustive search over one-retained-parent-per-reticulation choices. A
// choice works iff no non-leaf node loses all of its out-edges.
bool tree_based_search(const Network& net) {
  std::vector<NodeId> rets;
  for (NodeId v = 0; v < net.node_count(); ++v)
    if (net.kind(v) == NodeKind::Reticulate) rets.push_back(v);
  std::vector<int> live_out(net.node_count());
  for (NodeId v = 0; v < net.node_count(); ++v) live_out[v] = net.outdegree(v);

  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == rets.size()) return true;
    NodeId r = rets[i];
    auto ps = net.parents(r);
    for (NodeId chosen : ps) {
      bool stranded = false;
      for (NodeId p : ps) {
        if (p == chosen) continue;
        if (--live_out[p] == 0) stranded = true;
      }
      if (!stranded && go(i + 1)) return true;
      for (NodeId p : ps)
        if (p != chosen) ++live_out[p];
    }
    return false;
  };
  return go(0);
}

std::optional<std::string> quasi_rv_witness(const Network& compressed) {
  return tree_child_witness(compressed);
}

std::optional<std::string> quasi_galled_witness(const Network& compressed) {
  for (NodeId v = 0; v < compressed.node_count(); ++v)
    if (compressed.kind(v) == NodeKind::Reticulate)
      return "compressed node " + compressed.name(v) + " is reticulate";
  return std::nullopt;
}

}  // namespace

bool is_binary(const Network& net) { return !binary_witness(net); }

bool is_tree_child(const Network& net) { return !tree_child_witness(net); }

bool is_reticulation_visible(const Network& net) {
  return !reticulation_visible_witness(net);
}

bool is_tree_sibling(const Network& net) { return !tree_sibling_witness(net); }

bool is_galled(const Network& net) {
  if (auto w = binary_witness(net))
    fail(ErrorCode::NotBinary, "galled is defined for binary networks: " + *w);
  Decomposition d = decompose(net);
  return !galled_witness(net, d);
}

bool is_tree_based(const Network& net) { return tree_based_search(net); }

bool is_quasi_reticulation_visible(const Network& net) {
  return !quasi_rv_witness(compress(net).compressed);
}

bool is_quasi_galled(const Network& net) {
  return !quasi_galled_witness(compress(net).compressed);
}

ClassificationReport classification_report(const Network& net) {
  ClassificationReport rep;
  auto note = [&rep](const char* flag, std::optional<std::string> witness) {
    if (witness) rep.witnesses[flag] = *witness;
    return !witness;
  };

  rep.binary = note("binary", binary_witness(net));
  rep.tree_child = note("tree_child", tree_child_witness(net));
  rep.reticulation_visible =
      note("reticulation_visible", reticulation_visible_witness(net));
  rep.tree_sibling = note("tree_sibling", tree_sibling_witness(net));
  if (rep.binary) {
    Decomposition d = decompose(net);
    rep.galled = note("galled", galled_witness(net, d));
  }
  rep.tree_based = tree_based_search(net);
  if (!rep.tree_based)
    rep.witnesses["tree_based"] =
        "every switching turns some internal node into a sink";
  CompressionResult cr = compress(net);
  rep.quasi_reticulation_visible =
      note("quasi_reticulation_visible", quasi_rv_witness(cr.compressed));
  rep.quasi_galled = note("quasi_galled", quasi_galled_witness(cr.compressed));
  return rep;
}

}  // namespace phylo
