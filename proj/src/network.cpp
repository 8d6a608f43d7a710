#include "phylo/network.hpp"

#include <algorithm>

namespace phylo {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::CyclicGraph: return "CyclicGraph";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::MultipleRoots: return "MultipleRoots";
    case ErrorCode::DegreeViolation: return "DegreeViolation";
    case ErrorCode::DuplicateTaxon: return "DuplicateTaxon";
    case ErrorCode::UnlabeledLeaf: return "UnlabeledLeaf";
    case ErrorCode::LabeledInternalNode: return "LabeledInternalNode";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::UnknownTaxon: return "UnknownTaxon";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownHybridReference: return "UnknownHybridReference";
    case ErrorCode::NotReticulate: return "NotReticulate";
    case ErrorCode::NotTreeNode: return "NotTreeNode";
    case ErrorCode::NotTreeComponent: return "NotTreeComponent";
    case ErrorCode::NotBinary: return "NotBinary";
    case ErrorCode::NotQuasiRV: return "NotQuasiRV";
    case ErrorCode::HasRedundantNodes: return "HasRedundantNodes";
    case ErrorCode::ComponentNotExposed: return "ComponentNotExposed";
    case ErrorCode::EmptyCluster: return "EmptyCluster";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
  }
  return "Error";
}

const char* node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Tree: return "tree";
    case NodeKind::Reticulate: return "reticulate";
    case NodeKind::Redundant: return "redundant";
    case NodeKind::Leaf: return "leaf";
  }
  return "?";
}

namespace {

// First label bytes packed big-endian: compares resolve on the key for all
// but near-equal strings, keeping large sorts off the heap.
std::uint64_t label_prefix_key(const std::string& s) {
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < 8 && i < s.size(); ++i)
    k |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[i]))
         << (56 - 8 * i);
  return k;
}

}  // namespace

Cluster make_cluster(std::vector<std::string> taxa) {
  std::vector<std::pair<std::uint64_t, std::size_t>> keyed;
  keyed.reserve(taxa.size());
  for (std::size_t i = 0; i < taxa.size(); ++i)
    keyed.emplace_back(label_prefix_key(taxa[i]), i);
  std::sort(keyed.begin(), keyed.end(),
            [&](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first < b.first;
              return taxa[a.second] < taxa[b.second];
            });
  Cluster out;
  out.reserve(taxa.size());
  for (const auto& [k, i] : keyed) {
    if (!out.empty() && out.back() == taxa[i]) continue;
    out.push_back(std::move(taxa[i]));
  }
  return out;
}

NodeId RawDigraph::node(std::string_view name) {
  auto it = index_.find(std::string(name));
  if (it != index_.end()) return it->second;
  NodeId id = static_cast<NodeId>(names_.size());
  names_.emplace_back(name);
  labels_.emplace_back();
  index_.emplace(std::string(name), id);
  return id;
}

void RawDigraph::add_edge(std::string_view parent, std::string_view child) {
  NodeId p = node(parent);
  NodeId c = node(child);
  edges_.emplace_back(p, c);
}

void RawDigraph::set_label(std::string_view node_name, std::string_view taxon) {
  labels_[node(node_name)] = std::string(taxon);
}

Network Network::validate(const RawDigraph& raw) {
  std::vector<Edge> edges;
  edges.reserve(raw.edges_.size());
  for (auto [p, c] : raw.edges_) edges.push_back({p, c});
  return from_parts(raw.names_, raw.labels_, std::move(edges));
}

Network Network::from_parts(std::vector<std::string> names,
                            std::vector<std::string> labels,
                            std::vector<Edge> edges) {
  const NodeId n = static_cast<NodeId>(names.size());
  if (n == 0) fail(ErrorCode::NoRoot, "empty network");
  labels.resize(n);

  for (const Edge& e : edges) {
    if (e.parent < 0 || e.parent >= n || e.child < 0 || e.child >= n)
      fail(ErrorCode::UnknownNode, "edge endpoint out of range");
    if (e.parent == e.child)
      fail(ErrorCode::CyclicGraph, "self-loop at node " + names[e.parent]);
  }
  // Counting-radix by (parent, child): keeps construction linear, and the
  // CSR fill below then emits every adjacency list already sorted.
  {
    std::vector<Edge> tmp(edges.size());
    std::vector<std::int64_t> cnt(static_cast<std::size_t>(n) + 1, 0);
    for (const Edge& e : edges) ++cnt[e.child + 1];
    for (NodeId v = 0; v < n; ++v) cnt[v + 1] += cnt[v];
    for (const Edge& e : edges) tmp[cnt[e.child]++] = e;
    cnt.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const Edge& e : tmp) ++cnt[e.parent + 1];
    for (NodeId v = 0; v < n; ++v) cnt[v + 1] += cnt[v];
    for (const Edge& e : tmp) edges[cnt[e.parent]++] = e;
  }
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Network net;
  net.names_ = std::move(names);
  net.labels_ = std::move(labels);
  net.edge_count_ = static_cast<std::int64_t>(edges.size());

  // CSR in both directions; `edges` is sorted by (parent, child) already.
  net.child_off_.assign(n + 1, 0);
  net.parent_off_.assign(n + 1, 0);
  for (const Edge& e : edges) {
    ++net.child_off_[e.parent + 1];
    ++net.parent_off_[e.child + 1];
  }
  for (NodeId v = 0; v < n; ++v) {
    net.child_off_[v + 1] += net.child_off_[v];
    net.parent_off_[v + 1] += net.parent_off_[v];
  }
  net.child_dat_.resize(edges.size());
  net.parent_dat_.resize(edges.size());
  {
    std::vector<std::int64_t> cpos(net.child_off_.begin(), net.child_off_.end() - 1);
    std::vector<std::int64_t> ppos(net.parent_off_.begin(), net.parent_off_.end() - 1);
    for (const Edge& e : edges) {
      net.child_dat_[cpos[e.parent]++] = e.child;
      net.parent_dat_[ppos[e.child]++] = e.parent;
    }
  }
  // Edges arrive sorted by (parent, child), so both the per-parent child
  // lists and the per-child parent lists come out ascending as filled.

  // Topological order first: it doubles as the cycle check. A plain stack
  // keeps the order deterministic without a heap's log factor.
  {
    std::vector<std::int32_t> pending(n);
    std::vector<NodeId> ready;
    for (NodeId v = 0; v < n; ++v) {
      pending[v] = static_cast<std::int32_t>(net.parent_off_[v + 1] - net.parent_off_[v]);
      if (pending[v] == 0) ready.push_back(v);
    }
    net.topo_.reserve(n);
    while (!ready.empty()) {
      NodeId v = ready.back();
      ready.pop_back();
      net.topo_.push_back(v);
      for (NodeId c : net.children(v))
        if (--pending[c] == 0) ready.push_back(c);
    }
    if (static_cast<NodeId>(net.topo_.size()) != n) {
      for (NodeId v = 0; v < n; ++v)
        if (pending[v] > 0)
          fail(ErrorCode::CyclicGraph, "cycle through node " + net.names_[v]);
    }
  }

  // Exactly one source, and it is the root.
  for (NodeId v = 0; v < n; ++v) {
    if (net.indegree(v) == 0) {
      if (net.root_ != kNoNode)
        fail(ErrorCode::MultipleRoots,
             "both " + net.names_[net.root_] + " and " + net.names_[v] +
                 " have indegree 0");
      net.root_ = v;
    }
  }
  if (net.root_ == kNoNode) fail(ErrorCode::NoRoot, "no node of indegree 0");
  if (net.outdegree(net.root_) == 0)
    fail(ErrorCode::DegreeViolation,
         "root " + net.names_[net.root_] + " has outdegree 0");

  net.kinds_.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    const int din = net.indegree(v);
    const int dout = net.outdegree(v);
    if (v == net.root_) {
      net.kinds_[v] = NodeKind::Tree;
      continue;
    }
    if (din != 1 && dout != 1)
      fail(ErrorCode::DegreeViolation,
           "node " + net.names_[v] + " has indegree " + std::to_string(din) +
               " and outdegree " + std::to_string(dout));
    if (dout == 0)
      net.kinds_[v] = NodeKind::Leaf;
    else if (din >= 2)
      net.kinds_[v] = NodeKind::Reticulate;
    else if (dout == 1)
      net.kinds_[v] = NodeKind::Redundant;
    else
      net.kinds_[v] = NodeKind::Tree;
  }

  for (NodeId v = 0; v < n; ++v) {
    const bool leaf = net.kinds_[v] == NodeKind::Leaf;
    const std::string& label = net.labels_[v];
    if (leaf && label.empty())
      fail(ErrorCode::UnlabeledLeaf, "leaf node " + net.names_[v] + " has no taxon");
    if (!leaf && !label.empty())
      fail(ErrorCode::LabeledInternalNode,
           "non-leaf node " + net.names_[v] + " carries taxon " + label);
    if (leaf) net.leaves_.push_back(v);
  }
  // Taxon lookup by binary search over the sorted taxa; sorting leaf ids by
  // label costs one sort and doubles as the bijectivity check. Packing the
  // first label bytes next to the id keeps most comparisons off the strings.
  {
    std::vector<std::pair<std::uint64_t, NodeId>> keyed;
    keyed.reserve(net.leaves_.size());
    for (NodeId l : net.leaves_)
      keyed.emplace_back(label_prefix_key(net.labels_[l]), l);
    std::sort(keyed.begin(), keyed.end(),
              [&](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first < b.first;
                return net.labels_[a.second] < net.labels_[b.second];
              });
    net.taxon_leaf_.reserve(keyed.size());
    for (const auto& [k, l] : keyed) net.taxon_leaf_.push_back(l);
  }
  net.taxa_.reserve(net.taxon_leaf_.size());
  for (NodeId l : net.taxon_leaf_) net.taxa_.push_back(net.labels_[l]);
  for (std::size_t i = 1; i < net.taxa_.size(); ++i)
    if (net.taxa_[i - 1] == net.taxa_[i])
      fail(ErrorCode::DuplicateTaxon,
           "taxon " + net.taxa_[i] + " labels two leaves");
  return net;
}

std::span<const NodeId> Network::children(NodeId v) const {
  return {child_dat_.data() + child_off_[v],
          static_cast<std::size_t>(child_off_[v + 1] - child_off_[v])};
}

std::span<const NodeId> Network::parents(NodeId v) const {
  return {parent_dat_.data() + parent_off_[v],
          static_cast<std::size_t>(parent_off_[v + 1] - parent_off_[v])};
}

NodeKind Network::kind(NodeId v) const {
  check_node(v);
  return kinds_[v];
}

const std::string& Network::name(NodeId v) const {
  check_node(v);
  return names_[v];
}

const std::string& Network::label(NodeId v) const {
  check_node(v);
  return labels_[v];
}

std::optional<NodeId> Network::find_taxon(std::string_view taxon) const {
  auto it = std::lower_bound(taxa_.begin(), taxa_.end(), taxon);
  if (it == taxa_.end() || *it != taxon) return std::nullopt;
  return taxon_leaf_[static_cast<std::size_t>(it - taxa_.begin())];
}

std::vector<NodeId> Network::find_taxa(const Cluster& sorted_taxa) const {
  std::vector<NodeId> out(sorted_taxa.size(), kNoNode);
  std::size_t j = 0;
  for (std::size_t i = 0; i < sorted_taxa.size(); ++i) {
    while (j < taxa_.size() && taxa_[j] < sorted_taxa[i]) ++j;
    if (j < taxa_.size() && taxa_[j] == sorted_taxa[i]) out[i] = taxon_leaf_[j];
  }
  return out;
}

std::optional<NodeId> Network::find_name(std::string_view name) const {
  NodeId found = kNoNode;
  for (NodeId v = 0; v < node_count(); ++v) {
    if (names_[v] == name) {
      if (found != kNoNode)
        fail(ErrorCode::UnknownNode, "node name " + std::string(name) + " is ambiguous");
      found = v;
    }
  }
  if (found == kNoNode) return std::nullopt;
  return found;
}

std::vector<Edge> Network::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (NodeId v = 0; v < node_count(); ++v)
    for (NodeId c : children(v)) out.push_back({v, c});
  return out;
}

void Network::check_node(NodeId v) const {
  if (v < 0 || v >= node_count())
    fail(ErrorCode::UnknownNode, "node id " + std::to_string(v) + " out of range");
}

bool is_ancestor(const Network& net, NodeId x, NodeId y) {
  net.check_node(x);
  net.check_node(y);
  if (x == y) return false;
  std::vector<char> seen(net.node_count(), 0);
  std::vector<NodeId> stack{x};
  seen[x] = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId c : net.children(v)) {
      if (c == y) return true;
      if (!seen[c]) {
        seen[c] = 1;
        stack.push_back(c);
      }
    }
  }
  return false;
}

std::vector<char> reachable_from(const Network& net, NodeId from) {
  std::vector<char> seen(net.node_count(), 0);
  std::vector<NodeId> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId c : net.children(v))
      if (!seen[c]) {
        seen[c] = 1;
        stack.push_back(c);
      }
  }
  return seen;
}

std::vector<char> reachable_from_avoiding(const Network& net, NodeId from,
                                          NodeId banned) {
  std::vector<char> seen(net.node_count(), 0);
  if (from == banned) return seen;
  std::vector<NodeId> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId c : net.children(v))
      if (c != banned && !seen[c]) {
        seen[c] = 1;
        stack.push_back(c);
      }
  }
  return seen;
}

bool is_dominator(const Network& net, NodeId x, NodeId y) {
  net.check_node(x);
  net.check_node(y);
  if (x == y) return false;
  if (x == net.root()) return true;
  auto seen = reachable_from_avoiding(net, net.root(), x);
  return !seen[y];
}

// Immediate dominators over a topological order: idom(v) is the nearest
// common dominator-tree ancestor of v's parents. NCA by depth walking is
// enough here; networks this library targets are far from the adversarial
// depth profiles that would justify jump pointers.
static void immediate_dominators(const Network& net, std::vector<NodeId>& idom,
                                 std::vector<std::int32_t>& depth) {
  const NodeId n = net.node_count();
  idom.assign(n, kNoNode);
  depth.assign(n, 0);
  for (NodeId v : net.topological_order()) {
    if (v == net.root()) {
      idom[v] = v;
      continue;
    }
    NodeId a = kNoNode;
    for (NodeId p : net.parents(v)) {
      if (a == kNoNode) {
        a = p;
        continue;
      }
      NodeId b = p;
      while (a != b) {
        if (depth[a] >= depth[b])
          a = idom[a];
        else
          b = idom[b];
      }
    }
    idom[v] = a;
    depth[v] = depth[a] + 1;
  }
}

std::vector<NodeId> visible_nodes(const Network& net) {
  std::vector<NodeId> idom;
  std::vector<std::int32_t> depth;
  immediate_dominators(net, idom, depth);

  // carry[v]: the dominator subtree rooted at v contains a leaf.
  const NodeId n = net.node_count();
  std::vector<char> carry(n, 0), strict(n, 0);
  const auto& topo = net.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    NodeId v = *it;
    if (net.kind(v) == NodeKind::Leaf) carry[v] = 1;
    if (v != net.root() && carry[v]) {
      NodeId d = idom[v];
      strict[d] = 1;
      carry[d] = 1;
    }
  }
  std::vector<NodeId> out;
  for (NodeId v = 0; v < n; ++v)
    if (strict[v] || net.kind(v) == NodeKind::Leaf) out.push_back(v);
  return out;
}

std::vector<NodeId> leaf_ids_below(const Network& net, NodeId v) {
  net.check_node(v);
  auto seen = reachable_from(net, v);
  std::vector<NodeId> out;
  for (NodeId u = 0; u < net.node_count(); ++u)
    if (seen[u] && net.kind(u) == NodeKind::Leaf) out.push_back(u);
  return out;
}

Cluster leaves_below(const Network& net, NodeId v) {
  std::vector<std::string> taxa;
  for (NodeId leaf : leaf_ids_below(net, v)) taxa.push_back(net.label(leaf));
  return make_cluster(std::move(taxa));
}

}  // namespace phylo
