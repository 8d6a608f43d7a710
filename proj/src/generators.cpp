#include "phylo/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "phylo/errors.hpp"

namespace phylo {

namespace {

constexpr int kRejectionCap = 10000;

struct SplitMix {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n), n >= 1. Multiply-shift keeps it branch-free; the
  // modulo bias at 64 bits is immaterial here.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }
};

// Growable digraph with edge-index bookkeeping so subdivisions are O(1).
struct Builder {
  std::vector<Edge> edges;
  std::vector<int> indeg, outdeg;
  std::vector<std::vector<int>> in_idx, out_idx;  // edge indices per node

  NodeId node_count() const { return static_cast<NodeId>(indeg.size()); }

  NodeId add_node() {
    indeg.push_back(0);
    outdeg.push_back(0);
    in_idx.emplace_back();
    out_idx.emplace_back();
    return static_cast<NodeId>(indeg.size() - 1);
  }

  void add_edge(NodeId a, NodeId b) {
    const int i = static_cast<int>(edges.size());
    edges.push_back({a, b});
    ++outdeg[a];
    ++indeg[b];
    out_idx[a].push_back(i);
    in_idx[b].push_back(i);
  }

  // Replaces edge i = (a,b) by a -> s -> b and returns s. Other edge indices
  // stay valid; i now denotes (a,s).
  NodeId subdivide(int i) {
    const NodeId b = edges[i].child;
    const NodeId s = add_node();
    edges[i].child = s;
    indeg[s] = 1;
    in_idx[s].push_back(i);
    const int j = static_cast<int>(edges.size());
    edges.push_back({s, b});
    outdeg[s] = 1;
    out_idx[s].push_back(j);
    auto& ib = in_idx[b];
    *std::find(ib.begin(), ib.end(), i) = j;
    return s;
  }

  bool reaches(NodeId from, NodeId to) const {
    if (from == to) return true;
    std::vector<char> seen(indeg.size(), 0);
    std::vector<NodeId> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (int ei : out_idx[v]) {
        NodeId c = edges[ei].child;
        if (c == to) return true;
        if (!seen[c]) {
          seen[c] = 1;
          stack.push_back(c);
        }
      }
    }
    return false;
  }
};

// Random rooted tree over `leaves` fresh sink nodes (ids 0..leaves-1).
Builder random_tree(int leaves, bool allow_multifurcation, SplitMix& rng) {
  Builder b;
  std::vector<NodeId> roots;
  roots.reserve(static_cast<std::size_t>(leaves));
  for (int i = 0; i < leaves; ++i) roots.push_back(b.add_node());
  while (roots.size() > 1) {
    std::size_t take = 2;
    if (allow_multifurcation && roots.size() >= 3 && rng.below(8) == 0)
      take = 3;
    const NodeId p = b.add_node();
    for (std::size_t t = 0; t < take; ++t) {
      const std::size_t i = rng.below(roots.size());
      const NodeId c = roots[i];
      roots[i] = roots.back();
      roots.pop_back();
      b.add_edge(p, c);
    }
    roots.push_back(p);
  }
  if (leaves == 1) {
    const NodeId p = b.add_node();
    b.add_edge(p, roots[0]);
  }
  return b;
}

void insert_any(Builder& b, SplitMix& rng) {
  for (int t = 0; t < kRejectionCap; ++t) {
    const auto e1 = static_cast<int>(rng.below(b.edges.size()));
    const auto e2 = static_cast<int>(rng.below(b.edges.size()));
    if (e1 == e2) continue;
    const NodeId a = b.edges[e1].parent;
    const NodeId d = b.edges[e2].child;
    if (b.reaches(d, a)) continue;  // the new cross edge would close a cycle
    const NodeId s = b.subdivide(e1);
    const NodeId r = b.subdivide(e2);
    b.add_edge(s, r);
    return;
  }
  fail(ErrorCode::GenerationFailed, "rejection cap hit placing a reticulation");
}

// Occasionally bump an existing reticulation above indegree 2.
void maybe_extra_parent(Builder& b, SplitMix& rng) {
  if (rng.below(4) != 0) return;
  std::vector<NodeId> rets;
  for (NodeId v = 0; v < b.node_count(); ++v)
    if (b.indeg[v] >= 2) rets.push_back(v);
  if (rets.empty()) return;
  const NodeId r = rets[rng.below(rets.size())];
  for (int t = 0; t < kRejectionCap; ++t) {
    const auto e = static_cast<int>(rng.below(b.edges.size()));
    if (b.edges[e].child == r) continue;  // would create a parallel edge
    if (b.reaches(r, b.edges[e].parent)) continue;
    const NodeId s = b.subdivide(e);
    b.add_edge(s, r);
    return;
  }
  // Optional flavor; fine to skip when the graph leaves no room.
}

void insert_tree_child(Builder& b, SplitMix& rng) {
  for (int t = 0; t < kRejectionCap; ++t) {
    const auto e1 = static_cast<int>(rng.below(b.edges.size()));
    const auto e2 = static_cast<int>(rng.below(b.edges.size()));
    if (e1 == e2) continue;
    const NodeId a = b.edges[e1].parent;
    const NodeId b1 = b.edges[e1].child;
    const NodeId c = b.edges[e2].parent;
    const NodeId d = b.edges[e2].child;
    // Both subdivided edges must end in non-reticulate nodes, and c must
    // keep a non-reticulate child once its edge to d feeds the new
    // reticulation.
    if (b.indeg[b1] >= 2 || b.indeg[d] >= 2) continue;
    int spare = 0;
    for (int ei : b.out_idx[c])
      if (b.indeg[b.edges[ei].child] < 2) ++spare;
    if (spare < 2) continue;
    if (b.reaches(d, a)) continue;
    const NodeId s = b.subdivide(e1);
    const NodeId r = b.subdivide(e2);
    b.add_edge(s, r);
    return;
  }
  fail(ErrorCode::GenerationFailed, "rejection cap hit placing a reticulation");
}

// One reticulation directly above a leaf nobody targeted yet. The fresh
// reticulation's only descendant is that leaf, so no cycle check is needed;
// edges from reticulations to leaves are never subdivided, which keeps every
// reticulation's leaf child in place for later grafting.
void insert_above_leaf(Builder& b, std::vector<NodeId>& untargeted,
                       SplitMix& rng) {
  if (untargeted.empty())
    fail(ErrorCode::GenerationFailed, "more reticulations than leaves");
  const std::size_t pick = rng.below(untargeted.size());
  const NodeId leaf = untargeted[pick];
  untargeted[pick] = untargeted.back();
  untargeted.pop_back();

  const int i = b.in_idx[leaf][0];
  const NodeId r = b.subdivide(i);
  const int m = b.out_idx[r][0];
  if (b.edges.size() < 3)
    fail(ErrorCode::GenerationFailed, "network too small for a reticulation");
  int j;
  int guard = 0;
  do {
    j = static_cast<int>(rng.below(b.edges.size()));
    if (++guard > kRejectionCap * 100)
      fail(ErrorCode::GenerationFailed, "no free edge for a second parent");
  } while (j == i || j == m ||
           (b.outdeg[b.edges[j].child] == 0 &&
            b.indeg[b.edges[j].parent] >= 2));
  const NodeId s = b.subdivide(j);
  b.add_edge(s, r);
}

// Extends the chain under an existing reticulation r (whose child is a
// leaf): a new reticulation slides between r and the leaf, and its second
// parent subdivides an out-edge of one of r's tree parents, so the
// compression is unchanged up to isomorphism.
void graft_chain(Builder& b, std::vector<NodeId>& eligible, SplitMix& rng) {
  const std::size_t gi = rng.below(eligible.size());
  const NodeId r = eligible[gi];
  const int i = b.out_idx[r][0];
  const NodeId rp = b.subdivide(i);

  std::vector<NodeId> tree_parents;
  for (int ei : b.in_idx[r]) {
    const NodeId p = b.edges[ei].parent;
    if (b.indeg[p] <= 1) tree_parents.push_back(p);
  }
  const NodeId p = tree_parents[rng.below(tree_parents.size())];
  const int e = b.out_idx[p][rng.below(b.out_idx[p].size())];
  const NodeId s = b.subdivide(e);
  b.add_edge(s, rp);
  eligible[gi] = rp;
}

struct UnionFind {
  std::vector<int> parent;

  void grow(std::size_t n) {
    while (parent.size() < n) parent.push_back(static_cast<int>(parent.size()));
  }
  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  void unite(int a, int c) { parent[find(a)] = find(c); }
};

// Both parents of the new reticulation come from one tree-node component;
// its child is a fresh leaf. Components only ever grow, so earlier
// reticulations stay inner.
void insert_galled(Builder& b, UnionFind& uf, SplitMix& rng) {
  int e1 = -1;
  for (int t = 0; t < kRejectionCap; ++t) {
    const auto e = static_cast<int>(rng.below(b.edges.size()));
    if (b.indeg[b.edges[e].parent] <= 1) {
      e1 = e;
      break;
    }
  }
  if (e1 < 0)
    fail(ErrorCode::GenerationFailed, "no tree-node edge to subdivide");

  const auto unite_through = [&](NodeId mid, int lo_edge, int hi_edge) {
    uf.grow(static_cast<std::size_t>(b.node_count()));
    const NodeId above = b.edges[lo_edge].parent;
    const NodeId below = b.edges[hi_edge].child;
    uf.unite(above, mid);
    if (b.indeg[below] <= 1 && b.outdeg[below] >= 1) uf.unite(mid, below);
  };

  const NodeId s1 = b.subdivide(e1);
  unite_through(s1, e1, b.out_idx[s1][0]);

  std::vector<int> cands;
  const int comp = uf.find(s1);
  for (int ei = 0; ei < static_cast<int>(b.edges.size()); ++ei) {
    const NodeId src = b.edges[ei].parent;
    if (b.indeg[src] <= 1 && uf.find(src) == comp) cands.push_back(ei);
  }
  const int e2 = cands[rng.below(cands.size())];
  const NodeId s2 = b.subdivide(e2);
  unite_through(s2, e2, b.out_idx[s2][0]);

  const NodeId r = b.add_node();
  b.add_edge(s1, r);
  b.add_edge(s2, r);
  const NodeId leaf = b.add_node();
  b.add_edge(r, leaf);
}

Network materialize(const Builder& b, int expected_leaves) {
  const NodeId n = b.node_count();
  std::vector<std::string> names(static_cast<std::size_t>(n));
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  int taxon = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (b.outdeg[v] == 0) {
      labels[v] = "t" + std::to_string(++taxon);
      names[v] = labels[v];
    } else {
      names[v] = "v" + std::to_string(v);
    }
  }
  if (taxon != expected_leaves)
    fail(ErrorCode::GenerationFailed,
         "construction produced " + std::to_string(taxon) + " leaves, wanted " +
             std::to_string(expected_leaves));
  return Network::from_parts(std::move(names), std::move(labels),
                             std::vector<Edge>(b.edges));
}

}  // namespace

const char* class_target_name(ClassTarget target) {
  switch (target) {
    case ClassTarget::Any:
      return "any";
    case ClassTarget::TreeChild:
      return "tree-child";
    case ClassTarget::ReticulationVisible:
      return "reticulation-visible";
    case ClassTarget::Galled:
      return "galled";
    case ClassTarget::QuasiRV:
      return "quasi-rv";
  }
  return "any";
}

std::optional<ClassTarget> parse_class_target(std::string_view token) {
  if (token == "any") return ClassTarget::Any;
  if (token == "tree-child") return ClassTarget::TreeChild;
  if (token == "reticulation-visible" || token == "rv")
    return ClassTarget::ReticulationVisible;
  if (token == "galled") return ClassTarget::Galled;
  if (token == "quasi-rv") return ClassTarget::QuasiRV;
  return std::nullopt;
}

Network generate(const GenSpec& spec) {
  if (spec.leaves < 1)
    fail(ErrorCode::GenerationFailed, "need at least one leaf");
  if (spec.reticulations < 0)
    fail(ErrorCode::GenerationFailed, "negative reticulation count");
  if (spec.leaves == 1 && spec.reticulations > 0)
    fail(ErrorCode::GenerationFailed,
         "a single-leaf network admits no reticulations");

  SplitMix rng{spec.seed};
  const int k = spec.reticulations;

  switch (spec.target) {
    case ClassTarget::Any: {
      Builder b = random_tree(spec.leaves, true, rng);
      for (int t = 0; t < k; ++t) {
        insert_any(b, rng);
        maybe_extra_parent(b, rng);
      }
      return materialize(b, spec.leaves);
    }
    case ClassTarget::TreeChild: {
      Builder b = random_tree(spec.leaves, false, rng);
      for (int t = 0; t < k; ++t) insert_tree_child(b, rng);
      return materialize(b, spec.leaves);
    }
    case ClassTarget::ReticulationVisible: {
      Builder b = random_tree(spec.leaves, false, rng);
      std::vector<NodeId> untargeted;
      for (NodeId v = 0; v < b.node_count(); ++v)
        if (b.outdeg[v] == 0) untargeted.push_back(v);
      for (int t = 0; t < k; ++t) insert_above_leaf(b, untargeted, rng);
      return materialize(b, spec.leaves);
    }
    case ClassTarget::Galled: {
      if (spec.leaves - k < 1)
        fail(ErrorCode::GenerationFailed,
             "galled construction needs leaves > reticulations");
      Builder b = random_tree(spec.leaves - k, false, rng);
      UnionFind uf;
      uf.grow(static_cast<std::size_t>(b.node_count()));
      for (int ei = 0; ei < static_cast<int>(b.edges.size()); ++ei)
        if (b.outdeg[b.edges[ei].child] > 0)
          uf.unite(b.edges[ei].parent, b.edges[ei].child);
      for (int t = 0; t < k; ++t) insert_galled(b, uf, rng);
      return materialize(b, spec.leaves);
    }
    case ClassTarget::QuasiRV: {
      Builder b = random_tree(spec.leaves, false, rng);
      const int k1 = k == 0 ? 0 : std::max(1, std::min(spec.leaves, (k + 1) / 2));
      std::vector<NodeId> untargeted;
      for (NodeId v = 0; v < b.node_count(); ++v)
        if (b.outdeg[v] == 0) untargeted.push_back(v);
      for (int t = 0; t < k1; ++t) insert_above_leaf(b, untargeted, rng);
      std::vector<NodeId> eligible;
      for (NodeId v = 0; v < b.node_count(); ++v)
        if (b.indeg[v] >= 2) eligible.push_back(v);
      for (int t = 0; t < k - k1; ++t) graft_chain(b, eligible, rng);
      return materialize(b, spec.leaves);
    }
  }
  fail(ErrorCode::GenerationFailed, "unknown class target");
}

std::vector<Network> size_ladder(const GenSpec& base,
                                 const std::vector<std::int64_t>& sizes) {
  std::vector<Network> out;
  out.reserve(sizes.size());
  for (std::size_t rung = 0; rung < sizes.size(); ++rung) {
    if (rung > 0 && sizes[rung] <= sizes[rung - 1])
      fail(ErrorCode::GenerationFailed, "ladder sizes must be ascending");
    GenSpec spec = base;
    // A binary tree over n leaves has |V|+|E| = 4n-3 and each reticulation
    // (or chain graft) adds 5, so n/2 reticulations put the total near 6.5n.
    const double m = static_cast<double>(sizes[rung]);
    spec.leaves = static_cast<int>(
        std::max<long>(2, std::lround((m + 3.0) / 6.5)));
    spec.reticulations = spec.leaves / 2;
    SplitMix h{base.seed + 0x9e3779b97f4a7c15ULL * (rung + 1)};
    spec.seed = h.next();
    out.push_back(generate(spec));
  }
  return out;
}

}  // namespace phylo
