#include "phylo/isomorphism.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace phylo {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

std::vector<std::uint64_t> refined_hashes(const Network& net) {
  const auto n = static_cast<std::size_t>(net.node_count());
  std::vector<std::uint64_t> h(n);
  for (NodeId v = 0; v < net.node_count(); ++v) {
    std::uint64_t x = mix64(static_cast<std::uint64_t>(net.kind(v)) + 1);
    x = combine(x, static_cast<std::uint64_t>(net.indegree(v)));
    x = combine(x, static_cast<std::uint64_t>(net.outdegree(v)));
    x = combine(x, std::hash<std::string>{}(net.label(v)));
    h[v] = x;
  }
  std::vector<std::uint64_t> next(n);
  std::vector<std::uint64_t> buf;
  std::size_t classes = 0;
  for (int round = 0; round < 64; ++round) {
    for (NodeId v = 0; v < net.node_count(); ++v) {
      std::uint64_t x = h[v];
      buf.clear();
      for (NodeId c : net.children(v)) buf.push_back(h[c]);
      std::sort(buf.begin(), buf.end());
      for (std::uint64_t y : buf) x = combine(x, y);
      x = combine(x, 0xc0ffee);
      buf.clear();
      for (NodeId p : net.parents(v)) buf.push_back(h[p]);
      std::sort(buf.begin(), buf.end());
      for (std::uint64_t y : buf) x = combine(x, y);
      next[v] = x;
    }
    h.swap(next);
    std::vector<std::uint64_t> sorted(h);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() == classes || sorted.size() == n) break;
    classes = sorted.size();
  }
  return h;
}

bool degree_profile_matches(const Network& a, const Network& b) {
  auto profile = [](const Network& net) {
    std::vector<std::uint64_t> p;
    p.reserve(static_cast<std::size_t>(net.node_count()));
    for (NodeId v = 0; v < net.node_count(); ++v)
      p.push_back((static_cast<std::uint64_t>(net.indegree(v)) << 34) |
                  (static_cast<std::uint64_t>(net.outdegree(v)) << 4) |
                  static_cast<std::uint64_t>(net.kind(v)));
    std::sort(p.begin(), p.end());
    return p;
  };
  return profile(a) == profile(b);
}

}  // namespace

bool is_isomorphic(const Network& a, const Network& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count())
    return false;
  if (a.taxa() != b.taxa()) return false;
  if (!degree_profile_matches(a, b)) return false;

  const auto ha = refined_hashes(a);
  const auto hb = refined_hashes(b);
  {
    auto sa = ha;
    auto sb = hb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }

  // Candidates per a-node: b-nodes in the same hash class with the same
  // label. Try scarce classes first.
  const NodeId n = a.node_count();
  std::map<std::uint64_t, std::vector<NodeId>> by_hash;
  for (NodeId w = 0; w < n; ++w) by_hash[hb[w]].push_back(w);

  std::vector<NodeId> order(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](NodeId x, NodeId y) {
    const auto sx = by_hash[ha[x]].size();
    const auto sy = by_hash[ha[y]].size();
    return sx != sy ? sx < sy : x < y;
  });

  std::vector<NodeId> map_ab(static_cast<std::size_t>(n), kNoNode);
  std::vector<char> used(static_cast<std::size_t>(n), 0);

  auto consistent = [&](NodeId v, NodeId w) {
    if (a.label(v) != b.label(w)) return false;
    for (NodeId c : a.children(v)) {
      if (map_ab[c] == kNoNode) continue;
      auto cw = b.children(w);
      if (!std::binary_search(cw.begin(), cw.end(), map_ab[c])) return false;
    }
    for (NodeId p : a.parents(v)) {
      if (map_ab[p] == kNoNode) continue;
      auto pw = b.parents(w);
      if (!std::binary_search(pw.begin(), pw.end(), map_ab[p])) return false;
    }
    return true;
  };

  std::function<bool(std::size_t)> place = [&](std::size_t pos) {
    if (pos == order.size()) return true;
    const NodeId v = order[pos];
    for (NodeId w : by_hash[ha[v]]) {
      if (used[w] || !consistent(v, w)) continue;
      used[w] = 1;
      map_ab[v] = w;
      if (place(pos + 1)) return true;
      used[w] = 0;
      map_ab[v] = kNoNode;
    }
    return false;
  };
  return place(0);
}

}  // namespace phylo
