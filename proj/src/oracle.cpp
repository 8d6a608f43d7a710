#include "phylo/oracle.hpp"

#include <algorithm>
#include <cstddef>
#include <string>

#include "phylo/errors.hpp"

namespace phylo {

namespace {

std::vector<NodeId> reticulation_list(const Network& net) {
  std::vector<NodeId> rets;
  for (NodeId v = 0; v < net.node_count(); ++v)
    if (net.kind(v) == NodeKind::Reticulate) rets.push_back(v);
  return rets;
}

std::uint64_t counted_or_throw(const Network& net,
                               const std::vector<NodeId>& rets,
                               std::uint64_t budget) {
  std::uint64_t count = 1;
  for (NodeId r : rets) {
    const auto deg = static_cast<std::uint64_t>(net.indegree(r));
    // Overflow-safe: count * deg > budget <=> count > budget / deg.
    if (deg == 0 || count > budget / deg)
      fail(ErrorCode::BudgetExceeded,
           "switching count exceeds budget of " + std::to_string(budget));
    count *= deg;
  }
  if (count > budget)
    fail(ErrorCode::BudgetExceeded,
         "switching count exceeds budget of " + std::to_string(budget));
  return count;
}

// retained_of[v] = chosen parent for reticulations, kNoNode elsewhere.
void apply_switching(const Switching& sw, std::vector<NodeId>& retained_of) {
  for (std::size_t i = 0; i < sw.reticulations.size(); ++i)
    retained_of[sw.reticulations[i]] = sw.retained[i];
}

bool edge_kept(const Network& net, const std::vector<NodeId>& retained_of,
               NodeId parent, NodeId child) {
  return net.kind(child) != NodeKind::Reticulate ||
         retained_of[child] == parent;
}

// Sorted leaf ids reachable from u along kept edges.
void switching_leaves_below(const Network& net,
                            const std::vector<NodeId>& retained_of, NodeId u,
                            std::vector<NodeId>& out) {
  out.clear();
  std::vector<char> seen(static_cast<std::size_t>(net.node_count()), 0);
  std::vector<NodeId> stack{u};
  seen[u] = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (net.is_leaf(v)) out.push_back(v);
    for (NodeId c : net.children(v)) {
      if (!edge_kept(net, retained_of, v, c)) continue;
      if (!seen[c]) {
        seen[c] = 1;
        stack.push_back(c);
      }
    }
  }
  std::sort(out.begin(), out.end());
}

std::vector<NodeId> checked_target(const Network& net, const Cluster& cluster) {
  Cluster s = make_cluster(cluster);
  if (s.empty()) fail(ErrorCode::EmptyCluster, "cluster is empty");
  std::vector<NodeId> target;
  target.reserve(s.size());
  for (const auto& taxon : s) {
    auto id = net.find_taxon(taxon);
    if (!id) fail(ErrorCode::UnknownTaxon, "unknown taxon " + taxon);
    target.push_back(*id);
  }
  std::sort(target.begin(), target.end());
  return target;
}

}  // namespace

std::uint64_t switching_count(const Network& net, std::uint64_t budget) {
  return counted_or_throw(net, reticulation_list(net), budget);
}

void for_each_switching(const Network& net,
                        const std::function<bool(const Switching&)>& visit,
                        std::uint64_t budget) {
  auto rets = reticulation_list(net);
  counted_or_throw(net, rets, budget);

  Switching sw;
  sw.reticulations = rets;
  sw.retained.resize(rets.size());
  std::vector<std::size_t> idx(rets.size(), 0);
  for (std::size_t i = 0; i < rets.size(); ++i)
    sw.retained[i] = net.parents(rets[i])[0];

  for (;;) {
    if (!visit(sw)) return;
    // Odometer step, last reticulation fastest.
    bool advanced = false;
    for (std::size_t pos = rets.size(); pos-- > 0;) {
      auto par = net.parents(rets[pos]);
      if (++idx[pos] < par.size()) {
        sw.retained[pos] = par[idx[pos]];
        advanced = true;
        break;
      }
      idx[pos] = 0;
      sw.retained[pos] = par[0];
    }
    if (!advanced) return;
  }
}

bool oracle_scc(const Network& net, NodeId u, const Cluster& cluster,
                std::uint64_t budget) {
  net.check_node(u);
  if (net.kind(u) != NodeKind::Tree)
    fail(ErrorCode::NotTreeNode,
         "query node " + net.name(u) + " is not a tree node");
  const auto target = checked_target(net, cluster);

  std::vector<NodeId> retained_of(static_cast<std::size_t>(net.node_count()),
                                  kNoNode);
  std::vector<NodeId> got;
  bool found = false;
  for_each_switching(
      net,
      [&](const Switching& sw) {
        apply_switching(sw, retained_of);
        switching_leaves_below(net, retained_of, u, got);
        if (got == target) {
          found = true;
          return false;
        }
        return true;
      },
      budget);
  return found;
}

std::set<Cluster> softwired_clusters_at(const Network& net, NodeId u,
                                        std::uint64_t budget) {
  net.check_node(u);
  std::set<Cluster> clusters;
  std::vector<NodeId> retained_of(static_cast<std::size_t>(net.node_count()),
                                  kNoNode);
  std::vector<NodeId> got;
  for_each_switching(
      net,
      [&](const Switching& sw) {
        apply_switching(sw, retained_of);
        switching_leaves_below(net, retained_of, u, got);
        if (!got.empty()) {
          Cluster c;
          c.reserve(got.size());
          for (NodeId l : got) c.push_back(net.label(l));
          std::sort(c.begin(), c.end());
          clusters.insert(std::move(c));
        }
        return true;
      },
      budget);
  return clusters;
}

bool oracle_is_tree_based(const Network& net, std::uint64_t budget) {
  std::vector<NodeId> retained_of(static_cast<std::size_t>(net.node_count()),
                                  kNoNode);
  bool found = false;
  for_each_switching(
      net,
      [&](const Switching& sw) {
        apply_switching(sw, retained_of);
        for (NodeId v = 0; v < net.node_count(); ++v) {
          if (net.is_leaf(v)) continue;
          bool live = false;
          for (NodeId c : net.children(v)) {
            if (edge_kept(net, retained_of, v, c)) {
              live = true;
              break;
            }
          }
          if (!live) return true;  // stranded node; try next switching
        }
        found = true;
        return false;
      },
      budget);
  return found;
}

std::vector<std::vector<NodeId>> oracle_dominators(const Network& net) {
  std::vector<std::vector<NodeId>> rows(
      static_cast<std::size_t>(net.node_count()));
  const auto& leaves = net.leaves();
  for (NodeId x = 0; x < net.node_count(); ++x) {
    if (net.is_leaf(x)) continue;  // leaves keep empty rows
    auto mask = reachable_from_avoiding(net, net.root(), x);
    for (NodeId l : leaves)
      if (!mask[l]) rows[x].push_back(l);
  }
  return rows;
}

void for_each_displayed_tree(const Network& net,
                             const std::function<void(const Network&)>& visit,
                             std::uint64_t budget) {
  const auto n = static_cast<std::size_t>(net.node_count());
  std::vector<NodeId> retained_of(n, kNoNode);
  const auto& topo = net.topological_order();
  for_each_switching(
      net,
      [&](const Switching& sw) {
        apply_switching(sw, retained_of);
        // keep[v]: v reaches a leaf along kept edges; everything else is a
        // stranded branch and gets pruned.
        std::vector<char> keep(n, 0);
        for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
          NodeId v = *it;
          if (net.is_leaf(v)) {
            keep[v] = 1;
            continue;
          }
          for (NodeId c : net.children(v)) {
            if (edge_kept(net, retained_of, v, c) && keep[c]) {
              keep[v] = 1;
              break;
            }
          }
        }
        std::vector<NodeId> to_new(n, kNoNode);
        std::vector<std::string> names, labels;
        for (NodeId v = 0; v < net.node_count(); ++v) {
          if (!keep[v]) continue;
          to_new[v] = static_cast<NodeId>(names.size());
          names.push_back(net.name(v));
          labels.push_back(net.label(v));
        }
        std::vector<Edge> edges;
        for (NodeId v = 0; v < net.node_count(); ++v) {
          if (!keep[v]) continue;
          for (NodeId c : net.children(v)) {
            if (!edge_kept(net, retained_of, v, c) || !keep[c]) continue;
            edges.push_back({to_new[v], to_new[c]});
          }
        }
        visit(Network::from_parts(std::move(names), std::move(labels),
                                  std::move(edges)));
        return true;
      },
      budget);
}

}  // namespace phylo
