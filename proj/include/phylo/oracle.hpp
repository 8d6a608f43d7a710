#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "phylo/network.hpp"

namespace phylo {

// One retained in-edge per reticulation; deleting the rest leaves a spanning
// tree whose unlabeled sinks do not count as leaves.
struct Switching {
  std::vector<NodeId> reticulations;  // ascending node id
  std::vector<NodeId> retained;       // parallel array: the kept parent
};

inline constexpr std::uint64_t kDefaultSwitchingBudget = std::uint64_t{1} << 20;

// Number of switchings (product of reticulation indegrees); throws
// BudgetExceeded when it would exceed the budget.
std::uint64_t switching_count(const Network& net,
                              std::uint64_t budget = kDefaultSwitchingBudget);

// Visits every switching in lexicographic order (reticulations by ascending
// id, parents ascending, last reticulation varying fastest). The visitor
// returns false to stop early.
void for_each_switching(const Network& net,
                        const std::function<bool(const Switching&)>& visit,
                        std::uint64_t budget = kDefaultSwitchingBudget);

// True iff some switching's spanning tree has exactly `cluster` as the
// labeled leaves below u.
bool oracle_scc(const Network& net, NodeId u, const Cluster& cluster,
                std::uint64_t budget = kDefaultSwitchingBudget);

// All nonempty clusters displayed at u across switchings.
std::set<Cluster> softwired_clusters_at(
    const Network& net, NodeId u,
    std::uint64_t budget = kDefaultSwitchingBudget);

// True iff some switching strands no internal node (its spanning tree has
// leaf set exactly the network's leaves).
bool oracle_is_tree_based(const Network& net,
                          std::uint64_t budget = kDefaultSwitchingBudget);

// Per node, the sorted leaf ids it dominates, by deletion + reachability.
std::vector<std::vector<NodeId>> oracle_dominators(const Network& net);

// Visits each displayed spanning tree with unlabeled sinks pruned away, as a
// validated network (a tree, possibly with degree-2 nodes).
void for_each_displayed_tree(const Network& net,
                             const std::function<void(const Network&)>& visit,
                             std::uint64_t budget = kDefaultSwitchingBudget);

}  // namespace phylo
