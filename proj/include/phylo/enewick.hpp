#pragma once

#include <string>
#include <string_view>

#include "phylo/decomposition.hpp"
#include "phylo/network.hpp"

namespace phylo {

// Extended Newick, no branch lengths. Hybrid nodes carry #H<tag> markers;
// each tag is defined once (with children, or by a bare leaf label) and
// referenced from its remaining parents.
Network parse_enewick(std::string_view text);

// Canonical form: children ordered by (smallest taxon below, node id),
// hybrid tags renumbered 1..k in first-visit order, internal names dropped.
// A network is reproduced up to label-preserving isomorphism.
std::string write_enewick(const Network& net);

// One "parent<TAB>child" line per edge; lines whose first non-blank char is
// '#' are comments. Sink names double as taxa. Duplicate lines collapse.
Network parse_edge_list(std::string_view text);

// Graphviz export. Decoration is optional: components become clusters,
// colors (0 red, 1 blue, 2 purple, -1 none, indexed by node) become fills.
std::string export_dot(const Network& net, const Decomposition* decomp = nullptr,
                       const std::vector<int>* colors = nullptr);

}  // namespace phylo
