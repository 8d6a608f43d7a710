#pragma once

#include <map>
#include <optional>
#include <string>

#include "phylo/network.hpp"

namespace phylo {

struct ClassificationReport {
  bool binary = false;
  bool tree_child = false;
  bool reticulation_visible = false;
  bool tree_sibling = false;
  std::optional<bool> galled;  // unset when the network is not binary
  bool tree_based = false;
  bool quasi_reticulation_visible = false;
  bool quasi_galled = false;
  // per failed flag, the offending node or a reason token
  std::map<std::string, std::string> witnesses;
};

bool is_binary(const Network& net);
bool is_tree_child(const Network& net);
bool is_reticulation_visible(const Network& net);
bool is_tree_sibling(const Network& net);
bool is_galled(const Network& net);  // NotBinary unless is_binary
bool is_tree_based(const Network& net);
bool is_quasi_reticulation_visible(const Network& net);
bool is_quasi_galled(const Network& net);

ClassificationReport classification_report(const Network& net);

}  // namespace phylo
