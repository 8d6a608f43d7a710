#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "phylo/network.hpp"

namespace phylo {

enum class ClassTarget {
  Any,
  TreeChild,
  ReticulationVisible,
  Galled,
  QuasiRV,
};

const char* class_target_name(ClassTarget target);
std::optional<ClassTarget> parse_class_target(std::string_view token);

struct GenSpec {
  int leaves = 5;
  int reticulations = 2;
  ClassTarget target = ClassTarget::Any;
  std::uint64_t seed = 1;
};

// Deterministic: the same spec always yields the same network. Class targets
// are honored by construction, never by sampling luck.
Network generate(const GenSpec& spec);

// One network per requested |V|+|E| (within a few percent), same class
// target, per-rung seeds derived from base.seed. Sizes must be ascending.
std::vector<Network> size_ladder(const GenSpec& base,
                                 const std::vector<std::int64_t>& sizes);

}  // namespace phylo
