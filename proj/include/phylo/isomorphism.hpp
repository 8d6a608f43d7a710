#pragma once

#include "phylo/network.hpp"

namespace phylo {

// Label-preserving digraph isomorphism. Iterated neighborhood hashing first;
// exact backtracking over the induced classes settles what hashing leaves
// open, so the answer is never a hash-collision guess.
bool is_isomorphic(const Network& a, const Network& b);

}  // namespace phylo
