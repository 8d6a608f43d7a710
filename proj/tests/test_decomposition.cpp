#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "phylo/decomposition.hpp"
#include "phylo/enewick.hpp"
#include "phylo/generators.hpp"

using namespace phylo;

namespace {

const char* kD1 = "rho\tv1\nrho\tv2\nv1\tl1\nv1\tr\nv2\tr\nv2\tl2\nr\tl3\n";
const char* kN1 =
    "rho\ta\nrho\tb\na\tl1\na\tr1\nb\tr1\nb\tc\nc\tl2\nc\tr2\nr1\tr2\nr2\tl3\n";

std::vector<NodeId> sorted_ids(const Network& net,
                               std::initializer_list<const char*> names) {
  std::vector<NodeId> ids;
  for (const char* n : names) ids.push_back(*net.find_name(n));
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

TEST_CASE("diamond: one tree-node component, one reticulation component") {
  Network net = parse_edge_list(kD1);
  Decomposition d = decompose(net);
  CHECK(d.tree_components == 1);
  CHECK(d.reticulation_components == 1);
  REQUIRE(d.component_count() == 2);

  int tau = d.component_of[*net.find_name("v1")];
  int sigma = d.component_of[*net.find_name("r")];
  CHECK(d.kinds[tau] == Decomposition::ComponentKind::TreeNode);
  CHECK(d.kinds[sigma] == Decomposition::ComponentKind::Reticulation);

  auto tau_members = d.members(tau);
  CHECK(std::vector<NodeId>(tau_members.begin(), tau_members.end()) ==
        sorted_ids(net, {"rho", "v1", "v2"}));
  CHECK(d.roots[tau] == net.root());
  CHECK(d.roots[sigma] == *net.find_name("r"));

  // leaves belong to no component
  CHECK(d.component_of[*net.find_taxon("l1")] == Decomposition::kNone);
}

TEST_CASE("reticulation chains form one component rooted at the bottom") {
  Network net = parse_edge_list(kN1);
  Decomposition d = decompose(net);
  CHECK(d.tree_components == 1);
  CHECK(d.reticulation_components == 1);

  int sigma = d.component_of[*net.find_name("r1")];
  CHECK(sigma == d.component_of[*net.find_name("r2")]);
  // r2's child l3 leaves the component, so r2 is the component root
  CHECK(d.roots[sigma] == *net.find_name("r2"));

  int tau = d.component_of[net.root()];
  auto m = d.members(tau);
  CHECK(std::vector<NodeId>(m.begin(), m.end()) ==
        sorted_ids(net, {"rho", "a", "b", "c"}));
}

TEST_CASE("component bound p-1 <= q <= n+p-1") {
  Network d1 = parse_edge_list(kD1);
  CHECK(check_component_bound(d1, decompose(d1)));

  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GenSpec spec;
    spec.leaves = 4 + static_cast<int>(seed % 8);
    spec.reticulations = static_cast<int>(seed % 5);
    spec.seed = seed;
    Network net = generate(spec);
    CHECK(check_component_bound(net, decompose(net)));
  }
}

TEST_CASE("component bound refuses networks with redundant nodes") {
  Network net = parse_enewick("((a)x,b);");  // x is degree-2
  REQUIRE(net.node_count() == 4);
  Decomposition d = decompose(net);
  CHECK_THROWS_AS(check_component_bound(net, d), Error);
}

TEST_CASE("isolated reticulations") {
  Network d1 = parse_edge_list(kD1);
  CHECK(is_isolated(d1, *d1.find_name("r")));

  Network n1 = parse_edge_list(kN1);
  CHECK_FALSE(is_isolated(n1, *n1.find_name("r1")));  // reticulate child
  CHECK_FALSE(is_isolated(n1, *n1.find_name("r2")));  // reticulate parent
}

TEST_CASE("exposed components") {
  Network d1 = parse_edge_list(kD1);
  Decomposition dd = decompose(d1);
  CHECK(is_exposed(d1, dd, dd.component_of[d1.root()]));

  Network n1 = parse_edge_list(kN1);
  Decomposition dn = decompose(n1);
  CHECK_FALSE(is_exposed(n1, dn, dn.component_of[n1.root()]));
}

TEST_CASE("components partition exactly the non-leaf non-redundant nodes") {
  GenSpec spec;
  spec.leaves = 30;
  spec.reticulations = 12;
  spec.seed = 9;
  Network net = generate(spec);
  Decomposition d = decompose(net);

  std::vector<char> seen(net.node_count(), 0);
  for (int c = 0; c < d.component_count(); ++c) {
    for (NodeId v : d.members(c)) {
      CHECK_FALSE(seen[v]);
      seen[v] = 1;
      CHECK(d.component_of[v] == c);
      bool tree_side = d.kinds[c] == Decomposition::ComponentKind::TreeNode;
      CHECK((net.kind(v) == NodeKind::Tree) == tree_side);
      CHECK((net.kind(v) == NodeKind::Reticulate) == !tree_side);
    }
    // numbered by smallest contained node id
    if (c > 0) CHECK(d.members(c - 1).front() < d.members(c).front());
  }
  for (NodeId v = 0; v < net.node_count(); ++v) {
    bool in_comp = d.component_of[v] != Decomposition::kNone;
    bool eligible = net.kind(v) == NodeKind::Tree ||
                    net.kind(v) == NodeKind::Reticulate;
    CHECK(in_comp == eligible);
    if (in_comp) CHECK(seen[v]);
  }
}
